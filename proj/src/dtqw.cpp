#include "qwalk/dtqw.hpp"

#include <cmath>
#include <random>

#include "qwalk/parallel.hpp"

namespace qw {

std::vector<std::size_t> shift_permutation(const ArcSpace& arcs) {
    std::vector<std::size_t> perm(arcs.arc_count());
    for (std::size_t a = 0; a < perm.size(); ++a) {
        perm[a] = arcs.reverse(a);
    }
    return perm;
}

Matrix build_shift(const Graph& g) {
    const ArcSpace arcs(g);
    const auto perm = shift_permutation(arcs);
    Matrix s = Matrix::Zero(arcs.arc_count(), arcs.arc_count());
    for (std::size_t a = 0; a < perm.size(); ++a) {
        s(perm[a], a) = 1.0;
    }
    return s;
}

StepOperator::StepOperator(const Graph& g, const CoinPolicy& policy)
    : arcs_(g), coin_(assemble_coin(g, arcs_, policy)), shift_(shift_permutation(arcs_)) {}

StepOperator::StepOperator(const Graph& g, BlockCoin coin)
    : arcs_(g), coin_(std::move(coin)), shift_(shift_permutation(arcs_)) {
    if (coin_.dimension() != arcs_.arc_count()) {
        throw ConfigError("coin dimension does not match the arc space");
    }
}

WalkState StepOperator::apply(const WalkState& state) const {
    if (static_cast<std::size_t>(state.size()) != dimension()) {
        throw ConfigError("state has " + std::to_string(state.size()) + " amplitudes, arc space has " +
                          std::to_string(dimension()));
    }
    WalkState tossed = state;
    coin_.apply(tossed);
    WalkState out(tossed.size());
    for (std::size_t a = 0; a < shift_.size(); ++a) {
        out(static_cast<Eigen::Index>(shift_[a])) = tossed(static_cast<Eigen::Index>(a));
    }
    return out;
}

void StepOperator::apply_in_place(CMatrix& states) const {
    coin_.apply(states);
    CMatrix out(states.rows(), states.cols());
    for (std::size_t a = 0; a < shift_.size(); ++a) {
        out.row(static_cast<Eigen::Index>(shift_[a])) = states.row(static_cast<Eigen::Index>(a));
    }
    states.swap(out);
}

CMatrix StepOperator::dense() const {
    CMatrix s = CMatrix::Zero(dimension(), dimension());
    for (std::size_t a = 0; a < shift_.size(); ++a) {
        s(static_cast<Eigen::Index>(shift_[a]), static_cast<Eigen::Index>(a)) = 1.0;
    }
    return s * coin_.dense();
}

WalkState step(const WalkState& state, const StepOperator& op) { return op.apply(state); }

double vertex_probability(const ArcSpace& arcs, const WalkState& state, Vertex v) {
    if (v >= arcs.vertex_count()) {
        throw ConfigError("vertex " + std::to_string(v) + " out of range");
    }
    return state.segment(static_cast<Eigen::Index>(arcs.offset(v)),
                         static_cast<Eigen::Index>(arcs.port_count(v)))
        .squaredNorm();
}

std::vector<double> vertex_distribution(const ArcSpace& arcs, const WalkState& state) {
    std::vector<double> p(arcs.vertex_count());
    for (Vertex v = 0; v < p.size(); ++v) {
        p[v] = vertex_probability(arcs, state, v);
    }
    return p;
}

WalkState localized_state(const ArcSpace& arcs, Vertex v, std::span<const cplx> amplitudes) {
    if (v >= arcs.vertex_count()) {
        throw ConfigError("vertex " + std::to_string(v) + " out of range");
    }
    if (amplitudes.size() != arcs.port_count(v)) {
        throw ConfigError("vertex " + std::to_string(v) + " has " + std::to_string(arcs.port_count(v)) +
                          " ports but " + std::to_string(amplitudes.size()) + " amplitudes were given");
    }
    WalkState s = WalkState::Zero(arcs.arc_count());
    for (std::size_t p = 0; p < amplitudes.size(); ++p) {
        s(static_cast<Eigen::Index>(arcs.arc(v, p))) = amplitudes[p];
    }
    return s;
}

WalkState equal_superposition(const ArcSpace& arcs, Vertex v) {
    const auto d = arcs.port_count(v);
    if (d == 0) {
        throw ConfigError("vertex " + std::to_string(v) + " has no ports");
    }
    const std::vector<cplx> amps(d, cplx(1.0 / std::sqrt(static_cast<double>(d))));
    return localized_state(arcs, v, amps);
}

TransferReport detect_transfer(const StepOperator& op, const WalkState& init, VertexPair pair,
                               const TransferOptions& options) {
    const auto& arcs = op.arcs();
    if (pair.source >= arcs.vertex_count() || pair.target >= arcs.vertex_count()) {
        throw ConfigError("source/target vertex out of range");
    }
    if (options.max_steps < 1) {
        throw ConfigError("max_steps must be at least 1");
    }
    if (!(options.lambda > 0.0 && options.lambda <= 1.0)) {
        throw ConfigError("lambda must lie in (0, 1]");
    }
    if (std::abs(init.norm() - 1.0) > 1e-9) {
        throw ConfigError("initial state must have unit norm (norm = " + std::to_string(init.norm()) + ")");
    }
    TransferReport r;
    r.pair = pair;
    r.lambda = options.lambda;
    r.tracked = options.tracked.empty() ? std::vector<Vertex>{pair.source, pair.target} : options.tracked;
    for (Vertex v : r.tracked) {
        if (v >= arcs.vertex_count()) {
            throw ConfigError("tracked vertex " + std::to_string(v) + " out of range");
        }
    }
    WalkState psi = init;
    auto record = [&](std::size_t t) {
        std::vector<double> row;
        row.reserve(r.tracked.size());
        for (Vertex v : r.tracked) {
            row.push_back(vertex_probability(arcs, psi, v));
        }
        r.probabilities.push_back(std::move(row));
        const double pt = vertex_probability(arcs, psi, pair.target);
        r.target_probability.push_back(pt);
        if (t == 0) {
            return;
        }
        if (pt > r.max_probability) {
            r.max_probability = pt;
            r.max_step = t;
        }
        if (pt >= 1.0 - options.pst_tol) {
            r.pst_steps.push_back(t);
        }
        if (!r.period && std::norm(init.dot(psi)) >= 1.0 - options.pst_tol) {
            r.period = t;
        }
        if (!r.positional_period && vertex_probability(arcs, psi, pair.source) >= 1.0 - options.pst_tol) {
            r.positional_period = t;
        }
        r.norm_drift = std::max(r.norm_drift, std::abs(psi.norm() - 1.0));
    };
    record(0);
    for (std::size_t t = 1; t <= options.max_steps; ++t) {
        psi = op.apply(psi);
        record(t);
    }
    r.high_amplitude = r.max_probability >= options.lambda;
    return r;
}

TransferReport detect_transfer(const Graph& g, const CoinPolicy& policy, const WalkState& init,
                               VertexPair pair, const TransferOptions& options) {
    return detect_transfer(StepOperator(g, policy), init, pair, options);
}

std::vector<CVector> haar_states(std::size_t d, std::size_t count, std::uint64_t seed) {
    if (d == 0 || count == 0) {
        throw ConfigError("haar_states requires d ≥ 1 and count ≥ 1");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<CVector> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        CVector v(d);
        for (std::size_t i = 0; i < d; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            v(static_cast<Eigen::Index>(i)) = cplx(re, im);
        }
        v.normalize();
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

constexpr std::size_t kScanChunk = 64;

struct SampleBest {
    double p = 0.0;
    std::size_t step = 0;
};

} // namespace

ScanResult max_transfer_scan(const StepOperator& op, VertexPair pair, std::span<const CVector> samples,
                             std::size_t max_steps, double lambda, std::size_t workers) {
    const auto& arcs = op.arcs();
    if (pair.source >= arcs.vertex_count() || pair.target >= arcs.vertex_count()) {
        throw ConfigError("source/target vertex out of range");
    }
    const auto d = arcs.port_count(pair.source);
    const auto src = static_cast<Eigen::Index>(arcs.offset(pair.source));
    const auto tgt = static_cast<Eigen::Index>(arcs.offset(pair.target));
    const auto dt = static_cast<Eigen::Index>(arcs.port_count(pair.target));
    for (const auto& s : samples) {
        if (static_cast<std::size_t>(s.size()) != d) {
            throw ConfigError("sample dimension does not match the source degree");
        }
    }
    std::vector<SampleBest> best(samples.size());
    const std::size_t chunks = (samples.size() + kScanChunk - 1) / kScanChunk;
    parallel_for(chunks, workers, [&](std::size_t c) {
        const std::size_t lo = c * kScanChunk;
        const std::size_t hi = std::min(samples.size(), lo + kScanChunk);
        CMatrix states = CMatrix::Zero(arcs.arc_count(), static_cast<Eigen::Index>(hi - lo));
        for (std::size_t s = lo; s < hi; ++s) {
            states.col(static_cast<Eigen::Index>(s - lo)).segment(src, static_cast<Eigen::Index>(d)) =
                samples[s];
        }
        for (std::size_t t = 1; t <= max_steps; ++t) {
            op.apply_in_place(states);
            const Eigen::RowVectorXd pt = states.middleRows(tgt, dt).cwiseAbs2().colwise().sum();
            for (std::size_t s = lo; s < hi; ++s) {
                const double p = pt(static_cast<Eigen::Index>(s - lo));
                if (p > best[s].p) {
                    best[s] = {p, t};
                }
            }
        }
    });
    ScanResult r;
    r.samples = samples.size();
    std::size_t over = 0;
    for (std::size_t s = 0; s < best.size(); ++s) {
        if (best[s].p > r.max_probability) {
            r.max_probability = best[s].p;
            r.step = best[s].step;
            r.best_sample = s;
        }
        over += best[s].p > lambda ? 1 : 0;
    }
    r.fraction_over_lambda = samples.empty() ? 0.0 : static_cast<double>(over) / static_cast<double>(samples.size());
    return r;
}

ScanResult max_transfer_scan(const Graph& g, const CoinPolicy& policy, VertexPair pair,
                             std::size_t samples, std::size_t max_steps, std::uint64_t seed, double lambda,
                             std::size_t workers) {
    const StepOperator op(g, policy);
    const auto states = haar_states(op.arcs().port_count(pair.source), samples, seed);
    return max_transfer_scan(op, pair, states, max_steps, lambda, workers);
}

namespace {

CMatrix source_columns(const StepOperator& op, Vertex source) {
    const auto& arcs = op.arcs();
    const auto d = static_cast<Eigen::Index>(arcs.port_count(source));
    CMatrix x = CMatrix::Zero(arcs.arc_count(), d);
    x.middleRows(static_cast<Eigen::Index>(arcs.offset(source)), d).setIdentity();
    return x;
}

} // namespace

ExactPst exact_pst(const StepOperator& op, VertexPair pair, std::size_t max_steps, double pst_tol) {
    const auto& arcs = op.arcs();
    if (pair.source >= arcs.vertex_count() || pair.target >= arcs.vertex_count()) {
        throw ConfigError("source/target vertex out of range");
    }
    const auto ds = static_cast<Eigen::Index>(arcs.port_count(pair.source));
    const auto dt = static_cast<Eigen::Index>(arcs.port_count(pair.target));
    const auto src = static_cast<Eigen::Index>(arcs.offset(pair.source));
    const auto tgt = static_cast<Eigen::Index>(arcs.offset(pair.target));
    ExactPst r;
    if (ds == 0 || dt == 0) {
        return r;
    }
    CMatrix x = source_columns(op, pair.source);
    for (std::size_t t = 1; t <= max_steps; ++t) {
        op.apply_in_place(x);
        const CMatrix block = x.middleRows(tgt, dt);
        Eigen::JacobiSVD<CMatrix> svd(block);
        const auto& sv = svd.singularValues();
        const double smax = sv.size() > 0 ? sv(0) : 0.0;
        r.max_singular_value.push_back(smax);
        if (smax * smax >= 1.0 - pst_tol) {
            r.pst_steps.push_back(t);
            if (ds <= dt && sv(sv.size() - 1) * sv(sv.size() - 1) >= 1.0 - pst_tol) {
                r.pst_all_steps.push_back(t);
            }
        }
        if (!r.period) {
            const CMatrix back = x.middleRows(src, ds) - CMatrix::Identity(ds, ds);
            if (back.cwiseAbs().maxCoeff() <= pst_tol) {
                r.period = t;
            }
        }
    }
    return r;
}

CVector best_source_state(const StepOperator& op, VertexPair pair, std::size_t steps) {
    const auto& arcs = op.arcs();
    CMatrix x = source_columns(op, pair.source);
    for (std::size_t t = 0; t < steps; ++t) {
        op.apply_in_place(x);
    }
    const CMatrix block = x.middleRows(static_cast<Eigen::Index>(arcs.offset(pair.target)),
                                       static_cast<Eigen::Index>(arcs.port_count(pair.target)));
    Eigen::JacobiSVD<CMatrix> svd(block, Eigen::ComputeFullV);
    return svd.matrixV().col(0);
}

} // namespace qw
