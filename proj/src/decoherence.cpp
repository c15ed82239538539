#include "qwalk/decoherence.hpp"

#include <cmath>

#include "qwalk/parallel.hpp"

namespace qw {

NoiseBasis parse_noise_basis(const std::string& name) {
    if (name == "coin") {
        return NoiseBasis::Coin;
    }
    if (name == "position") {
        return NoiseBasis::Position;
    }
    if (name == "both") {
        return NoiseBasis::Both;
    }
    throw ConfigError("noise basis must be coin, position or both (got '" + name + "')");
}

std::string noise_basis_name(NoiseBasis basis) {
    switch (basis) {
    case NoiseBasis::Coin:
        return "coin";
    case NoiseBasis::Position:
        return "position";
    case NoiseBasis::Both:
        return "both";
    }
    return "?";
}

std::vector<std::size_t> projector_labels(const ArcSpace& arcs, NoiseBasis basis) {
    std::vector<std::size_t> labels(arcs.arc_count());
    for (std::size_t a = 0; a < labels.size(); ++a) {
        switch (basis) {
        case NoiseBasis::Coin:
            labels[a] = arcs.port_of(a);
            break;
        case NoiseBasis::Position:
            labels[a] = arcs.tail(a);
            break;
        case NoiseBasis::Both:
            labels[a] = a;
            break;
        }
    }
    return labels;
}

std::vector<Matrix> projectors(std::span<const std::size_t> labels) {
    std::size_t count = 0;
    for (auto l : labels) {
        count = std::max(count, l + 1);
    }
    const auto n = static_cast<Eigen::Index>(labels.size());
    std::vector<Matrix> out(count, Matrix::Zero(n, n));
    for (Eigen::Index i = 0; i < n; ++i) {
        out[labels[static_cast<std::size_t>(i)]](i, i) = 1.0;
    }
    // drop labels that never occur
    std::erase_if(out, [](const Matrix& p) { return p.trace() == 0.0; });
    return out;
}

DensityMatrix dephase(const DensityMatrix& rho, std::span<const std::size_t> labels) {
    DensityMatrix out = rho;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            if (labels[static_cast<std::size_t>(i)] != labels[static_cast<std::size_t>(j)]) {
                out(i, j) = 0.0;
            }
        }
    }
    return out;
}

DensityMatrix pure_density(const CVector& psi) { return psi * psi.adjoint(); }

std::vector<double> vertex_marginals(const ArcSpace& arcs, const DensityMatrix& rho) {
    std::vector<double> p(arcs.vertex_count(), 0.0);
    for (std::size_t a = 0; a < arcs.arc_count(); ++a) {
        p[arcs.tail(a)] += rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)).real();
    }
    return p;
}

namespace {

void require_rate(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("decoherence rate must lie in [0, 1] for discrete walks");
    }
}

DensityMatrix conjugate_by_step(const DensityMatrix& rho, const StepOperator& op) {
    // U rho U^dagger = U (U rho^dagger)^dagger, rho Hermitian
    CMatrix left = rho;
    op.apply_in_place(left);
    CMatrix right = left.adjoint();
    op.apply_in_place(right);
    return right.adjoint();
}

} // namespace

DensityMatrix decohere_step(const DensityMatrix& rho, const StepOperator& op, const NoiseModel& noise) {
    require_rate(noise.rate);
    if (static_cast<std::size_t>(rho.rows()) != op.dimension() || rho.rows() != rho.cols()) {
        throw ConfigError("density matrix dimension does not match the arc space");
    }
    const DensityMatrix evolved = conjugate_by_step(rho, op);
    if (noise.rate == 0.0) {
        return evolved;
    }
    const auto labels = projector_labels(op.arcs(), noise.basis);
    return (1.0 - noise.rate) * evolved + noise.rate * dephase(evolved, labels);
}

namespace {

DensityMatrix lindblad_rhs(const Matrix& a, const DensityMatrix& rho, double p) {
    const cplx minus_i(0.0, -1.0);
    DensityMatrix d = minus_i * (a * rho - rho * a);
    if (p != 0.0) {
        // position projectors in the vertex basis keep only the diagonal
        DensityMatrix diag = DensityMatrix::Zero(rho.rows(), rho.cols());
        diag.diagonal() = rho.diagonal();
        d += p * (diag - rho);
    }
    return d;
}

CtDecoherence integrate(const Matrix& a, const DensityMatrix& rho0, double p, double t, double dt) {
    const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(t / dt - 1e-12)));
    const double h = t / static_cast<double>(steps);
    DensityMatrix rho = rho0;
    const cplx tr0 = rho0.trace();
    double drift = 0.0;
    if (t == 0.0) {
        return {rho, dt, 0.0};
    }
    for (std::size_t k = 0; k < steps; ++k) {
        const DensityMatrix k1 = lindblad_rhs(a, rho, p);
        const DensityMatrix k2 = lindblad_rhs(a, rho + 0.5 * h * k1, p);
        const DensityMatrix k3 = lindblad_rhs(a, rho + 0.5 * h * k2, p);
        const DensityMatrix k4 = lindblad_rhs(a, rho + h * k3, p);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        drift = std::max(drift, std::abs(rho.trace() - tr0));
    }
    return {rho, h, drift};
}

} // namespace

CtDecoherence decohere_ct_detailed(const Graph& g, const DensityMatrix& rho0, const NoiseModel& noise,
                                   double t, double dt) {
    if (!(dt > 0.0)) {
        throw ConfigError("integrator step dt must be positive");
    }
    if (!(t >= 0.0)) {
        throw ConfigError("time must be nonnegative");
    }
    if (!(noise.rate >= 0.0)) {
        throw ConfigError("decoherence rate must be nonnegative");
    }
    if (noise.basis == NoiseBasis::Coin) {
        throw ConfigError("continuous-time walks have no coin; use position noise");
    }
    if (static_cast<std::size_t>(rho0.rows()) != g.size() || rho0.rows() != rho0.cols()) {
        throw ConfigError("density matrix dimension does not match the graph");
    }
    constexpr int kMaxHalvings = 12;
    for (int k = 0; k <= kMaxHalvings; ++k) {
        auto run = integrate(g.adjacency(), rho0, noise.rate, t, dt);
        if (run.trace_drift < 1e-8) {
            return run;
        }
        dt /= 2.0;
    }
    throw NumericalError("continuous decoherence: trace drift stayed above 1e-8 after step halving");
}

DensityMatrix decohere_ct(const Graph& g, const DensityMatrix& rho0, const NoiseModel& noise, double t,
                          double dt) {
    return decohere_ct_detailed(g, rho0, noise, t, dt).rho;
}

Matrix transition_matrix(const Graph& g) {
    const auto n = g.size();
    Matrix m = Matrix::Zero(n, n);
    for (Vertex v = 0; v < n; ++v) {
        const auto d = g.degree(v);
        if (d == 0) {
            m(v, v) = 1.0;
            continue;
        }
        for (Vertex w = 0; w < n; ++w) {
            if (g.weight(v, w) != 0.0) {
                m(w, v) = 1.0 / static_cast<double>(d);
            }
        }
    }
    return m;
}

std::vector<double> classical_walk(const Graph& g, std::span<const double> start, std::size_t steps) {
    if (start.size() != g.size()) {
        throw ConfigError("start distribution needs one entry per vertex");
    }
    double total = 0.0;
    for (double x : start) {
        if (x < 0.0) {
            throw ConfigError("start distribution has a negative entry");
        }
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ConfigError("start distribution must sum to 1");
    }
    const Matrix m = transition_matrix(g);
    Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(start.data(), static_cast<Eigen::Index>(start.size()));
    for (std::size_t t = 0; t < steps; ++t) {
        p = m * p;
    }
    return {p.data(), p.data() + p.size()};
}

std::vector<RateRow> target_probability_vs_rate(const StepOperator& op, const WalkState& init,
                                                VertexPair pair, NoiseBasis basis,
                                                std::span<const double> rates, std::size_t steps,
                                                std::size_t workers) {
    for (double p : rates) {
        require_rate(p);
    }
    std::vector<RateRow> rows(rates.size());
    const DensityMatrix rho0 = pure_density(init);
    parallel_for(rates.size(), workers, [&](std::size_t i) {
        const NoiseModel noise{basis, rates[i]};
        DensityMatrix rho = rho0;
        for (std::size_t t = 0; t < steps; ++t) {
            rho = decohere_step(rho, op, noise);
        }
        rows[i] = {rates[i], vertex_marginals(op.arcs(), rho)[pair.target]};
    });
    return rows;
}

std::vector<RateRow> target_probability_vs_rate_ct(const Graph& g, VertexPair pair,
                                                   std::span<const double> rates, double time,
                                                   double dt, std::size_t workers) {
    std::vector<RateRow> rows(rates.size());
    CVector psi = CVector::Zero(static_cast<Eigen::Index>(g.size()));
    psi(static_cast<Eigen::Index>(pair.source)) = 1.0;
    const DensityMatrix rho0 = pure_density(psi);
    parallel_for(rates.size(), workers, [&](std::size_t i) {
        const auto rho = decohere_ct(g, rho0, {NoiseBasis::Position, rates[i]}, time, dt);
        rows[i] = {rates[i], rho(static_cast<Eigen::Index>(pair.target), static_cast<Eigen::Index>(pair.target)).real()};
    });
    return rows;
}

} // namespace qw
