#include "qwalk/ctqw.hpp"

#include <cmath>

namespace qw {

double Spectrum::reconstruction_error(const Graph& g) const {
    const Matrix h = vectors * values.asDiagonal() * vectors.transpose();
    return (h - hopping * g.adjacency()).cwiseAbs().maxCoeff();
}

Spectrum spectrum(const Graph& g, double hopping) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hopping * g.adjacency());
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigendecomposition of the adjacency matrix failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors(), hopping};
}

nlohmann::json spectrum_to_json(const Spectrum& s) {
    nlohmann::json vectors = nlohmann::json::array();
    for (Eigen::Index k = 0; k < s.vectors.cols(); ++k) {
        std::vector<double> col(s.vectors.col(k).data(), s.vectors.col(k).data() + s.vectors.rows());
        vectors.push_back(col);
    }
    std::vector<double> values(s.values.data(), s.values.data() + s.values.size());
    return {{"hopping", s.hopping}, {"eigenvalues", values}, {"eigenvectors", vectors}};
}

PositionState evolve_ct(const Spectrum& s, const PositionState& init, double t) {
    if (init.size() != s.values.size()) {
        throw ConfigError("state dimension does not match the graph");
    }
    if (t < 0.0) {
        throw ConfigError("time must be nonnegative");
    }
    CVector coeffs = s.vectors.transpose().cast<cplx>() * init;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        coeffs(k) *= std::polar(1.0, -s.values(k) * t);
    }
    return s.vectors.cast<cplx>() * coeffs;
}

PositionState evolve_ct(const Graph& g, const PositionState& init, double t) {
    return evolve_ct(spectrum(g), init, t);
}

PositionState basis_state(std::size_t n, Vertex v) {
    if (v >= n) {
        throw ConfigError("vertex " + std::to_string(v) + " out of range");
    }
    PositionState s = PositionState::Zero(static_cast<Eigen::Index>(n));
    s(static_cast<Eigen::Index>(v)) = 1.0;
    return s;
}

CtTransferReport detect_transfer_ct(const Graph& g, VertexPair pair, const CtTransferOptions& options,
                                    std::optional<PositionState> init) {
    const auto n = g.size();
    if (pair.source >= n || pair.target >= n) {
        throw ConfigError("source/target vertex out of range");
    }
    if (!(options.dt > 0.0) || !(options.t_max > 0.0)) {
        throw ConfigError("dt and t_max must be positive");
    }
    if (!(options.lambda > 0.0 && options.lambda <= 1.0)) {
        throw ConfigError("lambda must lie in (0, 1]");
    }
    const PositionState phi0 = init ? *init : basis_state(n, pair.source);
    if (std::abs(phi0.norm() - 1.0) > 1e-9) {
        throw ConfigError("initial state must have unit norm");
    }
    const Spectrum s = spectrum(g);
    // amplitude of vertex v at time t: sum_k V(v,k) e^{-i l_k t} c_k
    const CVector coeffs = s.vectors.transpose().cast<cplx>() * phi0;
    const Eigen::RowVectorXcd row_target = s.vectors.row(static_cast<Eigen::Index>(pair.target)).cast<cplx>();
    auto phase_coeffs = [&](double t) {
        CVector c = coeffs;
        for (Eigen::Index k = 0; k < c.size(); ++k) {
            c(k) *= std::polar(1.0, -s.values(k) * t);
        }
        return c;
    };
    auto target_prob = [&](double t) { return std::norm((row_target * phase_coeffs(t)).value()); };
    auto fidelity = [&](double t) { return std::norm(coeffs.dot(phase_coeffs(t))); };

    CtTransferReport r;
    r.pair = pair;
    r.lambda = options.lambda;
    r.tracked = options.tracked.empty() ? std::vector<Vertex>{pair.source, pair.target} : options.tracked;
    for (Vertex v : r.tracked) {
        if (v >= n) {
            throw ConfigError("tracked vertex " + std::to_string(v) + " out of range");
        }
    }
    const auto steps = static_cast<std::size_t>(std::floor(options.t_max / options.dt + 1e-9));
    std::vector<double> grid_target;
    std::vector<double> grid_fidelity;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * options.dt;
        const CVector phi = s.vectors.cast<cplx>() * phase_coeffs(t);
        r.times.push_back(t);
        std::vector<double> row;
        for (Vertex v : r.tracked) {
            row.push_back(std::norm(phi(static_cast<Eigen::Index>(v))));
        }
        r.probabilities.push_back(std::move(row));
        grid_target.push_back(std::norm(phi(static_cast<Eigen::Index>(pair.target))));
        grid_fidelity.push_back(std::norm(phi0.dot(phi)));
    }
    auto local_maxima = [&](const std::vector<double>& f) {
        std::vector<std::size_t> idx;
        for (std::size_t k = 1; k < f.size(); ++k) {
            const bool left = f[k] >= f[k - 1];
            const bool right = k + 1 == f.size() || f[k] >= f[k + 1];
            if (left && right) {
                idx.push_back(k);
            }
        }
        return idx;
    };
    auto bracket = [&](std::size_t k) {
        const double lo = r.times[k - 1];
        const double hi = k + 1 < r.times.size() ? r.times[k + 1] : r.times[k];
        return std::pair{lo, hi};
    };
    for (std::size_t k : local_maxima(grid_target)) {
        const auto [lo, hi] = bracket(k);
        CtPeak peak = golden_max(target_prob, lo, hi, options.refine_tol);
        if (grid_target[k] > peak.probability) {
            peak = {r.times[k], grid_target[k]};
        }
        // neighbouring grid maxima can refine onto the same peak
        if (!r.peaks.empty() && std::abs(r.peaks.back().t - peak.t) < options.dt * 0.5) {
            if (peak.probability > r.peaks.back().probability) {
                r.peaks.back() = peak;
            }
            continue;
        }
        r.peaks.push_back(peak);
    }
    for (const auto& p : r.peaks) {
        if (p.probability >= 1.0 - options.pst_tol) {
            r.pst_times.push_back(p.t);
        }
        if (p.probability > r.max_probability) {
            r.max_probability = p.probability;
            r.max_time = p.t;
        }
    }
    for (std::size_t k : local_maxima(grid_fidelity)) {
        const auto [lo, hi] = bracket(k);
        const CtPeak peak = golden_max(fidelity, lo, hi, options.refine_tol);
        if (peak.probability >= 1.0 - options.pst_tol && peak.t > 0.0) {
            r.period = peak.t;
            break;
        }
    }
    r.high_amplitude = r.max_probability >= options.lambda;
    return r;
}

PositionState analytic_k2kn(std::size_t n, double t) {
    PositionState s = PositionState::Zero(static_cast<Eigen::Index>(n + 2));
    if (n == 0) {
        s(0) = 1.0;
        return s;
    }
    const double w = std::sqrt(2.0 * static_cast<double>(n));
    s(0) = (std::cos(w * t) + 1.0) / 2.0;
    s(1) = (std::cos(w * t) - 1.0) / 2.0;
    for (std::size_t k = 0; k < n; ++k) {
        s(static_cast<Eigen::Index>(k + 2)) = cplx(0.0, -std::sin(w * t) / w);
    }
    return s;
}

} // namespace qw
