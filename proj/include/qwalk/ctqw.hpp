#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <json.hpp>

#include "qwalk/graph.hpp"

namespace qw {

using PositionState = CVector;

// Eigendecomposition of H = gamma A, eigenvalues ascending.
struct Spectrum {
    Eigen::VectorXd values;
    Matrix vectors;
    double hopping = 1.0;

    double reconstruction_error(const Graph& g) const;
};

Spectrum spectrum(const Graph& g, double hopping = 1.0);
nlohmann::json spectrum_to_json(const Spectrum& s);

PositionState evolve_ct(const Spectrum& s, const PositionState& init, double t);
PositionState evolve_ct(const Graph& g, const PositionState& init, double t);
PositionState basis_state(std::size_t n, Vertex v);

struct CtTransferOptions {
    double t_max = 10.0;
    double dt = 0.01;
    double lambda = kDefaultLambda;
    double pst_tol = kDefaultPstTol;
    double refine_tol = 1e-12;
    std::vector<Vertex> tracked;
};

struct CtPeak {
    double t = 0.0;
    double probability = 0.0;
};

struct CtTransferReport {
    VertexPair pair;
    std::vector<Vertex> tracked;
    std::vector<double> times;
    // probabilities[k][i]: tracked vertex i at times[k]
    std::vector<std::vector<double>> probabilities;
    // refined local maxima of the target probability
    std::vector<CtPeak> peaks;
    std::vector<double> pst_times;
    std::optional<double> period;
    double max_probability = 0.0;
    double max_time = 0.0;
    double lambda = kDefaultLambda;
    bool high_amplitude = false;
};

// Samples |<w|phi(t)>|^2 on a grid and refines every local maximum by golden
// section. The period is the first refined maximum of the return fidelity
// reaching 1 - pst_tol. `init` defaults to the source basis state.
CtTransferReport detect_transfer_ct(const Graph& g, VertexPair pair, const CtTransferOptions& options = {},
                                    std::optional<PositionState> init = std::nullopt);

// Golden-section maximisation of f on [a, b].
template <class F>
CtPeak golden_max(F&& f, double a, double b, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double t = 0.5 * (a + b);
    return {t, f(t)};
}

// Closed-form walk on K2bar + Knbar from vertex 0: vertices 0 and 1 get
// (cos(wt) + 1)/2 and (cos(wt) - 1)/2, the others -i sin(wt)/w, w = sqrt(2n).
PositionState analytic_k2kn(std::size_t n, double t);

} // namespace qw
