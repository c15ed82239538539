#pragma once

#include <span>
#include <string>
#include <vector>

#include "qwalk/dtqw.hpp"

namespace qw {

using DensityMatrix = CMatrix;

// coin: one projector per port index, summed over vertices
// position: one projector per vertex block
// both: one projector per arc
enum class NoiseBasis { Coin, Position, Both };

struct NoiseModel {
    NoiseBasis basis = NoiseBasis::Both;
    double rate = 0.0;
};

NoiseBasis parse_noise_basis(const std::string& name);
std::string noise_basis_name(NoiseBasis basis);

// Projector index of each basis state; P_j is the indicator of label j.
std::vector<std::size_t> projector_labels(const ArcSpace& arcs, NoiseBasis basis);
std::vector<Matrix> projectors(std::span<const std::size_t> labels);
// sum_j P_j rho P_j
DensityMatrix dephase(const DensityMatrix& rho, std::span<const std::size_t> labels);

DensityMatrix pure_density(const CVector& psi);
std::vector<double> vertex_marginals(const ArcSpace& arcs, const DensityMatrix& rho);

// rho' = (1-p) U rho U^dagger + p sum_j P_j U rho U^dagger P_j
DensityMatrix decohere_step(const DensityMatrix& rho, const StepOperator& op, const NoiseModel& noise);

struct CtDecoherence {
    DensityMatrix rho;
    double dt = 0.0;
    double trace_drift = 0.0;
};

// RK4 for d rho/dt = -i[A, rho] - p rho + p sum_j P_j rho P_j in the vertex
// basis (position dephasing), halving dt until the trace drifts < 1e-8.
CtDecoherence decohere_ct_detailed(const Graph& g, const DensityMatrix& rho0, const NoiseModel& noise,
                                   double t, double dt = 1e-3);
DensityMatrix decohere_ct(const Graph& g, const DensityMatrix& rho0, const NoiseModel& noise, double t,
                          double dt = 1e-3);

// Column-stochastic walk, probability 1/deg(v) along each edge or loop at v.
Matrix transition_matrix(const Graph& g);
std::vector<double> classical_walk(const Graph& g, std::span<const double> start, std::size_t steps);

struct RateRow {
    double rate = 0.0;
    double probability = 0.0;
};

std::vector<RateRow> target_probability_vs_rate(const StepOperator& op, const WalkState& init,
                                                VertexPair pair, NoiseBasis basis,
                                                std::span<const double> rates, std::size_t steps,
                                                std::size_t workers = 1);
std::vector<RateRow> target_probability_vs_rate_ct(const Graph& g, VertexPair pair,
                                                   std::span<const double> rates, double time,
                                                   double dt = 1e-3, std::size_t workers = 1);

} // namespace qw
