#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qwalk/coin.hpp"

namespace qw {

using WalkState = CVector;

// Flip-flop shift as a permutation: arc a is sent to shift_permutation[a].
std::vector<std::size_t> shift_permutation(const ArcSpace& arcs);
Matrix build_shift(const Graph& g);

// The unitary S C over the arc space.
class StepOperator {
  public:
    StepOperator(const Graph& g, const CoinPolicy& policy);
    StepOperator(const Graph& g, BlockCoin coin);

    const ArcSpace& arcs() const { return arcs_; }
    const BlockCoin& coin() const { return coin_; }
    std::size_t dimension() const { return arcs_.arc_count(); }

    WalkState apply(const WalkState& state) const;
    // Steps every column of states once.
    void apply_in_place(CMatrix& states) const;
    CMatrix dense() const;

  private:
    ArcSpace arcs_;
    BlockCoin coin_;
    std::vector<std::size_t> shift_;
};

WalkState step(const WalkState& state, const StepOperator& op);
double vertex_probability(const ArcSpace& arcs, const WalkState& state, Vertex v);
std::vector<double> vertex_distribution(const ArcSpace& arcs, const WalkState& state);

// Amplitudes on the ports of v; everything else zero. Not normalised.
WalkState localized_state(const ArcSpace& arcs, Vertex v, std::span<const cplx> amplitudes);
WalkState equal_superposition(const ArcSpace& arcs, Vertex v);

struct TransferOptions {
    std::size_t max_steps = 100;
    double lambda = kDefaultLambda;
    double pst_tol = kDefaultPstTol;
    // vertices recorded in the series; source and target when empty
    std::vector<Vertex> tracked;
};

struct TransferReport {
    VertexPair pair;
    std::vector<Vertex> tracked;
    // probabilities[k][i]: tracked vertex i after k steps, k = 0..max_steps
    std::vector<std::vector<double>> probabilities;
    std::vector<double> target_probability;
    std::vector<std::size_t> pst_steps;
    std::optional<std::size_t> period;
    std::optional<std::size_t> positional_period;
    double max_probability = 0.0;
    std::size_t max_step = 0;
    double lambda = kDefaultLambda;
    bool high_amplitude = false;
    double norm_drift = 0.0;
};

TransferReport detect_transfer(const StepOperator& op, const WalkState& init, VertexPair pair,
                               const TransferOptions& options = {});
TransferReport detect_transfer(const Graph& g, const CoinPolicy& policy, const WalkState& init,
                               VertexPair pair, const TransferOptions& options = {});

// Unit complex d-vectors, uniform on the sphere (normalised complex Gaussians).
std::vector<CVector> haar_states(std::size_t d, std::size_t count, std::uint64_t seed);

struct ScanResult {
    double max_probability = 0.0;
    std::size_t step = 0;
    std::size_t best_sample = 0;
    double fraction_over_lambda = 0.0;
    std::size_t samples = 0;
};

ScanResult max_transfer_scan(const StepOperator& op, VertexPair pair, std::span<const CVector> samples,
                             std::size_t max_steps, double lambda = kDefaultLambda,
                             std::size_t workers = 1);
ScanResult max_transfer_scan(const Graph& g, const CoinPolicy& policy, VertexPair pair,
                             std::size_t samples, std::size_t max_steps, std::uint64_t seed,
                             double lambda = kDefaultLambda, std::size_t workers = 1);

// PST over all initial states supported on the source ports, from the
// singular values of P_target (S C)^T P_source.
struct ExactPst {
    // some source state reaches the target with probability 1
    std::vector<std::size_t> pst_steps;
    // every source state does
    std::vector<std::size_t> pst_all_steps;
    // smallest T with (S C)^T acting as the identity on the source ports
    std::optional<std::size_t> period;
    std::vector<double> max_singular_value;
};

ExactPst exact_pst(const StepOperator& op, VertexPair pair, std::size_t max_steps,
                   double pst_tol = kDefaultPstTol);

// Source state achieving the largest transfer after `steps` (right singular vector).
CVector best_source_state(const StepOperator& op, VertexPair pair, std::size_t steps);

} // namespace qw
