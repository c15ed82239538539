#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qwalk/arcs.hpp"

namespace qw {

// A dimension of 0 means "take the degree of the vertex it is assigned to".
struct GroverCoin { std::size_t d = 0; };
struct DftCoin { std::size_t d = 0; };
struct HadamardCoin {};
struct H2Coin {};
// t tunnelling ports switched on with coupling c. Tunnelling ports are the
// last t ports unless listed explicitly.
struct InterpGroverCoin {
    std::size_t d = 0;
    std::size_t t = 1;
    double c = 0.0;
    std::vector<std::size_t> tunnel_ports;
};
struct CustomCoin { CMatrix u; };

using CoinSpec = std::variant<GroverCoin, DftCoin, HadamardCoin, H2Coin, InterpGroverCoin, CustomCoin>;

Matrix grover(std::size_t d);
CMatrix dft(std::size_t d);
Matrix hadamard();
Matrix h2();
Matrix interp_grover(std::size_t d, std::size_t t, double c);
CMatrix haar_unitary(std::size_t d, std::uint64_t seed);

// Matrix for spec, resolving a zero dimension to `degree`.
CMatrix coin_matrix(const CoinSpec& spec, std::size_t degree);
CoinSpec coin_spec_from_json(const nlohmann::json& j);

enum class StandardPolicy { O1, O2, O3 };

// Coins of the K2bar + Knbar study; vertices 0 and 1 form the K2bar part.
// Row 1: DFT everywhere. Row 2: seeded Haar unitaries at 0 and 1, Grover(2)
// elsewhere. Row 3: Grover at 0 and 1, H elsewhere. Row 4: Grover at 0 and 1,
// H on the first half of the remaining vertices, H2 on the rest.
struct Table1Policy {
    int row = 1;
    std::uint64_t seed = kDefaultSeed;
};

struct ExplicitPolicy {
    std::map<Vertex, CoinSpec> coins;
    std::optional<StandardPolicy> fallback;
};

using CoinPolicy = std::variant<StandardPolicy, Table1Policy, ExplicitPolicy>;

CoinPolicy parse_policy(const nlohmann::json& j, std::uint64_t seed = kDefaultSeed);
std::string policy_name(const CoinPolicy& policy);
std::string policy_name(StandardPolicy policy);

// Direct sum of per-vertex coins over an arc space.
class BlockCoin {
  public:
    BlockCoin(const ArcSpace& arcs, std::vector<CMatrix> blocks);

    const CMatrix& block(Vertex v) const { return blocks_[v]; }
    std::size_t dimension() const { return dim_; }
    // Applies the coin to every column of states.
    void apply(CMatrix& states) const;
    void apply(CVector& state) const;
    CMatrix dense() const;

  private:
    std::vector<std::size_t> offsets_;
    std::vector<CMatrix> blocks_;
    std::size_t dim_ = 0;
};

BlockCoin assemble_coin(const Graph& g, const ArcSpace& arcs, const CoinPolicy& policy);
BlockCoin assemble_coin(const Graph& g, const CoinPolicy& policy);

} // namespace qw
