#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qwalk/types.hpp"

namespace qw {

// Undirected graph with nonnegative symmetric weights. A positive diagonal
// entry is a self loop; a loop adds one to the degree.
class Graph {
  public:
    explicit Graph(Matrix adjacency);
    static Graph edgeless(std::size_t n);

    std::size_t size() const { return static_cast<std::size_t>(adj_.rows()); }
    const Matrix& adjacency() const { return adj_; }
    double weight(Vertex i, Vertex j) const { return adj_(i, j); }
    bool has_edge(Vertex i, Vertex j) const { return i != j && adj_(i, j) != 0.0; }
    bool has_loop(Vertex v) const { return adj_(v, v) != 0.0; }
    std::size_t degree(Vertex v) const { return degrees_[v]; }
    const std::vector<std::size_t>& degrees() const { return degrees_; }

    // Neighbours other than v itself, ascending.
    std::vector<Vertex> neighbors(Vertex v) const;
    std::size_t edge_count() const;
    bool unweighted() const;
    bool has_loops() const;
    bool connected() const;

    bool operator==(const Graph& other) const;

  private:
    Matrix adj_;
    std::vector<std::size_t> degrees_;
};

struct Complete { std::size_t n; };
struct Path { std::size_t n; };
struct Cycle { std::size_t n; };
struct Edgeless { std::size_t n; };
struct DiamondChain {
    std::size_t n;
    bool loop_ends = false;
};
struct Custom { Matrix adjacency; };

struct FamilySpec;
struct JoinSpec {
    std::shared_ptr<const FamilySpec> left;
    std::shared_ptr<const FamilySpec> right;
};

struct FamilySpec {
    std::variant<Complete, Path, Cycle, Edgeless, DiamondChain, Custom, JoinSpec> kind;
};

FamilySpec join_of(FamilySpec left, FamilySpec right);

Graph build(const FamilySpec& spec);
Graph join(const Graph& g, const Graph& h);
Graph complement(const Graph& g);

// Relabelling-invariant byte key; equal keys iff isomorphic.
std::string canonical_key(const Graph& g);
// Same, with a colour per vertex that isomorphisms must preserve.
std::string canonical_key(const Graph& g, std::span<const int> colors);
std::string marked_canonical_key(const Graph& g, Vertex marked);
std::string marked_canonical_key(const Graph& g, VertexPair pair);
std::string hex_key(std::string_view key);

Graph permuted(const Graph& g, std::span<const std::size_t> perm);

nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

// Text form, e.g. "cycle n=5", "diamond n=3 loops=1", "join k2c n=5".
FamilySpec parse_family(std::string_view text);
FamilySpec family_from_json(const nlohmann::json& j);
std::string describe(const FamilySpec& spec);

} // namespace qw
