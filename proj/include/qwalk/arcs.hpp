#pragma once

#include <optional>
#include <vector>

#include "qwalk/graph.hpp"

namespace qw {

// Directed arcs grouped by tail vertex. Ports of v are its neighbours in
// ascending order, then the self loop if present.
class ArcSpace {
  public:
    explicit ArcSpace(const Graph& g);

    std::size_t arc_count() const { return tails_.size(); }
    std::size_t vertex_count() const { return offsets_.size() - 1; }
    std::size_t offset(Vertex v) const { return offsets_[v]; }
    std::size_t port_count(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    std::size_t arc(Vertex v, std::size_t port) const { return offsets_[v] + port; }
    Vertex tail(std::size_t a) const { return tails_[a]; }
    Vertex head(std::size_t a) const { return heads_[a]; }
    std::size_t port_of(std::size_t a) const { return a - offsets_[tails_[a]]; }
    // flip-flop partner: (v->w) <-> (w->v), loops fixed
    std::size_t reverse(std::size_t a) const { return reverse_[a]; }
    std::optional<std::size_t> port_towards(Vertex v, Vertex w) const;
    std::size_t max_degree() const;

  private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> tails_;
    std::vector<Vertex> heads_;
    std::vector<std::size_t> reverse_;
};

} // namespace qw
