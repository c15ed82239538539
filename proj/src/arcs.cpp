#include "qwalk/arcs.hpp"

#include <algorithm>

namespace qw {

ArcSpace::ArcSpace(const Graph& g) {
    const auto n = g.size();
    offsets_.assign(n + 1, 0);
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex w : g.neighbors(v)) {
            tails_.push_back(v);
            heads_.push_back(w);
        }
        if (g.has_loop(v)) {
            tails_.push_back(v);
            heads_.push_back(v);
        }
        offsets_[v + 1] = tails_.size();
    }
    reverse_.resize(tails_.size());
    for (std::size_t a = 0; a < tails_.size(); ++a) {
        if (tails_[a] == heads_[a]) {
            reverse_[a] = a;
        } else {
            reverse_[a] = *port_towards(heads_[a], tails_[a]) + offsets_[heads_[a]];
        }
    }
}

std::optional<std::size_t> ArcSpace::port_towards(Vertex v, Vertex w) const {
    for (std::size_t a = offsets_[v]; a < offsets_[v + 1]; ++a) {
        if (heads_[a] == w) {
            return a - offsets_[v];
        }
    }
    return std::nullopt;
}

std::size_t ArcSpace::max_degree() const {
    std::size_t d = 0;
    for (Vertex v = 0; v < vertex_count(); ++v) {
        d = std::max(d, port_count(v));
    }
    return d;
}

} // namespace qw
