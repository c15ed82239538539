// Canonical labelling by individualization-refinement: colour refinement to
// an equitable ordered partition, then branching on the first non-singleton
// cell. The key is the lexicographically smallest leaf encoding.

#include <algorithm>
#include <map>

#include "qwalk/graph.hpp"

namespace qw {

namespace {

using Cell = std::vector<int>;
using Partition = std::vector<Cell>;

class Canonizer {
  public:
    Canonizer(const Graph& g, std::span<const int> colors) : n_(static_cast<int>(g.size())) {
        adj_.assign(static_cast<std::size_t>(n_ * n_), 0);
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                adj_[idx(i, j)] = g.weight(i, j) != 0.0 ? 1 : 0;
            }
        }
        colors_.assign(colors.begin(), colors.end());
    }

    std::string run() {
        std::map<int, Cell> by_color;
        for (int v = 0; v < n_; ++v) {
            by_color[colors_[v]].push_back(v);
        }
        Partition p;
        for (auto& [c, cell] : by_color) {
            p.push_back(std::move(cell));
        }
        search(std::move(p));
        return best_;
    }

  private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i * n_ + j); }

    void refine(Partition& p) const {
        std::vector<int> cell_of(n_);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t c = 0; c < p.size(); ++c) {
                for (int v : p[c]) {
                    cell_of[v] = static_cast<int>(c);
                }
            }
            Partition next;
            next.reserve(p.size());
            for (const auto& cell : p) {
                if (cell.size() == 1) {
                    next.push_back(cell);
                    continue;
                }
                std::vector<std::pair<std::vector<int>, int>> sig;
                sig.reserve(cell.size());
                for (int v : cell) {
                    std::vector<int> s(p.size() + 1, 0);
                    s[p.size()] = adj_[idx(v, v)];
                    for (int w = 0; w < n_; ++w) {
                        if (w != v && adj_[idx(v, w)]) {
                            ++s[cell_of[w]];
                        }
                    }
                    sig.emplace_back(std::move(s), v);
                }
                std::sort(sig.begin(), sig.end());
                Cell cur{sig[0].second};
                for (std::size_t k = 1; k < sig.size(); ++k) {
                    if (sig[k].first != sig[k - 1].first) {
                        next.push_back(std::move(cur));
                        cur.clear();
                        changed = true;
                    }
                    cur.push_back(sig[k].second);
                }
                next.push_back(std::move(cur));
            }
            p = std::move(next);
        }
    }

    std::string encode(const Partition& p) const {
        std::vector<int> order;
        order.reserve(n_);
        for (const auto& cell : p) {
            order.push_back(cell[0]);
        }
        std::string key;
        key.push_back(static_cast<char>(n_ >> 8));
        key.push_back(static_cast<char>(n_ & 0xff));
        for (int v : order) {
            key.push_back(static_cast<char>(colors_[v]));
        }
        unsigned char byte = 0;
        int bits = 0;
        for (int i = 0; i < n_; ++i) {
            for (int j = i; j < n_; ++j) {
                byte = static_cast<unsigned char>((byte << 1) | adj_[idx(order[i], order[j])]);
                if (++bits == 8) {
                    key.push_back(static_cast<char>(byte));
                    byte = 0;
                    bits = 0;
                }
            }
        }
        if (bits > 0) {
            key.push_back(static_cast<char>(byte << (8 - bits)));
        }
        return key;
    }

    bool twins(int u, int v) const {
        if (adj_[idx(u, u)] != adj_[idx(v, v)]) {
            return false;
        }
        for (int w = 0; w < n_; ++w) {
            if (w != u && w != v && adj_[idx(u, w)] != adj_[idx(v, w)]) {
                return false;
            }
        }
        return true;
    }

    void search(Partition p) {
        refine(p);
        auto target = std::find_if(p.begin(), p.end(), [](const Cell& c) { return c.size() > 1; });
        if (target == p.end()) {
            std::string leaf = encode(p);
            if (best_.empty() || leaf < best_) {
                best_ = std::move(leaf);
            }
            return;
        }
        const auto pos = static_cast<std::size_t>(target - p.begin());
        const Cell cell = *target;
        std::vector<int> tried;
        for (int v : cell) {
            // swapping twins is an automorphism fixing the current partition
            if (std::any_of(tried.begin(), tried.end(), [&](int u) { return twins(u, v); })) {
                continue;
            }
            tried.push_back(v);
            Partition child;
            child.reserve(p.size() + 1);
            child.insert(child.end(), p.begin(), p.begin() + static_cast<std::ptrdiff_t>(pos));
            child.push_back({v});
            Cell rest;
            for (int w : cell) {
                if (w != v) {
                    rest.push_back(w);
                }
            }
            child.push_back(std::move(rest));
            child.insert(child.end(), p.begin() + static_cast<std::ptrdiff_t>(pos) + 1, p.end());
            search(std::move(child));
        }
    }

    int n_;
    std::vector<unsigned char> adj_;
    std::vector<int> colors_;
    std::string best_;
};

} // namespace

std::string canonical_key(const Graph& g, std::span<const int> colors) {
    if (!g.unweighted()) {
        throw ConfigError("canonical key requires an unweighted graph");
    }
    if (colors.size() != g.size()) {
        throw ConfigError("canonical key: one colour per vertex required");
    }
    for (int c : colors) {
        if (c < 0 || c > 255) {
            throw ConfigError("canonical key: colours must lie in [0, 255]");
        }
    }
    return Canonizer(g, colors).run();
}

std::string canonical_key(const Graph& g) {
    const std::vector<int> colors(g.size(), 0);
    return canonical_key(g, colors);
}

std::string marked_canonical_key(const Graph& g, Vertex marked) {
    std::vector<int> colors(g.size(), 0);
    colors.at(marked) = 1;
    return canonical_key(g, colors);
}

std::string marked_canonical_key(const Graph& g, VertexPair pair) {
    std::vector<int> colors(g.size(), 0);
    colors.at(pair.source) = 1;
    colors.at(pair.target) = 2;
    return canonical_key(g, colors);
}

std::string hex_key(std::string_view key) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(key.size() * 2);
    for (unsigned char c : key) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

} // namespace qw
