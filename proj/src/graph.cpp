#include "qwalk/graph.hpp"

#include <cmath>
#include <charconv>
#include <map>
#include <sstream>

namespace qw {

Graph::Graph(Matrix adjacency) : adj_(std::move(adjacency)) {
    if (adj_.rows() != adj_.cols()) {
        throw ConfigError("adjacency matrix must be square, got " + std::to_string(adj_.rows()) +
                          "x" + std::to_string(adj_.cols()));
    }
    if (adj_.rows() == 0) {
        throw ConfigError("graph must have at least one vertex");
    }
    const auto n = size();
    degrees_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double w = adj_(i, j);
            if (!std::isfinite(w) || w < 0.0) {
                throw ConfigError("adjacency entry (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") must be finite and nonnegative");
            }
            if (w != adj_(j, i)) {
                throw ConfigError("adjacency matrix is not symmetric at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
            }
            if (w != 0.0) {
                ++degrees_[i];
            }
        }
    }
}

Graph Graph::edgeless(std::size_t n) { return Graph(Matrix::Zero(n, n)); }

std::vector<Vertex> Graph::neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for (std::size_t w = 0; w < size(); ++w) {
        if (has_edge(v, w)) {
            out.push_back(w);
        }
    }
    return out;
}

std::size_t Graph::edge_count() const {
    std::size_t m = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) {
            m += has_edge(i, j) ? 1 : 0;
        }
    }
    return m;
}

bool Graph::unweighted() const {
    return (adj_.array() == 0.0 || adj_.array() == 1.0).all();
}

bool Graph::has_loops() const { return (adj_.diagonal().array() != 0.0).any(); }

bool Graph::connected() const {
    std::vector<char> seen(size(), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == size();
}

bool Graph::operator==(const Graph& other) const {
    return size() == other.size() && adj_ == other.adj_;
}

FamilySpec join_of(FamilySpec left, FamilySpec right) {
    return FamilySpec{JoinSpec{std::make_shared<const FamilySpec>(std::move(left)),
                               std::make_shared<const FamilySpec>(std::move(right))}};
}

namespace {

void require_positive(std::size_t n, const char* name) {
    if (n == 0) {
        throw ConfigError(std::string(name) + " requires n ≥ 1");
    }
}

Matrix path_matrix(std::size_t n) {
    Matrix a = Matrix::Zero(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        a(i, i + 1) = a(i + 1, i) = 1.0;
    }
    return a;
}

Matrix diamond_matrix(std::size_t n, bool loop_ends) {
    // corners 0..n, the two middles of diamond k are n+1+2k and n+2+2k
    const std::size_t size = 3 * n + 1;
    Matrix a = Matrix::Zero(size, size);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t m : {n + 1 + 2 * k, n + 2 + 2 * k}) {
            a(k, m) = a(m, k) = 1.0;
            a(k + 1, m) = a(m, k + 1) = 1.0;
        }
    }
    if (loop_ends) {
        a(0, 0) = 1.0;
        a(n, n) = 1.0;
    }
    return a;
}

struct Builder {
    Graph operator()(const Complete& s) const {
        require_positive(s.n, "complete");
        Matrix a = Matrix::Ones(s.n, s.n);
        a.diagonal().setZero();
        return Graph(a);
    }
    Graph operator()(const Path& s) const {
        if (s.n < 2) {
            throw ConfigError("path requires n ≥ 2");
        }
        return Graph(path_matrix(s.n));
    }
    Graph operator()(const Cycle& s) const {
        if (s.n < 3) {
            throw ConfigError("cycle requires n ≥ 3");
        }
        Matrix a = path_matrix(s.n);
        a(0, s.n - 1) = a(s.n - 1, 0) = 1.0;
        return Graph(a);
    }
    Graph operator()(const Edgeless& s) const {
        require_positive(s.n, "edgeless");
        return Graph::edgeless(s.n);
    }
    Graph operator()(const DiamondChain& s) const {
        require_positive(s.n, "diamond");
        return Graph(diamond_matrix(s.n, s.loop_ends));
    }
    Graph operator()(const Custom& s) const { return Graph(s.adjacency); }
    Graph operator()(const JoinSpec& s) const {
        if (!s.left || !s.right) {
            throw ConfigError("join requires two operands");
        }
        return join(build(*s.left), build(*s.right));
    }
};

} // namespace

Graph build(const FamilySpec& spec) { return std::visit(Builder{}, spec.kind); }

Graph join(const Graph& g, const Graph& h) {
    const auto n = g.size();
    const auto m = h.size();
    Matrix a = Matrix::Ones(n + m, n + m);
    a.topLeftCorner(n, n) = g.adjacency();
    a.bottomRightCorner(m, m) = h.adjacency();
    return Graph(a);
}

Graph complement(const Graph& g) {
    if (!g.unweighted() || g.has_loops()) {
        throw ConfigError("complement requires an unweighted graph without self loops");
    }
    Matrix a = Matrix::Ones(g.size(), g.size()) - g.adjacency();
    a.diagonal().setZero();
    return Graph(a);
}

Graph permuted(const Graph& g, std::span<const std::size_t> perm) {
    const auto n = g.size();
    if (perm.size() != n) {
        throw ConfigError("permutation length does not match vertex count");
    }
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = g.weight(perm[i], perm[j]);
        }
    }
    return Graph(a);
}

nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    nlohmann::json loops = nlohmann::json::array();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.has_loop(i)) {
            if (g.weight(i, i) == 1.0) {
                loops.push_back(i);
            } else {
                loops.push_back(nlohmann::json::array({i, g.weight(i, i)}));
            }
        }
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            if (g.has_edge(i, j)) {
                edges.push_back(nlohmann::json::array({i, j, g.weight(i, j)}));
            }
        }
    }
    return {{"n", g.size()}, {"edges", edges}, {"loops", loops}};
}

Graph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned()) {
        throw ConfigError("graph JSON needs a nonnegative integer field \"n\"");
    }
    const auto n = j["n"].get<std::size_t>();
    if (n == 0) {
        throw ConfigError("graph JSON: n must be positive");
    }
    Matrix a = Matrix::Zero(n, n);
    auto index = [n](const nlohmann::json& v, const std::string& where) {
        if (!v.is_number_unsigned() || v.get<std::size_t>() >= n) {
            throw ConfigError("graph JSON: " + where + " has a vertex index outside [0, n)");
        }
        return v.get<std::size_t>();
    };
    if (j.contains("edges")) {
        std::size_t k = 0;
        for (const auto& e : j["edges"]) {
            const std::string where = "edges[" + std::to_string(k++) + "]";
            if (!e.is_array() || e.size() < 2 || e.size() > 3) {
                throw ConfigError("graph JSON: " + where + " must be [i, j] or [i, j, weight]");
            }
            const auto u = index(e[0], where);
            const auto v = index(e[1], where);
            if (u == v) {
                throw ConfigError("graph JSON: " + where + " is a loop; list it under \"loops\"");
            }
            const double w = e.size() == 3 ? e[2].get<double>() : 1.0;
            a(u, v) = a(v, u) = w;
        }
    }
    if (j.contains("loops")) {
        std::size_t k = 0;
        for (const auto& l : j["loops"]) {
            const std::string where = "loops[" + std::to_string(k++) + "]";
            if (l.is_array()) {
                if (l.size() != 2) {
                    throw ConfigError("graph JSON: " + where + " must be i or [i, weight]");
                }
                const auto v = index(l[0], where);
                a(v, v) = l[1].get<double>();
            } else {
                const auto v = index(l, where);
                a(v, v) = 1.0;
            }
        }
    }
    return Graph(a);
}

namespace {

std::size_t parse_count(std::string_view text, const std::string& key) {
    std::size_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("graph spec: field '" + key + "' expects a nonnegative integer, got '" +
                          std::string(text) + "'");
    }
    return value;
}

} // namespace

FamilySpec parse_family(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::string> words;
    for (std::string w; in >> w;) {
        words.push_back(w);
    }
    if (words.empty()) {
        throw ConfigError("graph spec is empty");
    }
    std::string family = words[0];
    std::string combo;
    std::map<std::string, std::string> fields;
    for (std::size_t i = 1; i < words.size(); ++i) {
        const auto eq = words[i].find('=');
        if (eq == std::string::npos) {
            if (family == "join" && combo.empty()) {
                combo = words[i];
                continue;
            }
            throw ConfigError("graph spec: token '" + words[i] + "' (position " + std::to_string(i) +
                              ") is not of the form key=value");
        }
        fields[words[i].substr(0, eq)] = words[i].substr(eq + 1);
    }
    auto take_n = [&]() {
        auto it = fields.find("n");
        if (it == fields.end()) {
            throw ConfigError("graph spec '" + family + "' requires field n");
        }
        auto n = parse_count(it->second, "n");
        fields.erase(it);
        return n;
    };
    FamilySpec spec;
    if (family == "complete") {
        spec = {Complete{take_n()}};
    } else if (family == "path") {
        spec = {Path{take_n()}};
    } else if (family == "cycle") {
        spec = {Cycle{take_n()}};
    } else if (family == "empty" || family == "edgeless") {
        spec = {Edgeless{take_n()}};
    } else if (family == "diamond") {
        bool loops = false;
        if (auto it = fields.find("loops"); it != fields.end()) {
            loops = parse_count(it->second, "loops") != 0;
            fields.erase(it);
        }
        spec = {DiamondChain{take_n(), loops}};
    } else if (family == "join") {
        const std::size_t n = take_n();
        FamilySpec right;
        if (combo == "k2c") {
            right = {Cycle{n}};
        } else if (combo == "k2p") {
            right = {Path{n}};
        } else if (combo == "k2k") {
            right = {Edgeless{n}};
        } else if (combo == "k2complete") {
            right = {Complete{n}};
        } else {
            throw ConfigError("graph spec: join kind '" + combo +
                              "' unknown (expected k2c, k2p, k2k or k2complete)");
        }
        spec = join_of(FamilySpec{Edgeless{2}}, std::move(right));
    } else {
        throw ConfigError("graph spec: unknown family '" + family +
                          "' (expected complete, path, cycle, empty, diamond or join)");
    }
    if (!fields.empty()) {
        throw ConfigError("graph spec: unexpected field '" + fields.begin()->first + "'");
    }
    // validate sizes eagerly so errors surface at parse time
    (void)build(spec);
    return spec;
}

FamilySpec family_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        return parse_family(j.get<std::string>());
    }
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
        throw ConfigError("graph family JSON needs a string field \"family\"");
    }
    const auto family = j["family"].get<std::string>();
    auto n = [&]() {
        if (!j.contains("n") || !j["n"].is_number_unsigned()) {
            throw ConfigError("graph family '" + family + "' needs a nonnegative integer field \"n\"");
        }
        return j["n"].get<std::size_t>();
    };
    FamilySpec spec;
    if (family == "complete") {
        spec = {Complete{n()}};
    } else if (family == "path") {
        spec = {Path{n()}};
    } else if (family == "cycle") {
        spec = {Cycle{n()}};
    } else if (family == "empty" || family == "edgeless") {
        spec = {Edgeless{n()}};
    } else if (family == "diamond") {
        spec = {DiamondChain{n(), j.value("loop_ends", false)}};
    } else if (family == "join") {
        if (!j.contains("left") || !j.contains("right")) {
            throw ConfigError("graph family 'join' needs \"left\" and \"right\"");
        }
        spec = join_of(family_from_json(j["left"]), family_from_json(j["right"]));
    } else if (family == "custom") {
        if (!j.contains("adjacency") || !j["adjacency"].is_array()) {
            throw ConfigError("graph family 'custom' needs an \"adjacency\" array of rows");
        }
        const auto& rows = j["adjacency"];
        const auto r = rows.size();
        Matrix a = Matrix::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
        for (std::size_t i = 0; i < r; ++i) {
            if (!rows[i].is_array() || rows[i].size() != r) {
                throw ConfigError("graph family 'custom': adjacency row " + std::to_string(i) +
                                  " must have " + std::to_string(r) + " entries");
            }
            for (std::size_t k = 0; k < r; ++k) {
                a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k].get<double>();
            }
        }
        spec = {Custom{a}};
    } else {
        throw ConfigError("graph family '" + family + "' unknown");
    }
    (void)build(spec);
    return spec;
}

namespace {

struct Describer {
    std::string operator()(const Complete& s) const { return "K" + std::to_string(s.n); }
    std::string operator()(const Path& s) const { return "P" + std::to_string(s.n); }
    std::string operator()(const Cycle& s) const { return "C" + std::to_string(s.n); }
    std::string operator()(const Edgeless& s) const { return "Kbar" + std::to_string(s.n); }
    std::string operator()(const DiamondChain& s) const {
        return "Diamond" + std::to_string(s.n) + (s.loop_ends ? "L" : "");
    }
    std::string operator()(const Custom& s) const {
        return "Custom" + std::to_string(s.adjacency.rows());
    }
    std::string operator()(const JoinSpec& s) const {
        return "(" + describe(*s.left) + "+" + describe(*s.right) + ")";
    }
};

} // namespace

std::string describe(const FamilySpec& spec) { return std::visit(Describer{}, spec.kind); }

} // namespace qw
