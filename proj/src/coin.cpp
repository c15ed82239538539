#include "qwalk/coin.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qw {

Matrix grover(std::size_t d) {
    if (d == 0) {
        throw ConfigError("grover coin requires d ≥ 1");
    }
    const double dd = static_cast<double>(d);
    Matrix g = Matrix::Constant(d, d, 2.0 / dd);
    g.diagonal().setConstant((2.0 - dd) / dd);
    return g;
}

CMatrix dft(std::size_t d) {
    if (d == 0) {
        throw ConfigError("dft coin requires d ≥ 1");
    }
    CMatrix f(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            // reduce jk mod d first so large products keep full phase accuracy
            const double phase = -2.0 * std::numbers::pi * static_cast<double>((j * k) % d) /
                                 static_cast<double>(d);
            f(j, k) = std::polar(norm, phase);
        }
    }
    return f;
}

Matrix hadamard() {
    Matrix h(2, 2);
    h << 1.0, 1.0, 1.0, -1.0;
    return h / std::sqrt(2.0);
}

Matrix h2() {
    Matrix h(2, 2);
    h << 1.0, 1.0, -1.0, 1.0;
    return h / std::sqrt(2.0);
}

Matrix interp_grover(std::size_t d, std::size_t t, double c) {
    if (t == 0 || t >= d) {
        throw ConfigError("interp_grover requires 1 ≤ t < d (got d=" + std::to_string(d) +
                          ", t=" + std::to_string(t) + ")");
    }
    if (!(c >= 0.0 && c <= 1.0)) {
        throw ConfigError("interp_grover requires c in [0, 1]");
    }
    const std::size_t k = d - t;
    if (t > k) {
        throw ConfigError("interp_grover: no real branch joins Grover(" + std::to_string(k) +
                          ") and Grover(" + std::to_string(d) + ") when t > d - t");
    }
    Matrix u = Matrix::Zero(d, d);
    if (c == 0.0) {
        u.topLeftCorner(k, k) = grover(k);
        u.bottomRightCorner(t, t).setIdentity();
        return u;
    }
    const double dk = static_cast<double>(k);
    const double dt = static_cast<double>(t);
    const double coupling = c * 2.0 / static_cast<double>(d);
    const double s = coupling * std::sqrt(dk * dt);
    const double co = std::sqrt(std::max(0.0, 1.0 - s * s));
    const double b = (co + 1.0) / dk;
    const double a = b - 1.0;
    const double f = (1.0 - co) / dt;
    const double e = f - 1.0;
    u.topLeftCorner(k, k).setConstant(b);
    u.topLeftCorner(k, k).diagonal().setConstant(a);
    u.bottomRightCorner(t, t).setConstant(f);
    u.bottomRightCorner(t, t).diagonal().setConstant(e);
    u.topRightCorner(k, t).setConstant(coupling);
    u.bottomLeftCorner(t, k).setConstant(coupling);
    return u;
}

CMatrix haar_unitary(std::size_t d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix z(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = cplx(re, im);
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t j = 0; j < d; ++j) {
        const cplx diag = r(j, j);
        q.col(j) *= std::abs(diag) > 0.0 ? diag / std::abs(diag) : cplx(1.0);
    }
    return q;
}

namespace {

struct CoinBuilder {
    std::size_t degree;

    std::size_t dim(std::size_t d) const { return d == 0 ? degree : d; }

    CMatrix operator()(const GroverCoin& s) const { return grover(dim(s.d)).cast<cplx>(); }
    CMatrix operator()(const DftCoin& s) const { return dft(dim(s.d)); }
    CMatrix operator()(const HadamardCoin&) const { return hadamard().cast<cplx>(); }
    CMatrix operator()(const H2Coin&) const { return h2().cast<cplx>(); }
    CMatrix operator()(const InterpGroverCoin& s) const {
        const std::size_t d = dim(s.d);
        const Matrix base = interp_grover(d, s.t, s.c);
        if (s.tunnel_ports.empty()) {
            return base.cast<cplx>();
        }
        if (s.tunnel_ports.size() != s.t) {
            throw ConfigError("interp_grover: tunnel_ports must list exactly t ports");
        }
        // order[i] = port carrying row i of the canonical (tunnel-last) layout
        std::vector<std::size_t> order;
        std::vector<char> tunnel(d, 0);
        for (auto p : s.tunnel_ports) {
            if (p >= d || tunnel[p]) {
                throw ConfigError("interp_grover: tunnel port out of range or repeated");
            }
            tunnel[p] = 1;
        }
        for (std::size_t p = 0; p < d; ++p) {
            if (!tunnel[p]) {
                order.push_back(p);
            }
        }
        order.insert(order.end(), s.tunnel_ports.begin(), s.tunnel_ports.end());
        CMatrix u(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                u(order[i], order[j]) = base(i, j);
            }
        }
        return u;
    }
    CMatrix operator()(const CustomCoin& s) const {
        if (s.u.rows() != s.u.cols() || s.u.rows() == 0) {
            throw ConfigError("custom coin must be a nonempty square matrix");
        }
        if (unitarity_error(s.u) > 1e-10) {
            throw ConfigError("custom coin is not unitary (max |U^dagger U - I| = " +
                              std::to_string(unitarity_error(s.u)) + ")");
        }
        return s.u;
    }
};

cplx complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ConfigError("complex entry must be a number or [re, im]");
}

} // namespace

CMatrix coin_matrix(const CoinSpec& spec, std::size_t degree) {
    return std::visit(CoinBuilder{degree}, spec);
}

CoinSpec coin_spec_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (name == "grover" || name == "G") {
            return GroverCoin{};
        }
        if (name == "dft" || name == "DFT") {
            return DftCoin{};
        }
        if (name == "H" || name == "hadamard") {
            return HadamardCoin{};
        }
        if (name == "H2") {
            return H2Coin{};
        }
        throw ConfigError("unknown coin name '" + name + "' (expected grover, dft, H or H2)");
    }
    if (!j.is_object() || !j.contains("type")) {
        throw ConfigError("coin must be a name or an object with a \"type\" field");
    }
    const auto type = j["type"].get<std::string>();
    const std::size_t d = j.value("d", std::size_t{0});
    if (type == "grover") {
        return GroverCoin{d};
    }
    if (type == "dft") {
        return DftCoin{d};
    }
    if (type == "interp_grover") {
        InterpGroverCoin c;
        c.d = d;
        c.t = j.value("t", std::size_t{1});
        c.c = j.value("c", 0.0);
        if (j.contains("tunnel_ports")) {
            c.tunnel_ports = j["tunnel_ports"].get<std::vector<std::size_t>>();
        }
        return c;
    }
    if (type == "custom") {
        if (!j.contains("matrix") || !j["matrix"].is_array()) {
            throw ConfigError("custom coin needs a \"matrix\" array of rows");
        }
        const auto& rows = j["matrix"];
        const auto n = rows.size();
        CMatrix u(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            if (!rows[r].is_array() || rows[r].size() != n) {
                throw ConfigError("custom coin: row " + std::to_string(r) + " must have " +
                                  std::to_string(n) + " entries");
            }
            for (std::size_t c = 0; c < n; ++c) {
                u(r, c) = complex_from_json(rows[r][c]);
            }
        }
        if (n == 0 || unitarity_error(u) > 1e-10) {
            throw ConfigError("custom coin must be a nonempty unitary matrix");
        }
        return CustomCoin{u};
    }
    if (type == "H" || type == "hadamard") {
        return HadamardCoin{};
    }
    if (type == "H2") {
        return H2Coin{};
    }
    throw ConfigError("unknown coin type '" + type + "'");
}

namespace {

StandardPolicy standard_from_name(const std::string& s) {
    if (s == "O1") {
        return StandardPolicy::O1;
    }
    if (s == "O2") {
        return StandardPolicy::O2;
    }
    if (s == "O3") {
        return StandardPolicy::O3;
    }
    throw ConfigError("unknown coin policy '" + s + "' (expected O1, O2, O3, table1:<row> or a JSON map)");
}

} // namespace

CoinPolicy parse_policy(const nlohmann::json& j, std::uint64_t seed) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.rfind("table1:", 0) == 0) {
            const auto row = s.substr(7);
            if (row != "1" && row != "2" && row != "3" && row != "4") {
                throw ConfigError("table1 policy row must be 1, 2, 3 or 4 (got '" + row + "')");
            }
            return Table1Policy{std::stoi(row), seed};
        }
        if (!s.empty() && s.front() == '{') {
            nlohmann::json parsed;
            try {
                parsed = nlohmann::json::parse(s);
            } catch (const nlohmann::json::parse_error& e) {
                throw ConfigError(std::string("coin policy JSON: ") + e.what());
            }
            return parse_policy(parsed, seed);
        }
        return standard_from_name(s);
    }
    if (!j.is_object()) {
        throw ConfigError("coin policy must be a string or a JSON object");
    }
    ExplicitPolicy p;
    for (const auto& [key, value] : j.items()) {
        if (key == "default") {
            p.fallback = standard_from_name(value.get<std::string>());
            continue;
        }
        std::size_t v = 0;
        try {
            std::size_t used = 0;
            v = std::stoul(key, &used);
            if (used != key.size()) {
                throw std::invalid_argument(key);
            }
        } catch (const std::logic_error&) {
            throw ConfigError("coin policy map key '" + key + "' is not a vertex index or \"default\"");
        }
        p.coins.emplace(v, coin_spec_from_json(value));
    }
    return p;
}

std::string policy_name(StandardPolicy policy) {
    switch (policy) {
    case StandardPolicy::O1:
        return "O1";
    case StandardPolicy::O2:
        return "O2";
    case StandardPolicy::O3:
        return "O3";
    }
    return "?";
}

std::string policy_name(const CoinPolicy& policy) {
    if (const auto* s = std::get_if<StandardPolicy>(&policy)) {
        return policy_name(*s);
    }
    if (const auto* t = std::get_if<Table1Policy>(&policy)) {
        return "table1:" + std::to_string(t->row);
    }
    return "explicit";
}

BlockCoin::BlockCoin(const ArcSpace& arcs, std::vector<CMatrix> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.size() != arcs.vertex_count()) {
        throw ConfigError("block coin: one block per vertex required");
    }
    offsets_.resize(blocks_.size());
    for (Vertex v = 0; v < blocks_.size(); ++v) {
        if (static_cast<std::size_t>(blocks_[v].rows()) != arcs.port_count(v) ||
            blocks_[v].rows() != blocks_[v].cols()) {
            throw ConfigError("vertex " + std::to_string(v) + " has degree " +
                              std::to_string(arcs.port_count(v)) + " but its coin has dimension " +
                              std::to_string(blocks_[v].rows()));
        }
        offsets_[v] = arcs.offset(v);
    }
    dim_ = arcs.arc_count();
}

void BlockCoin::apply(CMatrix& states) const {
    for (std::size_t v = 0; v < blocks_.size(); ++v) {
        const auto d = blocks_[v].rows();
        if (d == 0) {
            continue;
        }
        auto rows = states.middleRows(static_cast<Eigen::Index>(offsets_[v]), d);
        rows = (blocks_[v] * rows).eval();
    }
}

void BlockCoin::apply(CVector& state) const {
    for (std::size_t v = 0; v < blocks_.size(); ++v) {
        const auto d = blocks_[v].rows();
        if (d == 0) {
            continue;
        }
        auto seg = state.segment(static_cast<Eigen::Index>(offsets_[v]), d);
        seg = (blocks_[v] * seg).eval();
    }
}

CMatrix BlockCoin::dense() const {
    CMatrix c = CMatrix::Zero(dim_, dim_);
    for (std::size_t v = 0; v < blocks_.size(); ++v) {
        const auto d = blocks_[v].rows();
        c.block(static_cast<Eigen::Index>(offsets_[v]), static_cast<Eigen::Index>(offsets_[v]), d, d) =
            blocks_[v];
    }
    return c;
}

namespace {

CoinSpec standard_coin(StandardPolicy p, std::size_t degree) {
    switch (p) {
    case StandardPolicy::O1:
        return DftCoin{};
    case StandardPolicy::O2:
        return GroverCoin{};
    case StandardPolicy::O3:
        return degree == 2 ? CoinSpec{HadamardCoin{}} : CoinSpec{GroverCoin{}};
    }
    return GroverCoin{};
}

std::vector<CMatrix> table1_blocks(const Graph& g, const Table1Policy& p) {
    const auto n = g.size();
    std::vector<CMatrix> blocks(n);
    if (p.row == 1) {
        for (Vertex v = 0; v < n; ++v) {
            blocks[v] = g.degree(v) == 0 ? CMatrix() : dft(g.degree(v));
        }
        return blocks;
    }
    if (n < 3) {
        throw ConfigError("table1 policies need vertices 0 and 1 plus at least one more vertex");
    }
    for (Vertex v = 2; v < n; ++v) {
        if (g.degree(v) != 2) {
            throw ConfigError("table1:" + std::to_string(p.row) + " expects degree 2 at vertex " +
                              std::to_string(v) + ", found degree " + std::to_string(g.degree(v)));
        }
    }
    const std::size_t rest = n - 2;
    for (Vertex v = 0; v < 2; ++v) {
        if (p.row == 2) {
            blocks[v] = haar_unitary(g.degree(v), p.seed + v);
        } else {
            blocks[v] = grover(g.degree(v)).cast<cplx>();
        }
    }
    for (Vertex v = 2; v < n; ++v) {
        switch (p.row) {
        case 2:
            blocks[v] = grover(2).cast<cplx>();
            break;
        case 3:
            blocks[v] = hadamard().cast<cplx>();
            break;
        case 4:
            blocks[v] = (v - 2 < rest / 2 ? hadamard() : h2()).cast<cplx>();
            break;
        default:
            throw ConfigError("table1 row must be 1, 2, 3 or 4");
        }
    }
    return blocks;
}

} // namespace

BlockCoin assemble_coin(const Graph& g, const ArcSpace& arcs, const CoinPolicy& policy) {
    const auto n = g.size();
    if (const auto* e = std::get_if<ExplicitPolicy>(&policy)) {
        for (const auto& entry : e->coins) {
            if (entry.first >= n) {
                throw ConfigError("coin policy names vertex " + std::to_string(entry.first) +
                                  " but the graph has " + std::to_string(n) + " vertices");
            }
        }
    }
    std::vector<CMatrix> blocks(n);
    if (const auto* t = std::get_if<Table1Policy>(&policy)) {
        blocks = table1_blocks(g, *t);
    } else {
        for (Vertex v = 0; v < n; ++v) {
            const auto d = arcs.port_count(v);
            if (d == 0) {
                continue;
            }
            CoinSpec spec;
            if (const auto* s = std::get_if<StandardPolicy>(&policy)) {
                spec = standard_coin(*s, d);
            } else {
                const auto& e = std::get<ExplicitPolicy>(policy);
                if (auto it = e.coins.find(v); it != e.coins.end()) {
                    spec = it->second;
                } else if (e.fallback) {
                    spec = standard_coin(*e.fallback, d);
                } else {
                    throw ConfigError("coin policy assigns no coin to vertex " + std::to_string(v));
                }
            }
            try {
                blocks[v] = coin_matrix(spec, d);
            } catch (const ConfigError& err) {
                throw ConfigError("vertex " + std::to_string(v) + ": " + err.what());
            }
        }
    }
    return BlockCoin(arcs, std::move(blocks));
}

BlockCoin assemble_coin(const Graph& g, const CoinPolicy& policy) {
    return assemble_coin(g, ArcSpace(g), policy);
}

} // namespace qw
