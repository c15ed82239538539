#include "qwalk/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <unordered_set>

#include "qwalk/parallel.hpp"

namespace qw {

nlohmann::json descriptor_to_json(const VariantDescriptor& d) {
    nlohmann::json attachments = nlohmann::json::array();
    for (auto mask : d.attachments) {
        nlohmann::json vs = nlohmann::json::array();
        for (std::size_t v = 0; v < d.base; ++v) {
            if (mask >> v & 1u) {
                vs.push_back(v);
            }
        }
        attachments.push_back(vs);
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : d.new_edges) {
        edges.push_back({a, b});
    }
    return {{"base", d.base}, {"attachments", attachments}, {"new_edges", edges}};
}

VariantDescriptor descriptor_from_json(const nlohmann::json& j) {
    VariantDescriptor d;
    d.base = j.at("base").get<std::size_t>();
    for (const auto& vs : j.at("attachments")) {
        std::uint32_t mask = 0;
        for (const auto& v : vs) {
            mask |= 1u << v.get<unsigned>();
        }
        d.attachments.push_back(mask);
    }
    for (const auto& e : j.at("new_edges")) {
        d.new_edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    }
    return d;
}

namespace {

void check_base(std::size_t base) {
    if (base < 4 || base % 2 != 0 || base > 30) {
        throw ConfigError("base cycle size must be even and in [4, 30] (got " + std::to_string(base) + ")");
    }
}

} // namespace

Graph build_variant(const VariantDescriptor& d) {
    check_base(d.base);
    const auto k = d.attachments.size();
    const auto n = d.base + k;
    Matrix a = Matrix::Zero(n, n);
    for (std::size_t v = 0; v < d.base; ++v) {
        const auto w = (v + 1) % d.base;
        a(v, w) = a(w, v) = 1.0;
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (d.attachments[i] == 0 || d.attachments[i] >> d.base != 0) {
            throw ConfigError("new node " + std::to_string(i) + " needs a nonempty attachment set on the cycle");
        }
        for (std::size_t v = 0; v < d.base; ++v) {
            if (d.attachments[i] >> v & 1u) {
                a(d.base + i, v) = a(v, d.base + i) = 1.0;
            }
        }
    }
    for (const auto& [x, y] : d.new_edges) {
        if (x >= k || y >= k || x == y) {
            throw ConfigError("edge between new nodes " + std::to_string(x) + " and " + std::to_string(y) +
                              " is invalid");
        }
        a(d.base + x, d.base + y) = a(d.base + y, d.base + x) = 1.0;
    }
    return Graph(a);
}

VertexPair antipodal_pair(std::size_t base) {
    check_base(base);
    return {0, base / 2};
}

std::vector<Vertex> touched_vertices(const VariantDescriptor& d) {
    std::uint32_t all = 0;
    for (auto m : d.attachments) {
        all |= m;
    }
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < d.base; ++v) {
        if (all >> v & 1u) {
            out.push_back(v);
        }
    }
    return out;
}

bool is_trivial(const VariantDescriptor& d) {
    const std::uint32_t target = 1u << (d.base / 2);
    return !d.attachments.empty() &&
           std::all_of(d.attachments.begin(), d.attachments.end(), [&](auto m) { return m == target; });
}

std::vector<VariantDescriptor> raw_variants(std::size_t base, std::size_t max_new) {
    check_base(base);
    if (max_new < 1 || max_new > 4) {
        throw ConfigError("max_new must be between 1 and 4");
    }
    const std::uint32_t top = (1u << base) - 1u;
    std::vector<VariantDescriptor> out;
    for (std::size_t k = 1; k <= max_new; ++k) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                pairs.emplace_back(i, j);
            }
        }
        std::vector<std::uint32_t> masks(k, 1u);
        while (true) {
            for (std::uint32_t pattern = 0; pattern < (1u << pairs.size()); ++pattern) {
                VariantDescriptor d{base, masks, {}};
                for (std::size_t e = 0; e < pairs.size(); ++e) {
                    if (pattern >> e & 1u) {
                        d.new_edges.push_back(pairs[e]);
                    }
                }
                out.push_back(std::move(d));
            }
            // next nondecreasing tuple
            std::size_t pos = k;
            while (pos > 0 && masks[pos - 1] == top) {
                --pos;
            }
            if (pos == 0) {
                break;
            }
            ++masks[pos - 1];
            for (std::size_t i = pos; i < k; ++i) {
                masks[i] = masks[pos - 1];
            }
        }
    }
    return out;
}

std::vector<Variant> enumerate_variants(std::size_t base, std::size_t max_new) {
    std::vector<Variant> out;
    std::unordered_set<std::string> seen;
    const auto pair = antipodal_pair(base);
    for (auto& d : raw_variants(base, max_new)) {
        Graph g = build_variant(d);
        auto key = marked_canonical_key(g, pair);
        if (!seen.insert(key).second) {
            continue;
        }
        out.push_back({std::move(d), std::move(g), pair, std::move(key)});
    }
    return out;
}

nlohmann::json record_to_json(const SearchRecord& r) {
    nlohmann::json j;
    j["key"] = r.key;
    j["descriptor"] = descriptor_to_json(r.descriptor);
    j["policy"] = r.policy;
    j["best_p"] = r.best_p;
    j["best_step"] = r.best_step;
    j["pst"] = r.pst;
    j["pst_steps"] = r.pst_steps;
    j["frac_over_lambda"] = r.frac_over_lambda;
    j["pst_all_steps"] = r.pst_all_steps;
    j["period"] = r.period ? nlohmann::json(*r.period) : nlohmann::json(nullptr);
    j["trivial"] = r.trivial;
    j["touched"] = r.touched;
    return j;
}

SearchRecord record_from_json(const nlohmann::json& j) {
    SearchRecord r;
    r.key = j.at("key").get<std::string>();
    r.descriptor = descriptor_from_json(j.at("descriptor"));
    r.policy = j.at("policy").get<std::string>();
    r.best_p = j.at("best_p").get<double>();
    r.best_step = j.at("best_step").get<std::size_t>();
    r.pst = j.at("pst").get<bool>();
    r.pst_steps = j.at("pst_steps").get<std::vector<std::size_t>>();
    r.frac_over_lambda = j.at("frac_over_lambda").get<double>();
    r.pst_all_steps = j.value("pst_all_steps", std::vector<std::size_t>{});
    if (j.contains("period") && !j["period"].is_null()) {
        r.period = j["period"].get<std::size_t>();
    }
    r.trivial = j.value("trivial", is_trivial(r.descriptor));
    r.touched = j.value("touched", touched_vertices(r.descriptor));
    return r;
}

JsonlRecordSink::JsonlRecordSink(std::filesystem::path path) : path_(std::move(path)) {
    if (std::filesystem::exists(path_)) {
        std::ifstream in(path_);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            try {
                existing_.push_back(record_from_json(nlohmann::json::parse(line)));
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(path_.string() + ":" + std::to_string(lineno) + ": malformed record (" +
                                  e.what() + ")");
            }
        }
    }
    out_.open(path_, std::ios::app);
    if (!out_) {
        throw ConfigError("cannot open record file " + path_.string());
    }
}

const SearchRecord* JsonlRecordSink::find(const std::string& key, const std::string& policy) const {
    for (const auto& r : existing_) {
        if (r.key == key && r.policy == policy) {
            return &r;
        }
    }
    return nullptr;
}

void JsonlRecordSink::append(const SearchRecord& r) {
    std::lock_guard lock(mutex_);
    out_ << record_to_json(r).dump() << '\n';
    out_.flush();
}

SearchRecord search_cell(const Variant& v, StandardPolicy policy, std::span<const CVector> samples,
                         const SearchOptions& options) {
    const StepOperator op(v.graph, CoinPolicy{policy});
    const auto scan = max_transfer_scan(op, v.pair, samples, options.max_steps, options.lambda, 1);
    const auto exact = exact_pst(op, v.pair, options.max_steps, options.pst_tol);
    SearchRecord r;
    r.key = hex_key(v.key);
    r.descriptor = v.descriptor;
    r.policy = policy_name(policy);
    r.best_p = std::min(scan.max_probability, 1.0);
    r.best_step = scan.step;
    r.pst = !exact.pst_steps.empty();
    r.pst_steps = exact.pst_steps;
    r.pst_all_steps = exact.pst_all_steps;
    r.period = exact.period;
    r.frac_over_lambda = scan.fraction_over_lambda;
    r.trivial = is_trivial(v.descriptor);
    r.touched = touched_vertices(v.descriptor);
    return r;
}

std::vector<SearchRecord> pst_search(const std::vector<Variant>& variants, const SearchOptions& options,
                                     JsonlRecordSink* sink) {
    if (options.samples == 0 || options.max_steps == 0) {
        throw ConfigError("search needs at least one sample and one step");
    }
    struct Cell {
        std::size_t variant;
        StandardPolicy policy;
    };
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < variants.size(); ++i) {
        const auto& degs = variants[i].graph.degrees();
        const bool has_deg2 = std::find(degs.begin(), degs.end(), 2u) != degs.end();
        for (auto p : options.policies) {
            if (p == StandardPolicy::O3 && options.skip_redundant_o3 && !has_deg2) {
                continue;
            }
            cells.push_back({i, p});
        }
    }
    std::map<std::size_t, std::vector<CVector>> samples;
    for (const auto& v : variants) {
        const auto d = v.graph.degree(v.pair.source);
        if (!samples.contains(d)) {
            samples.emplace(d, haar_states(d, options.samples, options.seed));
        }
    }
    std::vector<SearchRecord> records(cells.size());
    std::vector<char> done(cells.size(), 0);
    if (sink) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto& v = variants[cells[c].variant];
            if (const auto* r = sink->find(hex_key(v.key), policy_name(cells[c].policy))) {
                records[c] = *r;
                done[c] = 1;
            }
        }
    }
    std::vector<std::size_t> todo;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (!done[c]) {
            todo.push_back(c);
        }
    }
    const std::size_t chunk = std::max<std::size_t>(1, options.workers) * 4;
    for (std::size_t lo = 0; lo < todo.size(); lo += chunk) {
        const std::size_t hi = std::min(todo.size(), lo + chunk);
        parallel_for(hi - lo, options.workers, [&](std::size_t i) {
            const auto c = todo[lo + i];
            const auto& v = variants[cells[c].variant];
            records[c] = search_cell(v, cells[c].policy, samples.at(v.graph.degree(v.pair.source)), options);
        });
        if (sink) {
            for (std::size_t i = lo; i < hi; ++i) {
                sink->append(records[todo[i]]);
            }
        }
    }
    std::stable_sort(records.begin(), records.end(), [](const SearchRecord& a, const SearchRecord& b) {
        if (a.best_p != b.best_p) {
            return a.best_p > b.best_p;
        }
        if (a.key != b.key) {
            return a.key < b.key;
        }
        return a.policy < b.policy;
    });
    return records;
}

CVector family_initial_state(cplx x, cplx y) {
    if (std::abs(std::norm(x) + std::norm(y) - 1.0) > 1e-9) {
        throw ConfigError("family_initial_state needs |x|^2 + |y|^2 = 1");
    }
    CVector s(3);
    s(0) = (2.0 * y - x) / 3.0;
    s(1) = (2.0 * x - y) / 3.0;
    s(2) = 2.0 * (s(1) + s(0));
    return s;
}

VariantDescriptor source_pendant_variant(std::size_t base) {
    check_base(base);
    return {base, {1u}, {}};
}

std::string perturbation_name(PerturbationKind kind) {
    switch (kind) {
    case PerturbationKind::Amplitude:
        return "delta";
    case PerturbationKind::Phase:
        return "theta";
    case PerturbationKind::RandomAmplitude:
        return "random";
    }
    return "?";
}

PerturbationKind parse_perturbation(const std::string& name) {
    if (name == "delta" || name == "amplitude") {
        return PerturbationKind::Amplitude;
    }
    if (name == "theta" || name == "phase") {
        return PerturbationKind::Phase;
    }
    if (name == "random") {
        return PerturbationKind::RandomAmplitude;
    }
    throw ConfigError("perturbation kind must be delta, theta or random (got '" + name + "')");
}

WalkState perturbed_state(std::size_t ports, const PerturbationSpec& spec, std::uint64_t seed) {
    if (ports == 0) {
        throw ConfigError("perturbed state needs at least one port");
    }
    CVector amps = CVector::Ones(static_cast<Eigen::Index>(ports));
    const auto port = spec.port.value_or(ports - 1);
    if (port >= ports) {
        throw ConfigError("perturbed port " + std::to_string(port) + " out of range");
    }
    const auto p = static_cast<Eigen::Index>(port);
    switch (spec.kind) {
    case PerturbationKind::Amplitude:
        amps(p) = 1.0 - spec.magnitude;
        break;
    case PerturbationKind::Phase:
        amps(p) = std::polar(1.0, spec.magnitude);
        break;
    case PerturbationKind::RandomAmplitude: {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, spec.magnitude);
        for (Eigen::Index i = 0; i < amps.size(); ++i) {
            amps(i) = 1.0 - u(rng);
        }
        break;
    }
    }
    const double norm = amps.norm();
    if (norm == 0.0) {
        throw ConfigError("perturbation removes all amplitude");
    }
    return amps / norm;
}

std::vector<RobustnessRow> robustness_sweep(std::span<const std::size_t> ns,
                                            std::span<const PerturbationSpec> specs, std::size_t runs,
                                            std::uint64_t seed, std::size_t steps, std::size_t workers) {
    if (runs == 0) {
        throw ConfigError("robustness sweep needs at least one run per cell");
    }
    std::vector<RobustnessRow> rows(ns.size() * specs.size());
    std::map<std::size_t, StepOperator> ops;
    for (auto n : ns) {
        ops.emplace(n, StepOperator(build(k2_family("k2c", n)), CoinPolicy{StandardPolicy::O2}));
    }
    parallel_for(rows.size(), workers, [&](std::size_t cell) {
        const auto n = ns[cell / specs.size()];
        const auto& spec = specs[cell % specs.size()];
        const auto& op = ops.at(n);
        const auto pair = VertexPair{0, 1};
        const auto d = op.arcs().port_count(pair.source);
        const std::size_t draws = spec.kind == PerturbationKind::RandomAmplitude ? runs : 1;
        std::seed_seq seq{seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(cell % specs.size())};
        std::vector<std::uint64_t> run_seeds(draws);
        seq.generate(run_seeds.begin(), run_seeds.end());
        double total = 0.0;
        for (std::size_t r = 0; r < draws; ++r) {
            const auto amps = perturbed_state(d, spec, run_seeds[r]);
            std::vector<cplx> a(amps.data(), amps.data() + amps.size());
            WalkState psi = localized_state(op.arcs(), pair.source, a);
            for (std::size_t t = 0; t < steps; ++t) {
                psi = op.apply(psi);
            }
            total += vertex_probability(op.arcs(), psi, pair.target);
        }
        rows[cell] = {n, spec.kind, spec.magnitude, total / static_cast<double>(draws)};
    });
    return rows;
}

InterpolatedWalk interpolated_walk(const Graph& from, const Graph& to, double c) {
    const auto n = from.size();
    if (to.size() != n) {
        throw ConfigError("interpolation endpoints must have the same vertex count");
    }
    if (!from.unweighted() || !to.unweighted()) {
        throw ConfigError("interpolation endpoints must be unweighted");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (from.weight(i, j) != 0.0 && to.weight(i, j) == 0.0) {
                throw ConfigError("interpolation endpoints mismatch: edge (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") is only in the first graph");
            }
            if (i == j && from.weight(i, i) != to.weight(i, i)) {
                throw ConfigError("interpolation endpoints mismatch: self loops differ at vertex " +
                                  std::to_string(i));
            }
        }
    }
    if (!(c >= 0.0 && c <= 1.0)) {
        throw ConfigError("interpolation coupling c must lie in [0, 1]");
    }
    const ArcSpace arcs(to);
    ExplicitPolicy policy;
    policy.fallback = StandardPolicy::O2;
    for (Vertex v = 0; v < n; ++v) {
        std::vector<std::size_t> tunnel;
        for (Vertex w : to.neighbors(v)) {
            if (from.weight(v, w) == 0.0) {
                tunnel.push_back(*arcs.port_towards(v, w));
            }
        }
        if (!tunnel.empty()) {
            InterpGroverCoin coin;
            coin.d = arcs.port_count(v);
            coin.t = tunnel.size();
            coin.c = c;
            coin.tunnel_ports = std::move(tunnel);
            policy.coins.emplace(v, coin);
        }
    }
    Matrix w = from.adjacency() + c * (to.adjacency() - from.adjacency());
    return {to, Graph(w), std::move(policy)};
}

double interpolation_probability(const Graph& from, const Graph& to, double c, VertexPair pair,
                                 std::size_t steps) {
    const auto walk = interpolated_walk(from, to, c);
    const StepOperator op(walk.structure, CoinPolicy{walk.policy});
    WalkState psi = equal_superposition(op.arcs(), pair.source);
    for (std::size_t t = 0; t < steps; ++t) {
        psi = op.apply(psi);
    }
    return vertex_probability(op.arcs(), psi, pair.target);
}

FamilySpec k2_family(const std::string& kind, std::size_t n) {
    FamilySpec right;
    if (kind == "k2k") {
        right = {Edgeless{n}};
    } else if (kind == "k2p") {
        right = {Path{n}};
    } else if (kind == "k2c") {
        right = {Cycle{n}};
    } else {
        throw ConfigError("interpolation endpoint must be k2k, k2p or k2c (got '" + kind + "')");
    }
    return join_of(FamilySpec{Edgeless{2}}, std::move(right));
}

std::vector<InterpolationRow> interpolation_sweep(const std::string& from_kind, const std::string& to_kind,
                                                  std::span<const double> cs, std::span<const std::size_t> ns,
                                                  std::size_t steps, std::size_t workers) {
    std::vector<std::pair<Graph, Graph>> endpoints;
    for (auto n : ns) {
        endpoints.emplace_back(build(k2_family(from_kind, n)), build(k2_family(to_kind, n)));
        // validates the pair before any work is scheduled
        (void)interpolated_walk(endpoints.back().first, endpoints.back().second, 0.0);
    }
    std::vector<InterpolationRow> rows(ns.size() * cs.size());
    parallel_for(rows.size(), workers, [&](std::size_t cell) {
        const auto i = cell / cs.size();
        const double c = cs[cell % cs.size()];
        const auto& [from, to] = endpoints[i];
        rows[cell] = {ns[i], c, interpolation_probability(from, to, c, {0, 1}, steps)};
    });
    return rows;
}

} // namespace qw
