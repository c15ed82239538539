#include "qwalk/workflows.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "qwalk/config.hpp"
#include "qwalk/ctqw.hpp"
#include "qwalk/decoherence.hpp"
#include "qwalk/explorer.hpp"
#include "qwalk/parallel.hpp"

namespace qw {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::json opt_json(const std::optional<std::size_t>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json opt_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string csv_series(const std::string& axis, const std::vector<Vertex>& tracked,
                       const std::vector<double>& axis_values, const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    out << axis;
    for (Vertex v : tracked) {
        out << ",v" << v;
    }
    out << '\n';
    for (std::size_t k = 0; k < rows.size(); ++k) {
        out << num(axis_values[k]);
        for (double p : rows[k]) {
            out << ',' << num(p);
        }
        out << '\n';
    }
    return out.str();
}

const std::set<std::string> kCommon{"graph", "seed", "workers"};

std::set<std::string> keys(std::initializer_list<const char*> extra) {
    std::set<std::string> s(kCommon);
    for (const auto* k : extra) {
        s.insert(k);
    }
    return s;
}

struct Common {
    std::optional<Graph> graph;
    std::uint64_t seed = kDefaultSeed;
    std::size_t workers = 1;
};

Common read_common(ConfigReader& r, bool need_graph) {
    Common c;
    c.seed = r.get<std::uint64_t>("seed", kDefaultSeed);
    c.workers = r.get<std::size_t>("workers", default_workers());
    r.require(c.workers >= 1, "field 'workers' must be at least 1");
    if (const auto* g = r.raw("graph")) {
        c.graph = r.parse<Graph>("graph", [&] { return graph_from_config(*g); });
    } else if (need_graph) {
        r.error("field 'graph' is required");
    }
    return c;
}

std::optional<VertexPair> read_pair(ConfigReader& r, const std::optional<Graph>& g, VertexPair fallback) {
    VertexPair pair = fallback;
    if (const auto* p = r.raw("pair")) {
        auto parsed = r.parse<std::vector<std::size_t>>("pair", [&] { return parse_index_list(*p); });
        if (!parsed) {
            return std::nullopt;
        }
        if (parsed->size() != 2) {
            r.error("field 'pair' must name a source and a target");
            return std::nullopt;
        }
        pair = {(*parsed)[0], (*parsed)[1]};
    }
    if (g && (pair.source >= g->size() || pair.target >= g->size())) {
        r.error("field 'pair': vertex out of range for a graph with " + std::to_string(g->size()) + " vertices");
        return std::nullopt;
    }
    return pair;
}

std::vector<Vertex> read_track(ConfigReader& r, const std::optional<Graph>& g) {
    if (const auto* t = r.raw("track")) {
        auto v = r.parse<std::vector<std::size_t>>("track", [&] { return parse_index_list(*t); });
        if (v && g) {
            for (auto x : *v) {
                r.require(x < g->size(), "field 'track': vertex " + std::to_string(x) + " out of range");
            }
        }
        return v.value_or(std::vector<Vertex>{});
    }
    return {};
}

RunResult cmd_graph(const nlohmann::json& config) {
    ConfigReader r(config, keys({}));
    auto c = read_common(r, true);
    r.finish();
    const auto j = graph_to_json(*c.graph);
    RunResult out;
    out.summary = j;
    out.summary["degrees"] = c.graph->degrees();
    out.artifacts.push_back({"graph.json", j.dump() + "\n"});
    return out;
}

nlohmann::json report_json(const TransferReport& rep) {
    return {{"pst_steps", rep.pst_steps},
            {"period", opt_json(rep.period)},
            {"positional_period", opt_json(rep.positional_period)},
            {"max_probability", rep.max_probability},
            {"max_step", rep.max_step},
            {"high_amplitude", rep.high_amplitude},
            {"norm_drift", rep.norm_drift}};
}

RunResult cmd_dtqw(const nlohmann::json& config) {
    ConfigReader r(config, keys({"policy", "init", "pair", "steps", "lambda", "pst_tol", "track"}));
    auto c = read_common(r, true);
    auto policy = r.parse<CoinPolicy>("policy", [&] {
        return parse_policy(r.raw("policy") ? *r.raw("policy") : nlohmann::json("O2"), c.seed);
    });
    auto init = r.parse<InitSpec>("init", [&] {
        return parse_init(r.raw("init") ? *r.raw("init") : nlohmann::json("equal"), c.seed);
    });
    const auto pair = read_pair(r, c.graph, {0, 1});
    TransferOptions opt;
    opt.max_steps = r.get<std::size_t>("steps", 100);
    opt.lambda = r.get<double>("lambda", kDefaultLambda);
    opt.pst_tol = r.get<double>("pst_tol", kDefaultPstTol);
    opt.tracked = read_track(r, c.graph);
    r.require(opt.max_steps >= 1, "field 'steps' must be at least 1");
    r.require(opt.lambda > 0.0 && opt.lambda <= 1.0, "field 'lambda' must lie in (0, 1]");
    r.require(opt.pst_tol > 0.0 && opt.pst_tol < 1.0, "field 'pst_tol' must lie in (0, 1)");
    std::optional<StepOperator> op;
    if (c.graph && policy) {
        op = r.parse<StepOperator>("policy", [&] { return StepOperator(*c.graph, *policy); });
    }
    std::vector<CVector> sources;
    if (op && init && pair) {
        sources = r.parse<std::vector<CVector>>("init", [&] {
            return source_states(*init, op->arcs().port_count(pair->source));
        }).value_or(std::vector<CVector>{});
    }
    r.finish();

    std::vector<TransferReport> reports(sources.size());
    parallel_for(sources.size(), c.workers, [&](std::size_t i) {
        std::vector<cplx> amps(sources[i].data(), sources[i].data() + sources[i].size());
        reports[i] = detect_transfer(*op, localized_state(op->arcs(), pair->source, amps), *pair, opt);
    });
    double drift = 0.0;
    for (const auto& rep : reports) {
        drift = std::max(drift, rep.norm_drift);
    }
    if (drift > 1e-9) {
        throw NumericalError("norm drifted by " + num(drift) + " during the walk");
    }
    const auto& first = reports.front();
    std::vector<std::vector<double>> series = first.probabilities;
    if (reports.size() > 1) {
        for (std::size_t i = 1; i < reports.size(); ++i) {
            for (std::size_t k = 0; k < series.size(); ++k) {
                for (std::size_t v = 0; v < series[k].size(); ++v) {
                    series[k][v] += reports[i].probabilities[k][v];
                }
            }
        }
        for (auto& row : series) {
            for (auto& p : row) {
                p /= static_cast<double>(reports.size());
            }
        }
    }
    std::vector<double> steps(series.size());
    for (std::size_t k = 0; k < steps.size(); ++k) {
        steps[k] = static_cast<double>(k);
    }
    nlohmann::json report = {{"command", "dtqw"},
                             {"vertices", c.graph->size()},
                             {"arcs", op->arcs().arc_count()},
                             {"policy", policy_name(*policy)},
                             {"pair", {pair->source, pair->target}},
                             {"steps", opt.max_steps},
                             {"lambda", opt.lambda},
                             {"pst_tol", opt.pst_tol},
                             {"samples", reports.size()}};
    if (reports.size() == 1) {
        report.update(report_json(first));
    } else {
        nlohmann::json per = nlohmann::json::array();
        double best = 0.0;
        std::size_t best_step = 0;
        std::size_t over = 0;
        for (const auto& rep : reports) {
            per.push_back(report_json(rep));
            if (rep.max_probability > best) {
                best = rep.max_probability;
                best_step = rep.max_step;
            }
            over += rep.max_probability > opt.lambda ? 1 : 0;
        }
        report["max_probability"] = best;
        report["max_step"] = best_step;
        report["frac_over_lambda"] = static_cast<double>(over) / static_cast<double>(reports.size());
        report["runs"] = per;
    }
    RunResult out;
    out.summary = report;
    out.artifacts.push_back({"series.csv", csv_series("step", first.tracked, steps, series)});
    out.artifacts.push_back({"report.json", report.dump(2) + "\n"});
    return out;
}

RunResult cmd_ctqw(const nlohmann::json& config) {
    ConfigReader r(config, keys({"pair", "time", "dt", "lambda", "pst_tol", "track", "spectrum"}));
    auto c = read_common(r, true);
    const auto pair = read_pair(r, c.graph, {0, 1});
    CtTransferOptions opt;
    opt.t_max = r.get<double>("time", 10.0);
    opt.dt = r.get<double>("dt", 0.01);
    opt.lambda = r.get<double>("lambda", kDefaultLambda);
    opt.pst_tol = r.get<double>("pst_tol", kDefaultPstTol);
    opt.tracked = read_track(r, c.graph);
    const bool want_spectrum = r.get<bool>("spectrum", false);
    r.require(opt.t_max > 0.0, "field 'time' must be positive");
    r.require(opt.dt > 0.0, "field 'dt' must be positive");
    r.require(opt.lambda > 0.0 && opt.lambda <= 1.0, "field 'lambda' must lie in (0, 1]");
    r.require(opt.pst_tol > 0.0 && opt.pst_tol < 1.0, "field 'pst_tol' must lie in (0, 1)");
    r.require(opt.t_max / std::max(opt.dt, 1e-300) <= 1e7, "time/dt exceeds 1e7 samples");
    r.finish();

    const auto rep = detect_transfer_ct(*c.graph, *pair, opt);
    const auto s = spectrum(*c.graph);
    if (s.reconstruction_error(*c.graph) > 1e-10) {
        throw NumericalError("spectral reconstruction error " + num(s.reconstruction_error(*c.graph)));
    }
    nlohmann::json peaks = nlohmann::json::array();
    for (const auto& p : rep.peaks) {
        peaks.push_back({{"t", p.t}, {"probability", p.probability}});
    }
    nlohmann::json report = {{"command", "ctqw"},
                             {"vertices", c.graph->size()},
                             {"pair", {pair->source, pair->target}},
                             {"time", opt.t_max},
                             {"dt", opt.dt},
                             {"lambda", opt.lambda},
                             {"pst_tol", opt.pst_tol},
                             {"pst_times", rep.pst_times},
                             {"period", opt_json(rep.period)},
                             {"max_probability", rep.max_probability},
                             {"max_time", rep.max_time},
                             {"high_amplitude", rep.high_amplitude},
                             {"peaks", peaks}};
    RunResult out;
    out.summary = report;
    out.artifacts.push_back({"series.csv", csv_series("t", rep.tracked, rep.times, rep.probabilities)});
    out.artifacts.push_back({"report.json", report.dump(2) + "\n"});
    if (want_spectrum) {
        out.artifacts.push_back({"spectrum.json", spectrum_to_json(s).dump(2) + "\n"});
    }
    return out;
}

RunResult cmd_decohere(const nlohmann::json& config) {
    ConfigReader r(config, keys({"mode", "policy", "init", "pair", "basis", "rates", "steps", "time", "dt"}));
    auto c = read_common(r, true);
    const auto mode = r.get<std::string>("mode", "discrete");
    r.require(mode == "discrete" || mode == "continuous", "field 'mode' must be discrete or continuous");
    const auto pair = read_pair(r, c.graph, {0, 1});
    auto basis = r.parse<NoiseBasis>("basis", [&] {
        return parse_noise_basis(r.get<std::string>("basis", mode == "discrete" ? "both" : "position"));
    });
    auto rates = r.parse<std::vector<double>>("rates", [&] {
        return parse_grid(r.raw("rates") ? *r.raw("rates") : nlohmann::json::array({0.0}));
    });
    if (rates) {
        for (double p : *rates) {
            r.require(p >= 0.0 && (mode != "discrete" || p <= 1.0),
                      "field 'rates': " + num(p) + " is outside the allowed range");
        }
    }
    const auto steps = r.get<std::size_t>("steps", 6);
    const double dt = r.get<double>("dt", 1e-3);
    r.require(dt > 0.0, "field 'dt' must be positive");
    std::optional<StepOperator> op;
    std::optional<CVector> source;
    std::optional<CoinPolicy> policy;
    if (mode == "discrete") {
        r.require(!r.has("time"), "field 'time' applies to continuous mode only");
        policy = r.parse<CoinPolicy>("policy", [&] {
            return parse_policy(r.raw("policy") ? *r.raw("policy") : nlohmann::json("O2"), c.seed);
        });
        auto init = r.parse<InitSpec>("init", [&] {
            return parse_init(r.raw("init") ? *r.raw("init") : nlohmann::json("equal"), c.seed);
        });
        if (c.graph && policy) {
            op = r.parse<StepOperator>("policy", [&] { return StepOperator(*c.graph, *policy); });
        }
        if (op && init && pair) {
            auto states = r.parse<std::vector<CVector>>("init", [&] {
                return source_states(*init, op->arcs().port_count(pair->source));
            });
            if (states) {
                r.require(states->size() == 1, "field 'init': decoherence runs take a single initial state");
                source = states->front();
            }
        }
    } else {
        r.require(r.has("time"), "continuous mode needs field 'time'");
        r.require(!r.has("policy") && !r.has("init"), "continuous mode starts at the source vertex and takes no coin");
        r.require(basis != NoiseBasis::Coin, "continuous walks have no coin basis");
    }
    const double time = r.get<double>("time", 0.0);
    r.require(time >= 0.0, "field 'time' must be nonnegative");
    r.finish();

    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream csv;
    csv << "p,probability\n";
    nlohmann::json report = {{"command", "decohere"},
                             {"mode", mode},
                             {"basis", noise_basis_name(*basis)},
                             {"pair", {pair->source, pair->target}}};
    if (mode == "discrete") {
        std::vector<cplx> amps(source->data(), source->data() + source->size());
        const WalkState psi = localized_state(op->arcs(), pair->source, amps);
        const auto& arcs = op->arcs();
        std::vector<std::vector<double>> finals(rates->size());
        std::vector<double> drift(rates->size(), 0.0);
        parallel_for(rates->size(), c.workers, [&](std::size_t i) {
            DensityMatrix rho = pure_density(psi);
            for (std::size_t t = 0; t < steps; ++t) {
                rho = decohere_step(rho, *op, {*basis, (*rates)[i]});
                drift[i] = std::max(drift[i], std::abs(rho.trace() - cplx(1.0)));
            }
            finals[i] = vertex_marginals(arcs, rho);
        });
        for (std::size_t i = 0; i < rates->size(); ++i) {
            if (drift[i] > 1e-10) {
                throw NumericalError("trace drifted by " + num(drift[i]) + " at p = " + num((*rates)[i]));
            }
            rows.push_back({{"p", (*rates)[i]}, {"probability", finals[i][pair->target]}, {"distribution", finals[i]}});
            csv << num((*rates)[i]) << ',' << num(finals[i][pair->target]) << '\n';
        }
        report["steps"] = steps;
        report["policy"] = policy_name(*policy);
        report["classical"] = classical_walk(*c.graph, vertex_distribution(arcs, psi), steps);
    } else {
        std::vector<CtDecoherence> runs(rates->size());
        CVector psi = basis_state(c.graph->size(), pair->source);
        parallel_for(rates->size(), c.workers, [&](std::size_t i) {
            runs[i] = decohere_ct_detailed(*c.graph, pure_density(psi), {*basis, (*rates)[i]}, time, dt);
        });
        for (std::size_t i = 0; i < rates->size(); ++i) {
            std::vector<double> dist(c.graph->size());
            for (std::size_t v = 0; v < dist.size(); ++v) {
                dist[v] = runs[i].rho(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)).real();
            }
            rows.push_back({{"p", (*rates)[i]},
                            {"probability", dist[pair->target]},
                            {"distribution", dist},
                            {"dt", runs[i].dt},
                            {"trace_drift", runs[i].trace_drift}});
            csv << num((*rates)[i]) << ',' << num(dist[pair->target]) << '\n';
        }
        report["time"] = time;
    }
    report["rows"] = rows;
    RunResult out;
    out.summary = report;
    out.artifacts.push_back({"rates.csv", csv.str()});
    out.artifacts.push_back({"report.json", report.dump(2) + "\n"});
    return out;
}

RunResult cmd_search(const nlohmann::json& config) {
    ConfigReader r(config, {"seed", "workers", "base", "max_new", "policies", "samples", "steps", "lambda",
                            "pst_tol", "records", "pst_only", "min_prob"});
    auto c = read_common(r, false);
    SearchOptions opt;
    const auto base = r.get<std::size_t>("base", 4);
    const auto max_new = r.get<std::size_t>("max_new", 1);
    r.require(base >= 4 && base % 2 == 0 && base <= 30, "field 'base' must be even and in [4, 30]");
    r.require(max_new >= 1 && max_new <= 4, "field 'max_new' must be between 1 and 4");
    opt.samples = r.get<std::size_t>("samples", 1500);
    opt.max_steps = r.get<std::size_t>("steps", 100);
    opt.lambda = r.get<double>("lambda", kDefaultLambda);
    opt.pst_tol = r.get<double>("pst_tol", kDefaultPstTol);
    opt.seed = c.seed;
    opt.workers = c.workers;
    r.require(opt.samples >= 1, "field 'samples' must be at least 1");
    r.require(opt.max_steps >= 1, "field 'steps' must be at least 1");
    r.require(opt.lambda > 0.0 && opt.lambda <= 1.0, "field 'lambda' must lie in (0, 1]");
    if (const auto* p = r.raw("policies")) {
        auto parsed = r.parse<std::vector<StandardPolicy>>("policies", [&] {
            std::vector<StandardPolicy> out;
            std::vector<std::string> names;
            if (p->is_string()) {
                std::stringstream in(p->get<std::string>());
                for (std::string s; std::getline(in, s, ',');) {
                    names.push_back(s);
                }
            } else {
                names = p->get<std::vector<std::string>>();
            }
            for (const auto& n : names) {
                auto pol = parse_policy(nlohmann::json(n));
                if (!std::holds_alternative<StandardPolicy>(pol)) {
                    throw ConfigError("search policies must be O1, O2 or O3");
                }
                out.push_back(std::get<StandardPolicy>(pol));
            }
            if (out.empty()) {
                throw ConfigError("at least one policy is required");
            }
            return out;
        });
        if (parsed) {
            opt.policies = *parsed;
        }
    }
    const auto records_path = r.get<std::string>("records", "records.jsonl");
    const bool pst_only = r.get<bool>("pst_only", false);
    const double min_prob = r.get<double>("min_prob", 0.0);
    r.finish();

    const auto variants = enumerate_variants(base, max_new);
    JsonlRecordSink sink(records_path);
    const auto records = pst_search(variants, opt, &sink);
    nlohmann::json shown = nlohmann::json::array();
    std::size_t pst_count = 0;
    for (const auto& rec : records) {
        pst_count += rec.pst ? 1 : 0;
        if ((pst_only && !rec.pst) || rec.best_p < min_prob) {
            continue;
        }
        shown.push_back(record_to_json(rec));
    }
    nlohmann::json summary = {{"command", "search"},
                              {"base", base},
                              {"max_new", max_new},
                              {"raw_variants", raw_variants(base, max_new).size()},
                              {"variants", variants.size()},
                              {"records", records.size()},
                              {"pst_records", pst_count},
                              {"records_file", records_path},
                              {"shown", shown}};
    RunResult out;
    out.summary = summary;
    out.artifacts.push_back({"search.json", summary.dump(2) + "\n"});
    return out;
}

RunResult cmd_robust(const nlohmann::json& config) {
    ConfigReader r(config, {"seed", "workers", "ns", "kind", "magnitudes", "runs", "steps", "port"});
    auto c = read_common(r, false);
    auto ns = r.parse<std::vector<std::size_t>>("ns", [&] {
        return parse_index_list(r.raw("ns") ? *r.raw("ns") : nlohmann::json("3..12"));
    });
    if (ns) {
        for (auto n : *ns) {
            r.require(n >= 3, "field 'ns': cycle size " + std::to_string(n) + " is below 3");
        }
    }
    auto kind = r.parse<PerturbationKind>("kind", [&] { return parse_perturbation(r.get<std::string>("kind", "theta")); });
    std::optional<std::vector<double>> mags;
    if (kind) {
        const nlohmann::json fallback = *kind == PerturbationKind::Phase  ? nlohmann::json("0:" + num(std::numbers::pi) + ":33")
                                        : *kind == PerturbationKind::Amplitude ? nlohmann::json("0:2:21")
                                                                               : nlohmann::json::array({1.0});
        mags = r.parse<std::vector<double>>("magnitudes", [&] {
            return parse_grid(r.raw("magnitudes") ? *r.raw("magnitudes") : fallback);
        });
    }
    const auto runs = r.get<std::size_t>("runs", 1000);
    const auto steps = r.get<std::size_t>("steps", 6);
    std::optional<std::size_t> port;
    if (r.has("port")) {
        port = r.get<std::size_t>("port", 0);
    }
    r.require(runs >= 1, "field 'runs' must be at least 1");
    r.finish();

    std::vector<PerturbationSpec> specs;
    for (double m : *mags) {
        specs.push_back({*kind, m, port});
    }
    for (auto n : *ns) {
        if (port && *port >= n) {
            throw ConfigError("field 'port': the source of K2bar+C" + std::to_string(n) + " has " +
                              std::to_string(n) + " ports");
        }
    }
    const auto rows = robustness_sweep(*ns, specs, runs, c.seed, steps, c.workers);
    std::ostringstream csv;
    csv << "n,kind,magnitude,probability\n";
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& row : rows) {
        csv << row.n << ',' << perturbation_name(row.kind) << ',' << num(row.magnitude) << ',' << num(row.probability) << '\n';
        jrows.push_back({{"n", row.n}, {"kind", perturbation_name(row.kind)}, {"magnitude", row.magnitude}, {"probability", row.probability}});
    }
    RunResult out;
    out.summary = {{"command", "robust"}, {"steps", steps}, {"runs", runs}, {"rows", jrows}};
    out.artifacts.push_back({"robust.csv", csv.str()});
    return out;
}

RunResult cmd_interp(const nlohmann::json& config) {
    ConfigReader r(config, {"seed", "workers", "from", "to", "cs", "ns", "steps"});
    auto c = read_common(r, false);
    const auto from = r.get<std::string>("from", "k2k");
    const auto to = r.get<std::string>("to", "k2c");
    auto cs = r.parse<std::vector<double>>("cs", [&] {
        return parse_grid(r.raw("cs") ? *r.raw("cs") : nlohmann::json("0:1:21"));
    });
    if (cs) {
        for (double x : *cs) {
            r.require(x >= 0.0 && x <= 1.0, "field 'cs': " + num(x) + " is outside [0, 1]");
        }
    }
    auto ns = r.parse<std::vector<std::size_t>>("ns", [&] {
        return parse_index_list(r.raw("ns") ? *r.raw("ns") : nlohmann::json::array({3, 6}));
    });
    const auto steps = r.get<std::size_t>("steps", 6);
    if (ns) {
        for (auto n : *ns) {
            r.parse<int>("ns", [&] {
                (void)interpolated_walk(build(k2_family(from, n)), build(k2_family(to, n)), 0.0);
                return 0;
            });
        }
    }
    r.finish();

    const auto rows = interpolation_sweep(from, to, *cs, *ns, steps, c.workers);
    std::ostringstream csv;
    csv << "n,c,probability\n";
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& row : rows) {
        csv << row.n << ',' << num(row.c) << ',' << num(row.probability) << '\n';
        jrows.push_back({{"n", row.n}, {"c", row.c}, {"probability", row.probability}});
    }
    RunResult out;
    out.summary = {{"command", "interp"}, {"from", from}, {"to", to}, {"steps", steps}, {"rows", jrows}};
    out.artifacts.push_back({"interp.csv", csv.str()});
    return out;
}

} // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"graph", "dtqw", "ctqw", "decohere", "search", "robust", "interp"};
    return names;
}

RunResult run_command(const std::string& command, const nlohmann::json& config) {
    if (command == "graph") {
        return cmd_graph(config);
    }
    if (command == "dtqw") {
        return cmd_dtqw(config);
    }
    if (command == "ctqw") {
        return cmd_ctqw(config);
    }
    if (command == "decohere") {
        return cmd_decohere(config);
    }
    if (command == "search") {
        return cmd_search(config);
    }
    if (command == "robust") {
        return cmd_robust(config);
    }
    if (command == "interp") {
        return cmd_interp(config);
    }
    throw ConfigError("unknown command '" + command + "'");
}

} // namespace qw
