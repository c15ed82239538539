#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwalk/qwalk.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitConfig = 1;

struct Field {
    const char* key;
    const char* help;
    bool is_flag = false;
};

const std::map<std::string, std::pair<std::string, std::vector<Field>>>& commands() {
    static const Field graph{"graph", "graph: family string (\"cycle n=8\", \"join k2c n=5\"), JSON, or @file"};
    static const Field policy{"policy", "coin policy: O1, O2, O3, table1:<row>, or JSON {\"<v>\": coin, \"default\": ...}"};
    static const Field init{"init", "source coin state: equal, haar:<count>:<seed>, or [[port, re, im], ...]"};
    static const Field pair{"pair", "source and target vertices, e.g. 0,4"};
    static const Field seed{"seed", "random seed (falls back to QWALK_SEED, then 1)"};
    static const Field workers{"workers", "worker threads (results do not depend on it)"};
    static const Field lambda{"lambda", "high-amplitude threshold"};
    static const Field pst_tol{"pst_tol", "tolerance for perfect transfer"};
    static const Field track{"track", "vertices written to the series CSV, e.g. 0,1,2 or 0..5"};
    static const std::map<std::string, std::pair<std::string, std::vector<Field>>> table{
        {"graph", {"build a graph and print its JSON", {graph}}},
        {"dtqw",
         {"coined discrete-time walk and transfer detection",
          {graph, policy, init, pair, {"steps", "number of steps"}, lambda, pst_tol, track, seed, workers}}},
        {"ctqw",
         {"continuous-time walk and transfer detection",
          {graph, pair, {"time", "end time"}, {"dt", "sampling interval"}, lambda, pst_tol, track,
           {"spectrum", "also write spectrum.json", true}, seed, workers}}},
        {"decohere",
         {"target probability under dephasing noise",
          {graph,
           {"mode", "discrete or continuous"},
           policy,
           init,
           pair,
           {"basis", "coin, position or both"},
           {"rates", "noise rates: list or lo:hi:count"},
           {"steps", "number of discrete steps"},
           {"time", "continuous evolution time"},
           {"dt", "continuous integrator step"},
           seed,
           workers}}},
        {"search",
         {"search cycle variants for state transfer",
          {{"base", "even cycle length"},
           {"max_new", "largest number of added nodes"},
           {"policies", "coin policies, e.g. O1,O2,O3"},
           {"samples", "random source states per cell"},
           {"steps", "number of steps"},
           lambda,
           pst_tol,
           {"records", "JSON-lines record file (resumed if present)"},
           {"pst_only", "show only records with perfect transfer", true},
           {"min_prob", "hide records below this best probability"},
           seed,
           workers}}},
        {"robust",
         {"perturbed initial states on K2bar + Cn",
          {{"ns", "cycle sizes, e.g. 3..12"},
           {"kind", "delta, theta or random"},
           {"magnitudes", "perturbation sizes: list or lo:hi:count"},
           {"runs", "draws per random cell"},
           {"steps", "number of steps"},
           {"port", "perturbed source port (default last)"},
           seed,
           workers}}},
        {"interp",
         {"interpolating coins between two K2bar joins",
          {{"from", "k2k, k2p or k2c"},
           {"to", "k2k, k2p or k2c"},
           {"cs", "interpolation parameters: list or lo:hi:count"},
           {"ns", "sizes of the joined graph"},
           {"steps", "number of steps"},
           seed,
           workers}}},
    };
    return table;
}

std::string flag_name(const std::string& key) {
    std::string s = key;
    for (auto& c : s) {
        if (c == '_') {
            c = '-';
        }
    }
    return "--" + s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read '" + path + "'");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Flag text becomes JSON when it parses as JSON, a string otherwise;
// @path reads JSON from a file.
json flag_value(const std::string& text) {
    if (!text.empty() && text.front() == '@') {
        return json::parse(read_file(text.substr(1)));
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error&) {
        return text;
    }
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
}

int run(const std::string& name, json config, const std::string& out_dir, bool out_dir_set) {
    if (!config.contains("seed")) {
        if (const char* env = std::getenv("QWALK_SEED"); env != nullptr && *env != '\0') {
            try {
                std::size_t used = 0;
                const auto v = std::stoull(env, &used);
                if (used != std::strlen(env)) {
                    throw std::invalid_argument(env);
                }
                config["seed"] = v;
            } catch (const std::exception&) {
                std::cerr << "qwalk: error: QWALK_SEED='" << env << "' is not a nonnegative integer\n";
                return kExitConfig;
            }
        }
    }
    if (name == "search" && !config.contains("records")) {
        config["records"] = (fs::path(out_dir) / "records.jsonl").string();
    }
    if (name != "graph" || out_dir_set) {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec) {
            std::cerr << "qwalk: error: cannot create '" << out_dir << "': " << ec.message() << '\n';
            return kExitConfig;
        }
    }
    qw_result* result = nullptr;
    const auto status = qw_run(name.c_str(), config.dump().c_str(), &result);
    if (status != QW_OK) {
        std::cerr << "qwalk " << name << ": error: " << qw_last_error() << '\n';
        return static_cast<int>(status);
    }
    try {
        for (size_t i = 0; i < qw_result_artifact_count(result); ++i) {
            const std::string file = qw_result_artifact_name(result, i);
            if (name == "graph") {
                std::cout << qw_result_artifact_data(result, i);
                if (!out_dir_set) {
                    continue;
                }
            }
            write_file(fs::path(out_dir) / file, qw_result_artifact_data(result, i));
        }
        if (name != "graph") {
            std::cout << json::parse(qw_result_summary(result)).dump(2) << '\n';
        }
    } catch (const std::exception& e) {
        qw_result_free(result);
        std::cerr << "qwalk " << name << ": error: " << e.what() << '\n';
        return kExitConfig;
    }
    qw_result_free(result);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum walk state-transfer toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qw_version());

    struct Bound {
        CLI::App* sub;
        std::map<std::string, std::string> values;
        std::map<std::string, bool> flags;
        std::string config_path;
        std::string out_dir = ".";
    };
    std::map<std::string, Bound> bound;
    for (const auto& [name, entry] : commands()) {
        auto& b = bound[name];
        b.sub = app.add_subcommand(name, entry.first);
        b.sub->add_option("--config", b.config_path, "JSON config file; flags override its fields");
        b.sub->add_option("--out-dir", b.out_dir, "directory for output files")->capture_default_str();
        for (const auto& f : entry.second) {
            if (f.is_flag) {
                b.sub->add_flag(flag_name(f.key), b.flags[f.key], f.help);
            } else {
                b.sub->add_option(flag_name(f.key), b.values[f.key], f.help);
            }
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    for (auto& [name, b] : bound) {
        if (!b.sub->parsed()) {
            continue;
        }
        json config = json::object();
        try {
            if (!b.config_path.empty()) {
                config = json::parse(read_file(b.config_path));
                if (!config.is_object()) {
                    throw std::runtime_error("config file must hold a JSON object");
                }
            }
            for (const auto& [key, text] : b.values) {
                if (b.sub->count(flag_name(key)) > 0) {
                    config[key] = flag_value(text);
                }
            }
            for (const auto& [key, on] : b.flags) {
                if (b.sub->count(flag_name(key)) > 0) {
                    config[key] = on;
                }
            }
        } catch (const std::exception& e) {
            std::cerr << "qwalk " << name << ": error: " << e.what() << '\n';
            return kExitConfig;
        }
        return run(name, config, b.out_dir, b.sub->count("--out-dir") > 0);
    }
    return kExitConfig;
}
