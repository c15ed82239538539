#include "qwalk/qwalk.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <string>

#include "qwalk/config.hpp"
#include "qwalk/dtqw.hpp"
#include "qwalk/workflows.hpp"

struct qw_graph {
    qw::Graph graph;
};

struct qw_walk {
    qw::StepOperator op;
    qw::WalkState state;
};

struct qw_result {
    std::string summary;
    std::vector<qw::Artifact> artifacts;
};

namespace {

thread_local std::string g_last_error;

template <class Fn>
qw_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return QW_OK;
    } catch (const qw::ConfigError& e) {
        g_last_error = e.what();
        return QW_ERR_CONFIG;
    } catch (const nlohmann::json::exception& e) {
        g_last_error = e.what();
        return QW_ERR_CONFIG;
    } catch (const qw::NumericalError& e) {
        g_last_error = e.what();
        return QW_ERR_NUMERICAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QW_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return QW_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (p == nullptr) {
        throw qw::ConfigError(std::string(what) + " is null");
    }
}

char* dup(const std::string& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

nlohmann::json parse_json(const char* text, const char* what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw qw::ConfigError(std::string(what) + ": " + e.what());
    }
}

} // namespace

extern "C" {

const char* qw_last_error(void) { return g_last_error.c_str(); }

const char* qw_version(void) { return "0.1.0"; }

void qw_string_free(char* s) { std::free(s); }

qw_status qw_graph_from_spec(const char* spec, qw_graph** out) {
    return guarded([&] {
        need(spec, "spec");
        need(out, "out");
        const std::string s(spec);
        const auto j = !s.empty() && s.front() == '{' ? parse_json(spec, "graph spec") : nlohmann::json(s);
        *out = new qw_graph{qw::graph_from_config(j)};
    });
}

qw_status qw_graph_from_json(const char* json, qw_graph** out) {
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        *out = new qw_graph{qw::graph_from_json(parse_json(json, "graph JSON"))};
    });
}

qw_status qw_graph_to_json(const qw_graph* g, char** out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        *out = dup(qw::graph_to_json(g->graph).dump());
    });
}

qw_status qw_graph_join(const qw_graph* a, const qw_graph* b, qw_graph** out) {
    return guarded([&] {
        need(a, "graph a");
        need(b, "graph b");
        need(out, "out");
        *out = new qw_graph{qw::join(a->graph, b->graph)};
    });
}

qw_status qw_graph_complement(const qw_graph* g, qw_graph** out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        *out = new qw_graph{qw::complement(g->graph)};
    });
}

size_t qw_graph_vertex_count(const qw_graph* g) { return g == nullptr ? 0 : g->graph.size(); }

qw_status qw_graph_degree(const qw_graph* g, size_t v, size_t* out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        if (v >= g->graph.size()) {
            throw qw::ConfigError("vertex " + std::to_string(v) + " out of range");
        }
        *out = g->graph.degree(v);
    });
}

qw_status qw_graph_canonical_key(const qw_graph* g, char** out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        *out = dup(qw::hex_key(qw::canonical_key(g->graph)));
    });
}

void qw_graph_free(qw_graph* g) { delete g; }

qw_status qw_walk_create(const qw_graph* g, const char* policy, uint64_t seed, qw_walk** out) {
    return guarded([&] {
        need(g, "graph");
        need(policy, "policy");
        need(out, "out");
        const std::string p(policy);
        const auto j = !p.empty() && p.front() == '{' ? parse_json(policy, "policy") : nlohmann::json(p);
        qw::StepOperator op(g->graph, qw::parse_policy(j, seed));
        qw::WalkState state = qw::WalkState::Zero(static_cast<Eigen::Index>(op.dimension()));
        *out = new qw_walk{std::move(op), std::move(state)};
    });
}

size_t qw_walk_arc_count(const qw_walk* w) { return w == nullptr ? 0 : w->op.dimension(); }

qw_status qw_walk_set_state(qw_walk* w, const double* re_im, size_t arc_count) {
    return guarded([&] {
        need(w, "walk");
        need(re_im, "state");
        if (arc_count != w->op.dimension()) {
            throw qw::ConfigError("state has " + std::to_string(arc_count) + " entries, the walk has " +
                                  std::to_string(w->op.dimension()) + " arcs");
        }
        for (size_t a = 0; a < arc_count; ++a) {
            w->state(static_cast<Eigen::Index>(a)) = qw::cplx(re_im[2 * a], re_im[2 * a + 1]);
        }
    });
}

qw_status qw_walk_step(qw_walk* w, size_t steps) {
    return guarded([&] {
        need(w, "walk");
        for (size_t k = 0; k < steps; ++k) {
            w->state = w->op.apply(w->state);
        }
    });
}

qw_status qw_walk_vertex_probability(const qw_walk* w, size_t v, double* out) {
    return guarded([&] {
        need(w, "walk");
        need(out, "out");
        if (v >= w->op.arcs().vertex_count()) {
            throw qw::ConfigError("vertex " + std::to_string(v) + " out of range");
        }
        *out = qw::vertex_probability(w->op.arcs(), w->state, v);
    });
}

void qw_walk_free(qw_walk* w) { delete w; }

qw_status qw_run(const char* command, const char* config_json, qw_result** out) {
    return guarded([&] {
        need(command, "command");
        need(out, "out");
        const auto config = config_json == nullptr ? nlohmann::json::object() : parse_json(config_json, "config");
        auto res = qw::run_command(command, config);
        *out = new qw_result{res.summary.dump(), std::move(res.artifacts)};
    });
}

size_t qw_result_artifact_count(const qw_result* r) { return r == nullptr ? 0 : r->artifacts.size(); }

const char* qw_result_artifact_name(const qw_result* r, size_t i) {
    return r == nullptr || i >= r->artifacts.size() ? nullptr : r->artifacts[i].name.c_str();
}

const char* qw_result_artifact_data(const qw_result* r, size_t i) {
    return r == nullptr || i >= r->artifacts.size() ? nullptr : r->artifacts[i].content.c_str();
}

const char* qw_result_summary(const qw_result* r) { return r == nullptr ? nullptr : r->summary.c_str(); }

void qw_result_free(qw_result* r) { delete r; }

}
