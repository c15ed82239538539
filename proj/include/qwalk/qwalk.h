#ifndef QWALK_QWALK_H
#define QWALK_QWALK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QW_API __declspec(dllexport)
#else
#define QW_API __attribute__((visibility("default")))
#endif

typedef enum qw_status {
    QW_OK = 0,
    QW_ERR_CONFIG = 1,
    QW_ERR_NUMERICAL = 2,
    QW_ERR_INTERNAL = 3
} qw_status;

typedef struct qw_graph qw_graph;
typedef struct qw_walk qw_walk;
typedef struct qw_result qw_result;

/* Message for the most recent failure on the calling thread ("" if none). */
QW_API const char* qw_last_error(void);
QW_API const char* qw_version(void);

/* Strings returned through char** out-parameters are released with this. */
QW_API void qw_string_free(char* s);

/* Graphs. spec is a family string ("cycle n=8", "join k2c n=5") or a JSON
 * family object; json is {"n", "edges": [[i, j, w]], "loops": [i]}. */
QW_API qw_status qw_graph_from_spec(const char* spec, qw_graph** out);
QW_API qw_status qw_graph_from_json(const char* json, qw_graph** out);
QW_API qw_status qw_graph_to_json(const qw_graph* g, char** out);
QW_API qw_status qw_graph_join(const qw_graph* a, const qw_graph* b, qw_graph** out);
QW_API qw_status qw_graph_complement(const qw_graph* g, qw_graph** out);
QW_API size_t qw_graph_vertex_count(const qw_graph* g);
QW_API qw_status qw_graph_degree(const qw_graph* g, size_t v, size_t* out);
/* Hex canonical form; isomorphic graphs share it. */
QW_API qw_status qw_graph_canonical_key(const qw_graph* g, char** out);
QW_API void qw_graph_free(qw_graph* g);

/* Coined walks. policy is "O1", "O2", "O3", "table1:<row>" or a JSON map. */
QW_API qw_status qw_walk_create(const qw_graph* g, const char* policy, uint64_t seed, qw_walk** out);
QW_API size_t qw_walk_arc_count(const qw_walk* w);
/* Amplitudes as interleaved (re, im) pairs, 2 * arc_count doubles. */
QW_API qw_status qw_walk_set_state(qw_walk* w, const double* re_im, size_t arc_count);
QW_API qw_status qw_walk_step(qw_walk* w, size_t steps);
QW_API qw_status qw_walk_vertex_probability(const qw_walk* w, size_t v, double* out);
QW_API void qw_walk_free(qw_walk* w);

/* Workflows: command is graph, dtqw, ctqw, decohere, search, robust or
 * interp; config_json is a JSON object of that command's fields. */
QW_API qw_status qw_run(const char* command, const char* config_json, qw_result** out);
QW_API size_t qw_result_artifact_count(const qw_result* r);
QW_API const char* qw_result_artifact_name(const qw_result* r, size_t i);
QW_API const char* qw_result_artifact_data(const qw_result* r, size_t i);
QW_API const char* qw_result_summary(const qw_result* r);
QW_API void qw_result_free(qw_result* r);

#ifdef __cplusplus
}
#endif

#endif
