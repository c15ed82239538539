#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "qwalk/qwalk.h"

TEST(CApi, VersionAndNullArguments) {
    EXPECT_STREQ(qw_version(), "0.1.0");
    EXPECT_EQ(qw_graph_from_spec(nullptr, nullptr), QW_ERR_CONFIG);
    EXPECT_NE(std::string(qw_last_error()), "");
    EXPECT_EQ(qw_graph_vertex_count(nullptr), 0u);
    qw_graph_free(nullptr);
    qw_walk_free(nullptr);
    qw_result_free(nullptr);
    qw_string_free(nullptr);
}

TEST(CApi, GraphHandles) {
    qw_graph* k2 = nullptr;
    qw_graph* c5 = nullptr;
    ASSERT_EQ(qw_graph_from_spec("edgeless n=2", &k2), QW_OK) << qw_last_error();
    ASSERT_EQ(qw_graph_from_spec("cycle n=5", &c5), QW_OK) << qw_last_error();
    qw_graph* j = nullptr;
    ASSERT_EQ(qw_graph_join(k2, c5, &j), QW_OK);
    EXPECT_EQ(qw_graph_vertex_count(j), 7u);
    size_t deg = 0;
    ASSERT_EQ(qw_graph_degree(j, 0, &deg), QW_OK);
    EXPECT_EQ(deg, 5u);
    EXPECT_EQ(qw_graph_degree(j, 7, &deg), QW_ERR_CONFIG);

    char* text = nullptr;
    ASSERT_EQ(qw_graph_to_json(j, &text), QW_OK);
    qw_graph* back = nullptr;
    ASSERT_EQ(qw_graph_from_json(text, &back), QW_OK);
    char* text2 = nullptr;
    ASSERT_EQ(qw_graph_to_json(back, &text2), QW_OK);
    EXPECT_STREQ(text, text2);

    qw_graph* comp = nullptr;
    ASSERT_EQ(qw_graph_complement(j, &comp), QW_OK);
    ASSERT_EQ(qw_graph_degree(comp, 0, &deg), QW_OK);
    EXPECT_EQ(deg, 1u);

    char* k1 = nullptr;
    char* k2key = nullptr;
    qw_graph* swapped = nullptr;
    ASSERT_EQ(qw_graph_join(c5, k2, &swapped), QW_OK);
    ASSERT_EQ(qw_graph_canonical_key(j, &k1), QW_OK);
    ASSERT_EQ(qw_graph_canonical_key(swapped, &k2key), QW_OK);
    EXPECT_STREQ(k1, k2key);

    qw_string_free(text);
    qw_string_free(text2);
    qw_string_free(k1);
    qw_string_free(k2key);
    for (auto* g : {k2, c5, j, back, comp, swapped}) {
        qw_graph_free(g);
    }
}

TEST(CApi, BadInputsReportConfigErrors) {
    qw_graph* g = nullptr;
    EXPECT_EQ(qw_graph_from_spec("cycle n=2", &g), QW_ERR_CONFIG);
    EXPECT_NE(std::string(qw_last_error()).find("n"), std::string::npos);
    EXPECT_EQ(qw_graph_from_json("{\"n\": 2, \"edges\": [[0, 5, 1]]}", &g), QW_ERR_CONFIG);
    EXPECT_EQ(qw_graph_from_json("not json", &g), QW_ERR_CONFIG);
    EXPECT_EQ(g, nullptr);
}

TEST(CApi, WalkReachesTarget) {
    qw_graph* g = nullptr;
    ASSERT_EQ(qw_graph_from_spec("join k2c n=6", &g), QW_OK);
    qw_walk* w = nullptr;
    ASSERT_EQ(qw_walk_create(g, "O2", 1, &w), QW_OK) << qw_last_error();
    const size_t arcs = qw_walk_arc_count(w);
    EXPECT_EQ(arcs, 36u);
    std::vector<double> state(2 * arcs, 0.0);
    for (size_t a = 0; a < 6; ++a) {
        state[2 * a] = 1.0 / std::sqrt(6.0);
    }
    EXPECT_EQ(qw_walk_set_state(w, state.data(), arcs - 1), QW_ERR_CONFIG);
    ASSERT_EQ(qw_walk_set_state(w, state.data(), arcs), QW_OK);
    ASSERT_EQ(qw_walk_step(w, 6), QW_OK);
    double p = 0.0;
    ASSERT_EQ(qw_walk_vertex_probability(w, 1, &p), QW_OK);
    EXPECT_NEAR(p, 1.0, 1e-9);
    EXPECT_EQ(qw_walk_vertex_probability(w, 99, &p), QW_ERR_CONFIG);
    qw_walk_free(w);

    EXPECT_EQ(qw_walk_create(g, "O9", 1, &w), QW_ERR_CONFIG);
    ASSERT_EQ(qw_walk_create(g, "{\"0\": \"dft\", \"default\": \"O2\"}", 1, &w), QW_OK) << qw_last_error();
    qw_walk_free(w);
    qw_graph_free(g);
}

TEST(CApi, RunCommand) {
    qw_result* r = nullptr;
    ASSERT_EQ(qw_run("dtqw", "{\"graph\": \"join k2c n=6\", \"steps\": 24}", &r), QW_OK) << qw_last_error();
    EXPECT_NE(std::string(qw_result_summary(r)).find("\"pst_steps\":[6,18]"), std::string::npos);
    ASSERT_EQ(qw_result_artifact_count(r), 2u);
    std::vector<std::string> names;
    for (size_t i = 0; i < qw_result_artifact_count(r); ++i) {
        names.emplace_back(qw_result_artifact_name(r, i));
        EXPECT_NE(qw_result_artifact_data(r, i), nullptr);
    }
    EXPECT_EQ(names, (std::vector<std::string>{"series.csv", "report.json"}));
    EXPECT_EQ(qw_result_artifact_name(r, 5), nullptr);
    qw_result_free(r);

    EXPECT_EQ(qw_run("dtqw", "{\"graph\": \"cycle n=4\", \"stepz\": 1}", &r), QW_ERR_CONFIG);
    EXPECT_NE(std::string(qw_last_error()).find("stepz"), std::string::npos);
    EXPECT_EQ(qw_run("nope", "{}", &r), QW_ERR_CONFIG);
    EXPECT_EQ(qw_run("dtqw", "{", &r), QW_ERR_CONFIG);
}
