#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwalk/dtqw.hpp"

namespace qw {

// Cycle C_base with extra nodes base, base+1, ...; attachments[i] is the
// bitmask of cycle vertices joined to new node i.
struct VariantDescriptor {
    std::size_t base = 4;
    std::vector<std::uint32_t> attachments;
    std::vector<std::pair<std::size_t, std::size_t>> new_edges;

    bool operator==(const VariantDescriptor&) const = default;
};

nlohmann::json descriptor_to_json(const VariantDescriptor& d);
VariantDescriptor descriptor_from_json(const nlohmann::json& j);

Graph build_variant(const VariantDescriptor& d);
VertexPair antipodal_pair(std::size_t base);
// cycle vertices that receive an attachment
std::vector<Vertex> touched_vertices(const VariantDescriptor& d);
// every attachment goes to the target only
bool is_trivial(const VariantDescriptor& d);

struct Variant {
    VariantDescriptor descriptor;
    Graph graph;
    VertexPair pair;
    std::string key;
};

// All descriptors with 1..max_new new nodes. New nodes are interchangeable,
// so attachment masks are generated in nondecreasing order; every edge
// pattern among new nodes is included.
std::vector<VariantDescriptor> raw_variants(std::size_t base, std::size_t max_new);
// raw_variants with duplicates (same marked key) removed, first occurrence kept.
std::vector<Variant> enumerate_variants(std::size_t base, std::size_t max_new);

struct SearchOptions {
    std::vector<StandardPolicy> policies{StandardPolicy::O1, StandardPolicy::O2, StandardPolicy::O3};
    std::size_t samples = 1500;
    std::size_t max_steps = 100;
    double lambda = kDefaultLambda;
    double pst_tol = kDefaultPstTol;
    std::uint64_t seed = kDefaultSeed;
    std::size_t workers = 1;
    // O3 equals O2 on graphs without degree-2 vertices
    bool skip_redundant_o3 = true;
};

struct SearchRecord {
    std::string key;
    VariantDescriptor descriptor;
    std::string policy;
    double best_p = 0.0;
    std::size_t best_step = 0;
    bool pst = false;
    std::vector<std::size_t> pst_steps;
    std::vector<std::size_t> pst_all_steps;
    std::optional<std::size_t> period;
    double frac_over_lambda = 0.0;
    bool trivial = false;
    std::vector<Vertex> touched;
};

nlohmann::json record_to_json(const SearchRecord& r);
SearchRecord record_from_json(const nlohmann::json& j);

// Append-only JSON-lines store. Records already present are loaded on open
// so an interrupted search resumes where it stopped.
class JsonlRecordSink {
  public:
    explicit JsonlRecordSink(std::filesystem::path path);

    const std::vector<SearchRecord>& existing() const { return existing_; }
    const SearchRecord* find(const std::string& key, const std::string& policy) const;
    void append(const SearchRecord& r);

  private:
    std::filesystem::path path_;
    std::vector<SearchRecord> existing_;
    std::ofstream out_;
    std::mutex mutex_;
};

SearchRecord search_cell(const Variant& v, StandardPolicy policy, std::span<const CVector> samples,
                         const SearchOptions& options);
// Records sorted by best probability (descending), then key and policy.
std::vector<SearchRecord> pst_search(const std::vector<Variant>& variants, const SearchOptions& options,
                                     JsonlRecordSink* sink = nullptr);

// Source state whose Grover(3) image populates only the two cycle ports.
CVector family_initial_state(cplx x, cplx y);
// C_base with one pendant at the source; the source's pendant port is last.
VariantDescriptor source_pendant_variant(std::size_t base);

enum class PerturbationKind { Amplitude, Phase, RandomAmplitude };

struct PerturbationSpec {
    PerturbationKind kind = PerturbationKind::Amplitude;
    double magnitude = 0.0;
    // defaults to the last source port
    std::optional<std::size_t> port;
};

std::string perturbation_name(PerturbationKind kind);
PerturbationKind parse_perturbation(const std::string& name);

// Equal source superposition with one port scaled by (1 - delta) or rotated
// by exp(i theta); the random kind scales every port by 1 - U[0, magnitude].
// Renormalised.
WalkState perturbed_state(std::size_t ports, const PerturbationSpec& spec, std::uint64_t seed = 0);

struct RobustnessRow {
    std::size_t n = 0;
    PerturbationKind kind = PerturbationKind::Amplitude;
    double magnitude = 0.0;
    double probability = 0.0;
};

// Target probability of K2bar + C_n with Grover coins after `steps` steps.
// Random cells report the mean over `runs` draws.
std::vector<RobustnessRow> robustness_sweep(std::span<const std::size_t> ns,
                                            std::span<const PerturbationSpec> specs, std::size_t runs,
                                            std::uint64_t seed, std::size_t steps = 6,
                                            std::size_t workers = 1);

struct InterpolatedWalk {
    Graph structure;
    Graph weighted;
    ExplicitPolicy policy;
};

// Edges of `to` missing from `from` carry weight c; their endpoints get
// interpolating Grover coins with those ports as tunnelling ports.
InterpolatedWalk interpolated_walk(const Graph& from, const Graph& to, double c);
double interpolation_probability(const Graph& from, const Graph& to, double c, VertexPair pair,
                                 std::size_t steps);

// "k2k", "k2p", "k2c" -> K2bar joined with Knbar, Pn, Cn.
FamilySpec k2_family(const std::string& kind, std::size_t n);

struct InterpolationRow {
    std::size_t n = 0;
    double c = 0.0;
    double probability = 0.0;
};

std::vector<InterpolationRow> interpolation_sweep(const std::string& from_kind, const std::string& to_kind,
                                                  std::span<const double> cs, std::span<const std::size_t> ns,
                                                  std::size_t steps = 6, std::size_t workers = 1);

} // namespace qw
