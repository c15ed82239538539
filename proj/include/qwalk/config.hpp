#pragma once

#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "qwalk/arcs.hpp"

namespace qw {

// Reads a JSON config object, collecting every problem before reporting.
class ConfigReader {
  public:
    ConfigReader(const nlohmann::json& config, std::set<std::string> allowed);

    bool has(const std::string& key) const { return config_.contains(key); }
    const nlohmann::json* raw(const std::string& key) const;

    template <class T>
    T get(const std::string& key, T fallback) {
        if (!config_.contains(key)) {
            return fallback;
        }
        const auto& v = config_[key];
        if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
            // json converts -3 or 2.5 silently; reject both
            if (!v.is_number_integer() || (std::is_unsigned_v<T> && v.is_number_integer() &&
                                            !v.is_number_unsigned() && v.get<long long>() < 0)) {
                error("field '" + key + "' must be " +
                      (std::is_unsigned_v<T> ? "a nonnegative integer" : "an integer") + " (got " + v.dump() + ")");
                return fallback;
            }
        }
        try {
            return v.get<T>();
        } catch (const nlohmann::json::exception&) {
            error("field '" + key + "' has the wrong type (got " + v.dump() + ")");
            return fallback;
        }
    }

    // Runs fn, turning a ConfigError into a collected message for `key`.
    template <class T, class Fn>
    std::optional<T> parse(const std::string& key, Fn&& fn) {
        try {
            return fn();
        } catch (const ConfigError& e) {
            error("field '" + key + "': " + e.what());
        } catch (const nlohmann::json::exception& e) {
            error("field '" + key + "': " + e.what());
        }
        return std::nullopt;
    }

    void error(std::string message) { errors_.push_back(std::move(message)); }
    void require(bool ok, std::string message) {
        if (!ok) {
            error(std::move(message));
        }
    }
    // Throws ConfigError listing every collected problem.
    void finish() const;

  private:
    nlohmann::json config_;
    std::vector<std::string> errors_;
};

// Graph from a family string ("join k2c n=5"), a family object, or a
// serialised graph object ({"n", "edges", "loops"}).
Graph graph_from_config(const nlohmann::json& j);

// [a, b, c], "a..b", "a:b" or "a,b,c".
std::vector<std::size_t> parse_index_list(const nlohmann::json& j);
// [x, y, ...] or "lo:hi:count" (inclusive, evenly spaced).
std::vector<double> parse_grid(const nlohmann::json& j);

struct InitSpec {
    enum class Kind { Equal, Haar, Ports } kind = Kind::Equal;
    std::size_t count = 1;
    std::uint64_t seed = kDefaultSeed;
    // (port, amplitude) pairs on the source vertex
    std::vector<std::pair<std::size_t, cplx>> ports;
};

// "equal", "haar:<count>[:<seed>]", [[port, re, im], ...]; a missing haar
// seed is taken from `seed`.
InitSpec parse_init(const nlohmann::json& j, std::uint64_t seed = kDefaultSeed);
// Source-port amplitude vectors described by spec, normalised.
std::vector<CVector> source_states(const InitSpec& spec, std::size_t ports);

} // namespace qw
