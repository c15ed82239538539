#include "qwalk/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <sstream>

#include "qwalk/dtqw.hpp"

namespace qw {

ConfigReader::ConfigReader(const nlohmann::json& config, std::set<std::string> allowed) : config_(config) {
    if (config_.is_null()) {
        config_ = nlohmann::json::object();
    }
    if (!config_.is_object()) {
        errors_.push_back("config must be a JSON object");
        config_ = nlohmann::json::object();
        return;
    }
    for (const auto& [key, value] : config_.items()) {
        (void)value;
        if (!allowed.contains(key)) {
            errors_.push_back("unknown field '" + key + "'");
        }
    }
}

const nlohmann::json* ConfigReader::raw(const std::string& key) const {
    return config_.contains(key) ? &config_[key] : nullptr;
}

void ConfigReader::finish() const {
    if (errors_.empty()) {
        return;
    }
    std::string msg = "invalid configuration (" + std::to_string(errors_.size()) + " problem" +
                      (errors_.size() == 1 ? "" : "s") + "):";
    for (const auto& e : errors_) {
        msg += "\n  - " + e;
    }
    throw ConfigError(msg);
}

Graph graph_from_config(const nlohmann::json& j) {
    if (j.is_object() && j.contains("n") && !j.contains("family")) {
        return graph_from_json(j);
    }
    return build(family_from_json(j));
}

namespace {

std::size_t to_index(std::string_view s) {
    std::size_t v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) {
        throw ConfigError("'" + std::string(s) + "' is not a nonnegative integer");
    }
    return v;
}

double to_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) {
        throw ConfigError("'" + s + "' is not a number");
    }
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string part; std::getline(in, part, sep);) {
        out.push_back(part);
    }
    return out;
}

bool is_index(const nlohmann::json& j) {
    return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

} // namespace

std::vector<std::size_t> parse_index_list(const nlohmann::json& j) {
    if (is_index(j)) {
        return {j.get<std::size_t>()};
    }
    if (j.is_array()) {
        if (!std::ranges::all_of(j, is_index)) {
            throw ConfigError("expected nonnegative integers (got " + j.dump() + ")");
        }
        return j.get<std::vector<std::size_t>>();
    }
    if (!j.is_string()) {
        throw ConfigError("expected a list of integers or a range string");
    }
    const auto s = j.get<std::string>();
    for (const std::string sep : {"..", ":", "-"}) {
        if (auto pos = s.find(sep); pos != std::string::npos) {
            const auto lo = to_index(std::string_view(s).substr(0, pos));
            const auto hi = to_index(std::string_view(s).substr(pos + sep.size()));
            if (hi < lo) {
                throw ConfigError("range '" + s + "' is empty");
            }
            std::vector<std::size_t> out;
            for (auto v = lo; v <= hi; ++v) {
                out.push_back(v);
            }
            return out;
        }
    }
    std::vector<std::size_t> out;
    for (const auto& part : split(s, ',')) {
        out.push_back(to_index(part));
    }
    return out;
}

std::vector<double> parse_grid(const nlohmann::json& j) {
    if (j.is_number()) {
        return {j.get<double>()};
    }
    if (j.is_array()) {
        return j.get<std::vector<double>>();
    }
    if (!j.is_string()) {
        throw ConfigError("expected a list of numbers or 'lo:hi:count'");
    }
    const auto s = j.get<std::string>();
    const auto parts = split(s, ':');
    if (parts.size() == 3) {
        const double lo = to_double(parts[0]);
        const double hi = to_double(parts[1]);
        const auto count = to_index(parts[2]);
        if (count < 1) {
            throw ConfigError("grid '" + s + "' needs at least one point");
        }
        std::vector<double> out;
        for (std::size_t k = 0; k < count; ++k) {
            out.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1));
        }
        return out;
    }
    std::vector<double> out;
    for (const auto& part : split(s, ',')) {
        out.push_back(to_double(part));
    }
    return out;
}

InitSpec parse_init(const nlohmann::json& j, std::uint64_t seed) {
    InitSpec spec;
    spec.seed = seed;
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "equal") {
            return spec;
        }
        if (s.rfind("haar:", 0) == 0) {
            const auto parts = split(s, ':');
            if (parts.size() != 2 && parts.size() != 3) {
                throw ConfigError("haar initial state must read haar:<count> or haar:<count>:<seed>");
            }
            spec.kind = InitSpec::Kind::Haar;
            spec.count = to_index(parts[1]);
            spec.seed = parts.size() == 3 ? to_index(parts[2]) : seed;
            if (spec.count == 0) {
                throw ConfigError("haar initial state needs count ≥ 1");
            }
            return spec;
        }
        if (!s.empty() && s.front() == '[') {
            try {
                return parse_init(nlohmann::json::parse(s), seed);
            } catch (const nlohmann::json::parse_error& e) {
                throw ConfigError(std::string("initial state JSON: ") + e.what());
            }
        }
        throw ConfigError("initial state must be 'equal', 'haar:<count>:<seed>' or a list of [port, re, im]");
    }
    if (!j.is_array() || j.empty()) {
        throw ConfigError("initial state must be 'equal', 'haar:<count>:<seed>' or a list of [port, re, im]");
    }
    spec.kind = InitSpec::Kind::Ports;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3 || !is_index(e[0])) {
            throw ConfigError("initial state entries must be [port, re] or [port, re, im]");
        }
        const double im = e.size() == 3 ? e[2].get<double>() : 0.0;
        spec.ports.emplace_back(e[0].get<std::size_t>(), cplx(e[1].get<double>(), im));
    }
    return spec;
}

std::vector<CVector> source_states(const InitSpec& spec, std::size_t ports) {
    if (ports == 0) {
        throw ConfigError("source vertex has no ports");
    }
    switch (spec.kind) {
    case InitSpec::Kind::Equal:
        return {CVector::Constant(static_cast<Eigen::Index>(ports), 1.0 / std::sqrt(static_cast<double>(ports)))};
    case InitSpec::Kind::Haar:
        return haar_states(ports, spec.count, spec.seed);
    case InitSpec::Kind::Ports: {
        CVector v = CVector::Zero(static_cast<Eigen::Index>(ports));
        for (const auto& [p, a] : spec.ports) {
            if (p >= ports) {
                throw ConfigError("initial state names port " + std::to_string(p) + " but the source has " +
                                  std::to_string(ports) + " ports");
            }
            v(static_cast<Eigen::Index>(p)) += a;
        }
        if (v.norm() == 0.0) {
            throw ConfigError("initial state is zero");
        }
        return {v.normalized()};
    }
    }
    return {};
}

} // namespace qw
