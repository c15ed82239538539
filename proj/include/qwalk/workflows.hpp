#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qw {

struct Artifact {
    std::string name;
    std::string content;
};

struct RunResult {
    nlohmann::json summary;
    std::vector<Artifact> artifacts;
};

const std::vector<std::string>& command_names();

// Validates `config` for `command`, runs it and returns the summary plus
// file artifacts (CSV/JSON text). The search command also appends to the
// JSON-lines file named by its "records" field.
RunResult run_command(const std::string& command, const nlohmann::json& config);

} // namespace qw
