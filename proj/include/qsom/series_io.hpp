#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsom/runner.hpp"

namespace qsom {

/// Round-trip-exact decimal rendering of a double (shortest form that
/// parses back to the same value).
std::string format_double(double value);

/// `step,global_reward` rows, one per step.
std::string format_global_csv(const RunResult& result);

/// `step,agent_id,reward` rows, step-major.
std::string format_agent_csv(const RunResult& result);

/// Structured run summary: scenario tokens, seed, score, wall time. The wall
/// time is the only field that differs between identical executions.
nlohmann::json summary_json(const RunResult& result);

/// Writes via a temp file plus rename, so readers never see partial output.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Readers for everything the CLI writes. They validate headers and column
/// counts and throw ConfigError on malformed input.
std::vector<double> read_global_csv(const std::filesystem::path& path);
std::vector<std::vector<double>> read_agent_csv(const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace qsom
