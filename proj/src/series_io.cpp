#include "qsom/series_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qsom/errors.hpp"

namespace qsom {

std::string format_double(double value) {
  // %.17g always round-trips; try shorter forms first for readable files.
  char buf[64];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

std::string format_global_csv(const RunResult& result) {
  std::string out = "step,global_reward\n";
  for (std::size_t t = 0; t < result.global_rewards.size(); ++t) {
    out += std::to_string(t);
    out += ',';
    out += format_double(result.global_rewards[t]);
    out += '\n';
  }
  return out;
}

std::string format_agent_csv(const RunResult& result) {
  std::string out = "step,agent_id,reward\n";
  const std::size_t steps = result.global_rewards.size();
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t a = 0; a < result.agent_rewards.size(); ++a) {
      out += std::to_string(t);
      out += ',';
      out += std::to_string(a);
      out += ',';
      out += format_double(result.agent_rewards[a][t]);
      out += '\n';
    }
  }
  return out;
}

nlohmann::json summary_json(const RunResult& result) {
  const ScenarioSpec& spec = result.spec;
  return nlohmann::json{
      {"mode", profile_mode_name(spec.mode)},
      {"size", env_size_name(spec.size)},
      {"reward", reward_kind_name(spec.reward)},
      {"algorithm", algorithm_name(spec.algorithm)},
      {"policy", policy_mode_name(spec.policy)},
      {"steps", spec.steps},
      {"seed", spec.master_seed},
      {"agents", spec.env.agent_count()},
      {"score", result.score},
      {"empty_run_warning", result.empty_run_warning},
      {"wall_seconds", result.wall_seconds},
  };
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out) throw ConfigError("short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

namespace {

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                               const std::string& header) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("'" + path.string() + "': empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) {
    throw ConfigError("'" + path.string() + "': expected header '" + header + "', got '" + line +
                      "'");
  }
  const std::size_t columns = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != columns) {
      throw ConfigError("'" + path.string() + "': row '" + line + "' has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(columns));
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

double parse_field(const std::filesystem::path& path, const std::string& text) {
  try {
    return std::stod(text);
  } catch (const std::exception&) {
    throw ConfigError("'" + path.string() + "': unparseable number '" + text + "'");
  }
}

}  // namespace

namespace {

std::size_t parse_index(const std::filesystem::path& path, const std::string& text) {
  try {
    return std::stoul(text);
  } catch (const std::exception&) {
    throw ConfigError("'" + path.string() + "': unparseable index '" + text + "'");
  }
}

}  // namespace

std::vector<double> read_global_csv(const std::filesystem::path& path) {
  const auto rows = read_csv(path, "step,global_reward");
  std::vector<double> series;
  series.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (parse_index(path, rows[i][0]) != i) {
      throw ConfigError("'" + path.string() + "': steps out of order at row " + std::to_string(i));
    }
    series.push_back(parse_field(path, rows[i][1]));
  }
  return series;
}

std::vector<std::vector<double>> read_agent_csv(const std::filesystem::path& path) {
  const auto rows = read_csv(path, "step,agent_id,reward");
  std::vector<std::vector<double>> series;
  for (const auto& row : rows) {
    const std::size_t agent = parse_index(path, row[1]);
    if (agent >= series.size()) series.resize(agent + 1);
    series[agent].push_back(parse_field(path, row[2]));
  }
  return series;
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("'" + path.string() + "': " + e.what());
  }
  return doc;
}

}  // namespace qsom
