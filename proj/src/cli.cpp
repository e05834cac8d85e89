#include "qsom/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <map>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "qsom/errors.hpp"
#include "qsom/series_io.hpp"

namespace qsom::cli {

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  std::string mode = "daily";
  std::string size = "small";
  std::string reward = "adaptability2";
  std::string algo = "qsom";
  std::string policy = "learned";
  std::size_t steps = 10000;
  std::string out_dir;
  std::string config_file;
  std::string profiles_dir;
  std::vector<std::string> overrides;  // name=value
  unsigned jobs = 1;
};

std::string default_out_dir() {
  if (const char* env = std::getenv("QSOM_OUT_DIR")) return env;
  return "out";
}

void add_common_options(CLI::App& cmd, CommonOptions& opts) {
  cmd.add_option("--mode", opts.mode, "Consumption profile mode: daily|annual");
  cmd.add_option("--size", opts.size, "Environment size: small|medium");
  cmd.add_option("--reward", opts.reward,
                 "Reward function: equity|overconsumption|comfort|multiobj-sum|multiobj-prod|"
                 "adaptability1|adaptability2");
  cmd.add_option("--algo", opts.algo, "Learning algorithm: qsom|qdsom");
  cmd.add_option("--policy", opts.policy, "learned (default) or random baseline");
  cmd.add_option("--steps", opts.steps, "Simulated hours per run");
  cmd.add_option("--out", opts.out_dir, "Output directory (default $QSOM_OUT_DIR or ./out)");
  cmd.add_option("--config", opts.config_file, "JSON environment config file");
  cmd.add_option("--profiles-dir", opts.profiles_dir,
                 "Directory with household.csv, office.csv, school.csv profiles");
  cmd.add_option("--set", opts.overrides, "Hyperparameter/env override name=value (repeatable)");
}

std::pair<std::string, std::string> split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("expected name=value, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

ScenarioSpec make_spec(const CommonOptions& opts, std::uint64_t seed) {
  ScenarioSpec spec = build_scenario(parse_profile_mode(opts.mode), parse_env_size(opts.size),
                                     parse_reward_kind(opts.reward), parse_algorithm(opts.algo),
                                     seed);
  spec.policy = parse_policy_mode(opts.policy);
  spec.steps = opts.steps;

  if (!opts.profiles_dir.empty()) {
    const fs::path dir(opts.profiles_dir);
    const BuildingProfile household = load_profile_csv(dir / "household.csv", spec.mode);
    const BuildingProfile office = load_profile_csv(dir / "office.csv", spec.mode);
    const BuildingProfile school = load_profile_csv(dir / "school.csv", spec.mode);
    const std::size_t households = spec.size == EnvSize::Small ? 20 : 80;
    const std::size_t offices = spec.size == EnvSize::Small ? 5 : 19;
    spec.env.profiles.clear();
    for (std::size_t i = 0; i < households; ++i) spec.env.profiles.push_back(household);
    for (std::size_t i = 0; i < offices; ++i) spec.env.profiles.push_back(office);
    spec.env.profiles.push_back(school);
  }
  if (!opts.config_file.empty()) apply_config_file(spec.env, opts.config_file);
  for (const auto& entry : opts.overrides) {
    const auto [name, value] = split_assignment(entry);
    apply_override(spec, name, value);
  }
  spec.hyper.validate();
  spec.env.validate();
  return spec;
}

void write_run_artifacts(const fs::path& dir, const RunResult& result) {
  fs::create_directories(dir);
  write_file_atomic(dir / "global_rewards.csv", format_global_csv(result));
  write_file_atomic(dir / "agent_rewards.csv", format_agent_csv(result));
  write_file_atomic(dir / "summary.json", summary_json(result).dump(2) + "\n");
}

// Runs one spec per seed, at most `jobs` concurrently, preserving seed order
// in the returned scores.
std::vector<RunResult> run_seeds(const ScenarioSpec& base, const std::vector<std::uint64_t>& seeds,
                                 unsigned jobs) {
  std::vector<RunResult> results(seeds.size());
  std::size_t next = 0;
  while (next < seeds.size()) {
    const std::size_t wave = std::min<std::size_t>(std::max(1u, jobs), seeds.size() - next);
    std::vector<std::future<RunResult>> futures;
    futures.reserve(wave);
    for (std::size_t i = 0; i < wave; ++i) {
      ScenarioSpec spec = base;
      spec.master_seed = seeds[next + i];
      futures.push_back(std::async(std::launch::async, [spec] { return run(spec); }));
    }
    for (std::size_t i = 0; i < wave; ++i) results[next + i] = futures[i].get();
    next += wave;
  }
  return results;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::istringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      seeds.push_back(std::stoull(token));
    } catch (const std::exception&) {
      throw ConfigError("bad seed '" + token + "' in --seeds");
    }
  }
  if (seeds.empty()) throw ConfigError("--seeds must list at least one seed");
  return seeds;
}

int run_command(const CommonOptions& opts, std::uint64_t seed) {
  const ScenarioSpec spec = make_spec(opts, seed);
  const RunResult result = run(spec);
  const fs::path dir(opts.out_dir);
  write_run_artifacts(dir, result);
  std::printf("score %s over %zu steps (%.2fs) -> %s\n", format_double(result.score).c_str(),
              result.global_rewards.size(), result.wall_seconds, dir.string().c_str());
  return 0;
}

int batch_command(const CommonOptions& opts, const std::vector<std::uint64_t>& seeds) {
  const ScenarioSpec base = make_spec(opts, seeds.front());
  const auto results = run_seeds(base, seeds, opts.jobs);

  const fs::path dir(opts.out_dir);
  std::vector<double> scores;
  scores.reserve(results.size());
  for (const auto& result : results) {
    write_run_artifacts(dir / ("seed_" + std::to_string(result.spec.master_seed)), result);
    scores.push_back(result.score);
  }
  const double mean_score =
      std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
  nlohmann::json aggregate{
      {"seeds", seeds},
      {"scores", scores},
      {"mean_score", mean_score},
      {"min_score", *std::min_element(scores.begin(), scores.end())},
      {"max_score", *std::max_element(scores.begin(), scores.end())},
  };
  fs::create_directories(dir);
  write_file_atomic(dir / "aggregate.json", aggregate.dump(2) + "\n");
  std::printf("%zu runs, mean score %s -> %s\n", results.size(),
              format_double(mean_score).c_str(), dir.string().c_str());
  return 0;
}

struct SweepAxis {
  std::string name;
  std::vector<std::string> values;
};

int sweep_command(const CommonOptions& opts, const std::vector<std::string>& grid_args,
                  const std::vector<std::uint64_t>& seeds) {
  if (grid_args.empty()) throw ConfigError("sweep needs at least one --grid name=v1,v2,...");

  std::vector<SweepAxis> axes;
  for (const auto& arg : grid_args) {
    const auto [name, values_text] = split_assignment(arg);
    SweepAxis axis{name, {}};
    std::istringstream ss(values_text);
    std::string value;
    while (std::getline(ss, value, ',')) axis.values.push_back(value);
    if (axis.values.empty()) throw ConfigError("--grid " + name + ": empty value list");
    // Fail fast on unknown or inapplicable parameter names.
    ScenarioSpec probe = make_spec(opts, seeds.front());
    apply_override(probe, axis.name, axis.values.front());
    axes.push_back(std::move(axis));
  }

  struct Row {
    std::vector<std::string> assignment;  // one value per axis
    double mean_score = 0.0, min_score = 0.0, max_score = 0.0;
  };
  std::vector<Row> rows;

  std::vector<std::size_t> cursor(axes.size(), 0);
  while (true) {
    Row row;
    ScenarioSpec spec = make_spec(opts, seeds.front());
    for (std::size_t k = 0; k < axes.size(); ++k) {
      row.assignment.push_back(axes[k].values[cursor[k]]);
      apply_override(spec, axes[k].name, row.assignment.back());
    }
    const auto results = run_seeds(spec, seeds, opts.jobs);
    std::vector<double> scores;
    scores.reserve(results.size());
    for (const auto& result : results) scores.push_back(result.score);
    row.mean_score =
        std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
    row.min_score = *std::min_element(scores.begin(), scores.end());
    row.max_score = *std::max_element(scores.begin(), scores.end());
    rows.push_back(std::move(row));

    std::size_t k = axes.size();
    while (k > 0 && ++cursor[k - 1] == axes[k - 1].values.size()) cursor[--k] = 0;
    if (k == 0) break;
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.mean_score > b.mean_score; });

  std::string csv = "mean_score,min_score,max_score";
  for (const auto& axis : axes) csv += "," + axis.name;
  csv += '\n';
  for (const auto& row : rows) {
    csv += format_double(row.mean_score) + "," + format_double(row.min_score) + "," +
           format_double(row.max_score);
    for (const auto& value : row.assignment) csv += "," + value;
    csv += '\n';
  }
  const fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  write_file_atomic(dir / "sweep_results.csv", csv);

  for (const auto& row : rows) {
    std::string label;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      label += (k ? " " : "") + axes[k].name + "=" + row.assignment[k];
    }
    std::printf("mean %-10s  [%s, %s]  %s\n", format_double(row.mean_score).c_str(),
                format_double(row.min_score).c_str(), format_double(row.max_score).c_str(),
                label.c_str());
  }
  std::printf("%zu combinations x %zu seeds -> %s\n", rows.size(), seeds.size(),
              (dir / "sweep_results.csv").string().c_str());
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"QSOM/QDSOM multi-agent learners on a smart-grid energy simulation"};
  app.require_subcommand(1);

  CommonOptions opts;
  opts.out_dir = default_out_dir();

  std::uint64_t seed = 0;
  std::string seeds_text;
  std::size_t num_seeds = 0;
  std::vector<std::string> grid_args;

  CLI::App* run_cmd = app.add_subcommand("run", "One seeded run, exporting its reward series");
  add_common_options(*run_cmd, opts);
  run_cmd->add_option("--seed", seed, "Master seed");

  CLI::App* batch_cmd = app.add_subcommand("batch", "Repeat a scenario over several seeds");
  add_common_options(*batch_cmd, opts);
  batch_cmd->add_option("--seeds", seeds_text, "Comma-separated seed list");
  batch_cmd->add_option("--num-seeds", num_seeds, "Run seeds base..base+n-1 (see --seed)");
  batch_cmd->add_option("--seed", seed, "Base seed for --num-seeds");
  batch_cmd->add_option("--jobs", opts.jobs, "Concurrent runs");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Grid-search hyperparameters");
  add_common_options(*sweep_cmd, opts);
  sweep_cmd->add_option("--grid", grid_args, "Axis name=v1,v2,... (repeatable)");
  sweep_cmd->add_option("--seeds", seeds_text, "Comma-separated seed list");
  sweep_cmd->add_option("--jobs", opts.jobs, "Concurrent runs");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("qsom");
  for (const auto& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run_cmd->parsed()) return run_command(opts, seed);
    if (batch_cmd->parsed()) {
      std::vector<std::uint64_t> seeds;
      if (!seeds_text.empty()) {
        seeds = parse_seed_list(seeds_text);
      } else if (num_seeds > 0) {
        for (std::size_t i = 0; i < num_seeds; ++i) seeds.push_back(seed + i);
      } else {
        throw ConfigError("batch needs --seeds or --num-seeds");
      }
      return batch_command(opts, seeds);
    }
    std::vector<std::uint64_t> seeds =
        seeds_text.empty() ? std::vector<std::uint64_t>{seed} : parse_seed_list(seeds_text);
    return sweep_command(opts, grid_args, seeds);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const InvalidInput& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

int dispatch(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args);
}

}  // namespace qsom::cli
