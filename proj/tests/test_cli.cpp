#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qsom/cli.hpp"
#include "qsom/series_io.hpp"

using namespace qsom;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qsom_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_cli(std::vector<std::string> args) { return cli::dispatch(args); }

}  // namespace

TEST_CASE("run writes the three artifacts with consistent contents") {
  const auto dir = fresh_dir("run_basic");
  const int code = run_cli({"run", "--mode", "daily", "--size", "small", "--reward", "comfort",
                            "--algo", "qsom", "--seed", "42", "--steps", "30", "--out",
                            dir.string()});
  REQUIRE(code == 0);

  const auto global = read_global_csv(dir / "global_rewards.csv");
  const auto agents = read_agent_csv(dir / "agent_rewards.csv");
  const auto summary = read_json(dir / "summary.json");

  CHECK(global.size() == 30);
  REQUIRE(agents.size() == 26);
  for (const auto& series : agents) CHECK(series.size() == 30);
  CHECK(summary.at("reward") == "comfort");
  CHECK(summary.at("seed") == 42);
  CHECK(summary.at("agents") == 26);

  // The summary's score is the mean of the exported series.
  double total = 0.0;
  for (double g : global) total += g;
  CHECK(summary.at("score").get<double>() == doctest::Approx(total / 30.0).epsilon(1e-12));
}

TEST_CASE("invalid tokens exit with code 2") {
  const auto dir = fresh_dir("run_bad");
  CHECK(run_cli({"run", "--reward", "karma", "--out", dir.string()}) == 2);
  CHECK(run_cli({"run", "--size", "large", "--out", dir.string()}) == 2);
  CHECK(run_cli({"run", "--algo", "ddpg", "--out", dir.string()}) == 2);
  CHECK(run_cli({"run", "--set", "bogus=1", "--out", dir.string()}) == 2);
  CHECK(run_cli({"run", "--no-such-flag"}) == 2);
  CHECK(run_cli({"frobnicate"}) == 2);
}

TEST_CASE("identical invocations produce byte-identical csv bodies") {
  const auto dir1 = fresh_dir("det_a");
  const auto dir2 = fresh_dir("det_b");
  const std::vector<std::string> base{"run",   "--mode",  "daily", "--reward",
                                      "equity", "--seed",  "7",     "--steps",
                                      "25",     "--algo",  "qdsom"};
  auto args1 = base;
  args1.insert(args1.end(), {"--out", dir1.string()});
  auto args2 = base;
  args2.insert(args2.end(), {"--out", dir2.string()});
  REQUIRE(run_cli(args1) == 0);
  REQUIRE(run_cli(args2) == 0);
  CHECK(slurp(dir1 / "global_rewards.csv") == slurp(dir2 / "global_rewards.csv"));
  CHECK(slurp(dir1 / "agent_rewards.csv") == slurp(dir2 / "agent_rewards.csv"));
}

TEST_CASE("overrides change the run") {
  const auto dir1 = fresh_dir("ovr_a");
  const auto dir2 = fresh_dir("ovr_b");
  REQUIRE(run_cli({"run", "--steps", "20", "--seed", "3", "--out", dir1.string()}) == 0);
  REQUIRE(run_cli({"run", "--steps", "20", "--seed", "3", "--out", dir2.string(), "--set",
                   "scarcity_factor=1.2"}) == 0);
  CHECK(slurp(dir1 / "global_rewards.csv") != slurp(dir2 / "global_rewards.csv"));
}

TEST_CASE("batch aggregates per-seed scores") {
  const auto dir = fresh_dir("batch");
  REQUIRE(run_cli({"batch", "--seeds", "1,2,3", "--steps", "15", "--reward", "comfort", "--out",
                   dir.string()}) == 0);

  const auto aggregate = read_json(dir / "aggregate.json");
  const auto scores = aggregate.at("scores").get<std::vector<double>>();
  REQUIRE(scores.size() == 3);
  double total = 0.0;
  for (double s : scores) total += s;
  CHECK(aggregate.at("mean_score").get<double>() == doctest::Approx(total / 3.0).epsilon(1e-12));

  for (int seed : {1, 2, 3}) {
    const auto summary = read_json(dir / ("seed_" + std::to_string(seed)) / "summary.json");
    CHECK(summary.at("seed") == seed);
  }
}

TEST_CASE("batch with one seed reports that run's score as the mean") {
  const auto dir = fresh_dir("batch_one");
  REQUIRE(run_cli({"batch", "--seeds", "5", "--steps", "12", "--out", dir.string()}) == 0);
  const auto aggregate = read_json(dir / "aggregate.json");
  const auto summary = read_json(dir / "seed_5" / "summary.json");
  CHECK(aggregate.at("mean_score").get<double>() == summary.at("score").get<double>());
}

TEST_CASE("duplicate seeds yield duplicate scores") {
  const auto dir = fresh_dir("batch_dup");
  REQUIRE(run_cli({"batch", "--seeds", "9,9", "--steps", "12", "--out", dir.string()}) == 0);
  const auto scores = read_json(dir / "aggregate.json").at("scores").get<std::vector<double>>();
  REQUIRE(scores.size() == 2);
  CHECK(scores[0] == scores[1]);
}

TEST_CASE("batch without seeds is rejected") {
  CHECK(run_cli({"batch", "--steps", "5"}) == 2);
}

TEST_CASE("sweep runs the grid product and ranks rows") {
  const auto dir = fresh_dir("sweep");
  REQUIRE(run_cli({"sweep", "--grid", "boltzmann_tau=0.4,0.6", "--grid", "discount=0.5,0.9",
                   "--seeds", "1,2", "--steps", "10", "--out", dir.string()}) == 0);

  const auto body = slurp(dir / "sweep_results.csv");
  CHECK(body.rfind("mean_score,min_score,max_score,boltzmann_tau,discount\n", 0) == 0);

  std::vector<double> means;
  std::istringstream lines(body);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    means.push_back(std::stod(line.substr(0, line.find(','))));
  }
  REQUIRE(means.size() == 4);  // 2 x 2 combinations
  for (std::size_t i = 1; i < means.size(); ++i) CHECK(means[i - 1] >= means[i]);
}

TEST_CASE("sweep validation failures exit with code 2") {
  const auto dir = fresh_dir("sweep_bad");
  CHECK(run_cli({"sweep", "--seeds", "1", "--steps", "5", "--out", dir.string()}) == 2);
  CHECK(run_cli({"sweep", "--grid", "no_such_knob=1,2", "--seeds", "1", "--steps", "5", "--out",
                 dir.string()}) == 2);
}

TEST_CASE("the random baseline policy is reachable from the cli") {
  const auto dir = fresh_dir("random_policy");
  REQUIRE(run_cli({"run", "--policy", "random", "--steps", "20", "--out", dir.string()}) == 0);
  CHECK(read_json(dir / "summary.json").at("policy") == "random");
}

TEST_CASE("profiles dir replaces the builtin roster profiles") {
  const auto dir = fresh_dir("profiles_out");
  const auto profiles = fresh_dir("profiles_in");
  for (const std::string name : {"household", "office", "school"}) {
    std::ofstream out(profiles / (name + ".csv"), std::ios::trunc);
    out << "hour_index,need_wh\n";
    for (int h = 0; h < 24; ++h) out << h << ",1000\n";
  }
  REQUIRE(run_cli({"run", "--profiles-dir", profiles.string(), "--steps", "10", "--out",
                   dir.string()}) == 0);
  // Missing file is a configuration error.
  fs::remove(profiles / "school.csv");
  CHECK(run_cli({"run", "--profiles-dir", profiles.string(), "--steps", "10", "--out",
                 dir.string()}) == 2);
}
