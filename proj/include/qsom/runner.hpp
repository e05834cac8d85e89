#pragma once

#include <span>
#include <vector>

#include "qsom/scenario.hpp"

namespace qsom {

/// All series produced by one seeded run.
struct RunResult {
  ScenarioSpec spec;                               // echo, including the seed
  std::vector<double> global_rewards;              // one entry per step
  std::vector<std::vector<double>> agent_rewards;  // [agent][step]
  std::vector<AgentMind> final_minds;              // post-run learner state
  double score = 0.0;                              // mean of global_rewards
  double wall_seconds = 0.0;
  bool empty_run_warning = false;                  // set when steps == 0
};

/// Runs the full observation -> decision -> step -> reward -> learning loop
/// for spec.steps steps. Fully determined by the spec (including its master
/// seed); wall_seconds is the only field that varies between executions.
/// Errors from inside the loop are rethrown with the step index attached.
RunResult run(const ScenarioSpec& spec);

/// Mean of the run's global reward series. Throws InvalidInput when empty.
double score(const RunResult& result);

/// Trailing moving average: output[i] is the mean of the last min(window,
/// i+1) entries. Output length equals input length.
std::vector<double> moving_average(std::span<const double> series, std::size_t window);

}  // namespace qsom
