#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridgame/analysis.hpp"
#include "gridgame/descriptor_system.hpp"
#include "gridgame/dynamics.hpp"
#include "gridgame/payoff.hpp"
#include "gridgame/scenario.hpp"
#include "gridgame/solvers.hpp"

namespace gridgame {

inline constexpr const char* kVersion = "0.1.0";

/// Provenance block at the top of every emitted report: same scenario and
/// seed must regenerate byte-identical files (no clocks, no hostnames).
struct RunMeta {
  std::string scenario_name;
  uint64_t scenario_fingerprint = 0;
  uint64_t seed = 0;
  std::string version = kVersion;
};

// ---------------------------------------------------------------------------
// build: assemble the descriptor system and summarize it
// ---------------------------------------------------------------------------

struct BuildReport {
  RunMeta meta;
  DescriptorSystem system;
};

BuildReport run_build(const Scenario& scenario, uint64_t seed);

/// Writes build.json into `out_dir` (created if missing).
void write_build_report(const BuildReport& report, const std::string& out_dir);

/// Console one-pager: dimensions, stability margin, pencil eigenvalues.
std::string build_summary(const BuildReport& report);

// ---------------------------------------------------------------------------
// simulate: one attack trajectory plus running-cost breakdown
// ---------------------------------------------------------------------------

struct SimulateReport {
  RunMeta meta;
  DescriptorSystem system;
  std::vector<int> attacked;          // state indices under attack
  DeviationTrajectory trajectory;     // combined attack response
  Vec combined_cost;                  // running cost of the combined attack
  std::vector<CostProfile> per_state; // solo-attack cost profile per attacked state
};

SimulateReport run_simulate(const Scenario& scenario, uint64_t seed);

/// Writes simulate.json, trajectory.csv (time + every state deviation) and
/// cost.csv (time, combined running cost, one solo column per attacked state).
void write_simulate_report(const SimulateReport& report, const std::string& out_dir);

std::string simulate_summary(const SimulateReport& report);

// ---------------------------------------------------------------------------
// solve: payoff matrix, equilibrium, baselines
// ---------------------------------------------------------------------------

/// Command-line overrides; negative numbers mean "keep the scenario value".
struct SolveOverrides {
  long long budget = -1;
  int granularity = -1;
  std::string restrict_attacker;  // "", "all", "electric", or comma-joined state labels
  std::string restrict_defender;  // "", "all", "electric"
  long long max_iterations = -1;
  double tolerance = -1.0;
  uint64_t seed = 0;
};

struct SolveReport {
  RunMeta meta;
  DescriptorSystem system;
  long long budget = 0;
  int granularity = 1;
  std::string attacker_restriction;  // "all", "scenario", "electric", or the label list
  std::string defender_restriction;  // "all" or "electric"
  std::vector<int> pool;             // attacker state pool
  PayoffMatrix payoff;
  Equilibrium play;         // fictitious play (the learning dynamics)
  Equilibrium exact;        // LP minimax (the certificate)
  double value_agreement = 0.0;  // |play.value - exact.value|
  double indifference = 0.0;     // support certificate residual on `exact`
  BaselineReport baseline;       // equal-allocation defender
};

SolveReport run_solve(const Scenario& scenario, const SolveOverrides& overrides);

/// Writes solve.json, payoff.csv, attacker_mixture.csv, defender_mixture.csv.
void write_solve_report(const SolveReport& report, const std::string& out_dir);

std::string solve_summary(const SolveReport& report);

// ---------------------------------------------------------------------------
// sweep: game value and baselines as the budget grows
// ---------------------------------------------------------------------------

struct SweepPoint {
  long long budget = 0;
  long long allocation_count = 0;
  double value = 0.0;               // exact game value at this budget
  double equal_mixture = 0.0;       // equilibrium attacker vs the equal split
  double equal_best_response = 0.0; // best pure attack vs the equal split
};

struct SweepReport {
  RunMeta meta;
  long long attack_count = 0;
  std::vector<SweepPoint> points;
};

/// Solves the game at every budget (attacks fixed, allocations re-enumerated).
/// With an empty list, sweeps the scenario budget B and +20%/+40% increases
/// floored to the granularity. Needs at least two distinct budgets.
SweepReport run_sweep(const Scenario& scenario, std::vector<long long> budgets,
                      const SolveOverrides& overrides);

/// Writes sweep.json and sweep.csv (budget, value, baselines).
void write_sweep_report(const SweepReport& report, const std::string& out_dir);

std::string sweep_summary(const SweepReport& report);

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

/// Attacker state pool for a restriction spec: "" falls back to the scenario
/// pool (itself defaulting to every state), "all" is every state, "electric"
/// the electric block, anything else a comma-joined label list.
std::vector<int> resolve_pool(const DescriptorSystem& sys, const Scenario& scenario,
                              const std::string& restriction);

/// "a|b|c" display handle for an attack set.
std::string attack_label(const DescriptorSystem& sys, const std::vector<int>& attack);

/// "300-400-100-..." display handle for an allocation.
std::string allocation_label(const std::vector<int>& allocation);

}  // namespace gridgame
