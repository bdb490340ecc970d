#include <benchmark/benchmark.h>

#include "gridgame/analysis.hpp"
#include "gridgame/descriptor_system.hpp"
#include "gridgame/detection.hpp"
#include "gridgame/dynamics.hpp"
#include "gridgame/payoff.hpp"
#include "gridgame/scenario.hpp"
#include "gridgame/solvers.hpp"
#include "gridgame/strategies.hpp"

namespace {

using namespace gridgame;

const Scenario& ref_scenario() {
  static const Scenario s = reference_scenario();
  return s;
}

const DescriptorSystem& ref_system() {
  static const DescriptorSystem s = assemble(ref_scenario().infra);
  return s;
}

AttackScenario ref_attack() {
  const Scenario& scenario = ref_scenario();
  AttackScenario attack;
  for (const auto& label : scenario.attack.states)
    attack.states.push_back(ref_system().state_index(label));
  attack.waveform = scenario.attack.waveform;
  attack.horizon = scenario.attack.horizon;
  attack.step = scenario.attack.step;
  return attack;
}

/// Reference game inputs: the same pool, strategies and grid run_solve uses.
struct GameFixture {
  std::vector<std::vector<int>> attacks;
  std::vector<std::vector<int>> allocations;
  PayoffInputs inputs;
  PayoffMatrix payoff;
};

const GameFixture& ref_game() {
  static const GameFixture fixture = [] {
    const Scenario& scenario = ref_scenario();
    const DescriptorSystem& sys = ref_system();
    GameFixture f;
    std::vector<int> pool;
    if (scenario.game.attacker_pool.empty()) {
      for (int i = 0; i < sys.n(); ++i) pool.push_back(i);
    } else {
      for (const auto& label : scenario.game.attacker_pool)
        pool.push_back(sys.state_index(label));
    }
    f.attacks = enumerate_attacks(pool, scenario.game.max_attack_size, scenario.game.attack_cap);
    f.allocations = enumerate_allocations(sys.subsystem_count(), scenario.game.budget,
                                          scenario.game.granularity,
                                          scenario.game.allocation_cap);
    f.inputs.waveform = scenario.attack.waveform;
    f.inputs.window = scenario.game.window;
    f.inputs.step = scenario.attack.step;
    f.payoff = build_payoff(sys, f.attacks, f.allocations, f.inputs);
    return f;
  }();
  return fixture;
}

/// Attacked measurements plus a validated observer, shared by the filters.
struct FilterFixture {
  FilterDesign design;
  Mat measurements;
  Vec z0;
  double step = 0.0;
};

const FilterFixture& ref_filter() {
  static const FilterFixture fixture = [] {
    const Scenario& scenario = ref_scenario();
    const DescriptorSystem& sys = ref_system();
    FilterFixture f;
    f.design = design_observer_gain(sys, scenario.detection.window,
                                    scenario.detection.max_iterations,
                                    scenario.detection.residue_threshold);
    const DeviationTrajectory traj = integrate_attacked(sys, ref_attack());
    f.measurements = sys.c * traj.states;
    f.z0 = Vec::Zero(sys.n());
    f.step = traj.grid.step;
    return f;
  }();
  return fixture;
}

void Assemble(benchmark::State& state) {
  const Scenario& scenario = ref_scenario();
  for (auto _ : state) benchmark::DoNotOptimize(assemble(scenario.infra));
}
BENCHMARK(Assemble)->Unit(benchmark::kMillisecond);

void IntegrateAttack(benchmark::State& state) {
  const DescriptorSystem& sys = ref_system();
  const AttackScenario attack = ref_attack();
  long long steps = 0;
  for (auto _ : state) {
    const DeviationTrajectory traj = integrate_attacked(sys, attack);
    benchmark::DoNotOptimize(traj.states.data());
    steps += traj.grid.steps;
  }
  state.SetItemsProcessed(steps);
}
BENCHMARK(IntegrateAttack)->Unit(benchmark::kMillisecond);

void BuildPayoff(benchmark::State& state) {
  const DescriptorSystem& sys = ref_system();
  const GameFixture& game = ref_game();
  for (auto _ : state) {
    const PayoffMatrix payoff = build_payoff(sys, game.attacks, game.allocations, game.inputs);
    benchmark::DoNotOptimize(payoff.values.data());
  }
  state.counters["entries"] = static_cast<double>(ref_game().payoff.values.size());
}
BENCHMARK(BuildPayoff)->Unit(benchmark::kMillisecond);

void LpMinimax(benchmark::State& state) {
  const Mat& values = ref_game().payoff.values;
  for (auto _ : state) {
    const Equilibrium eq = lp_minimax(values);
    benchmark::DoNotOptimize(eq.value);
  }
}
BENCHMARK(LpMinimax)->Unit(benchmark::kMillisecond);

void FictitiousPlay(benchmark::State& state) {
  const Mat& values = ref_game().payoff.values;
  const Scenario& scenario = ref_scenario();
  long long iterations = 0;
  for (auto _ : state) {
    const Equilibrium eq =
        fictitious_play(values, scenario.solver.max_iterations, scenario.solver.tolerance);
    benchmark::DoNotOptimize(eq.value);
    iterations += eq.iterations;
  }
  state.SetItemsProcessed(iterations);
}
BENCHMARK(FictitiousPlay)->Unit(benchmark::kMillisecond);

void CentralizedFilter(benchmark::State& state) {
  const DescriptorSystem& sys = ref_system();
  const FilterFixture& f = ref_filter();
  for (auto _ : state) {
    const FilterRun run = centralized_filter(sys, f.design, f.measurements, f.z0, f.step);
    benchmark::DoNotOptimize(run.residues.data());
  }
}
BENCHMARK(CentralizedFilter)->Unit(benchmark::kMillisecond);

void RelaxedFilter(benchmark::State& state) {
  const DescriptorSystem& sys = ref_system();
  const BlockSplit split = split_block_diagonal(sys);
  const FilterFixture& f = ref_filter();
  int sweeps = 0;
  for (auto _ : state) {
    const RelaxationRun run =
        relax_distributed(sys, split, f.design, f.measurements, f.z0, f.step, 1e-9);
    benchmark::DoNotOptimize(run.residues.data());
    sweeps = run.sweeps;
  }
  state.counters["sweeps"] = sweeps;
}
BENCHMARK(RelaxedFilter)->Unit(benchmark::kMillisecond);

void EnumerateAllocations(benchmark::State& state) {
  const int subsystems = ref_system().subsystem_count();
  const long long budget = state.range(0);
  long long count = 0;
  for (auto _ : state) {
    const auto allocations = enumerate_allocations(subsystems, budget, 100, 100000000);
    benchmark::DoNotOptimize(allocations.data());
    count = static_cast<long long>(allocations.size());
  }
  state.counters["allocations"] = static_cast<double>(count);
}
BENCHMARK(EnumerateAllocations)->Arg(1200)->Arg(2400)->Arg(3600)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
