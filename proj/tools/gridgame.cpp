// Command-line front end: build / simulate / solve / sweep a scenario and
// emit bit-stable CSV/JSON reports.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gridgame/errors.hpp"
#include "gridgame/experiment.hpp"
#include "gridgame/scenario.hpp"

namespace {

using namespace gridgame;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::CapExceeded:
      return 4;
    case Errc::IrregularPencil:
    case Errc::UnstableSystem:
    case Errc::SingularStepMatrix:
    case Errc::PoleEvaluation:
    case Errc::NotHurwitz:
    case Errc::NumericalFailure:
      return 3;
    default:
      return 2;  // scenario/data/usage problems
  }
}

struct CommonArgs {
  std::string scenario_path;
  std::string out_dir = "out";
  uint64_t seed = 0;
  bool emit_reference = false;
};

Scenario load(const CommonArgs& args) {
  if (args.emit_reference || args.scenario_path.empty()) return reference_scenario();
  return load_scenario(args.scenario_path);
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--scenario", args.scenario_path, "scenario JSON file (omit for the built-in reference)");
  cmd->add_option("--out", args.out_dir, "output directory for reports")->capture_default_str();
  cmd->add_option("--seed", args.seed, "seed recorded in report provenance")->capture_default_str();
}

void add_solve_overrides(CLI::App* cmd, SolveOverrides& overrides) {
  cmd->add_option("--budget", overrides.budget, "total communication links (overrides scenario)");
  cmd->add_option("--granularity", overrides.granularity, "allocation block size (overrides scenario)");
  cmd->add_option("--restrict-attacker", overrides.restrict_attacker,
                  "attacker pool: 'electric', 'all', or comma-joined state labels");
  cmd->add_option("--restrict-defender", overrides.restrict_defender,
                  "defender allocations: 'all' or 'electric'");
  cmd->add_option("--max-iters", overrides.max_iterations, "fictitious play iteration cap");
  cmd->add_option("--tol", overrides.tolerance, "fictitious play duality gap target");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interdependent-infrastructure attack/defense game engine"};
  app.require_subcommand(1);

  CommonArgs build_args, simulate_args, solve_args, sweep_args;
  SolveOverrides solve_overrides, sweep_overrides;
  std::vector<long long> sweep_budgets;
  std::string reference_out;

  CLI::App* build = app.add_subcommand("build", "assemble the descriptor system and report it");
  add_common(build, build_args);

  CLI::App* simulate = app.add_subcommand("simulate", "integrate the configured attack");
  add_common(simulate, simulate_args);

  CLI::App* solve = app.add_subcommand("solve", "build the payoff matrix and find the equilibrium");
  add_common(solve, solve_args);
  add_solve_overrides(solve, solve_overrides);

  CLI::App* sweep = app.add_subcommand("sweep", "equilibrium value across budgets");
  add_common(sweep, sweep_args);
  add_solve_overrides(sweep, sweep_overrides);
  sweep->add_option("--budgets", sweep_budgets,
                    "budgets to sweep (default: scenario budget +0%/+20%/+40%)");

  CLI::App* reference =
      app.add_subcommand("reference", "write the built-in reference scenario to a file");
  reference->add_option("path", reference_out, "destination file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      const BuildReport report = run_build(load(build_args), build_args.seed);
      write_build_report(report, build_args.out_dir);
      std::cout << build_summary(report);
    } else if (simulate->parsed()) {
      const SimulateReport report = run_simulate(load(simulate_args), simulate_args.seed);
      write_simulate_report(report, simulate_args.out_dir);
      std::cout << simulate_summary(report);
    } else if (solve->parsed()) {
      solve_overrides.seed = solve_args.seed;
      const SolveReport report = run_solve(load(solve_args), solve_overrides);
      write_solve_report(report, solve_args.out_dir);
      std::cout << solve_summary(report);
    } else if (sweep->parsed()) {
      sweep_overrides.seed = sweep_args.seed;
      const SweepReport report = run_sweep(load(sweep_args), sweep_budgets, sweep_overrides);
      write_sweep_report(report, sweep_args.out_dir);
      std::cout << sweep_summary(report);
    } else if (reference->parsed()) {
      save_scenario(reference_scenario(), reference_out);
      std::cout << "wrote reference scenario to " << reference_out << '\n';
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return exit_code_for(err.code());
  } catch (const std::exception& err) {
    std::cerr << "unexpected error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
