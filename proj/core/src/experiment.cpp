#include "gridgame/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "gridgame/csv.hpp"
#include "gridgame/errors.hpp"
#include "gridgame/strategies.hpp"

namespace gridgame {

namespace {

using nlohmann::json;

RunMeta make_meta(const Scenario& scenario, uint64_t seed) {
  RunMeta meta;
  meta.scenario_name = scenario.name;
  meta.scenario_fingerprint = scenario_hash(scenario);
  meta.seed = seed;
  return meta;
}

std::string hex_fingerprint(uint64_t value) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

json meta_to_json(const RunMeta& meta) {
  return {{"scenario", meta.scenario_name},
          {"fingerprint", hex_fingerprint(meta.scenario_fingerprint)},
          {"seed", meta.seed},
          {"version", meta.version}};
}

std::filesystem::path ensure_dir(const std::string& out_dir) {
  std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(Errc::Io, "cannot create output directory '" + out_dir + "': " + ec.message());
  return dir;
}

void write_json(const json& payload, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::Io, "cannot write '" + path.string() + "'");
  out << payload.dump(2) << '\n';
  if (!out) fail(Errc::Io, "short write to '" + path.string() + "'");
}

const char* kind_name(StateKind kind) {
  switch (kind) {
    case StateKind::RotorAngle: return "rotor-angle";
    case StateKind::RotorSpeed: return "rotor-speed";
    case StateKind::BusAngle: return "bus-angle";
    case StateKind::GasHead: return "gas-head";
    case StateKind::WaterHead: return "water-head";
  }
  return "unknown";
}

std::vector<int> labels_to_indices(const DescriptorSystem& sys,
                                   const std::vector<std::string>& labels,
                                   const std::string& where) {
  std::vector<int> out;
  out.reserve(labels.size());
  for (const auto& label : labels) {
    const int idx = sys.state_index(label);
    if (idx < 0) fail(Errc::InvalidScenario, where + ": unknown state '" + label + "'");
    out.push_back(idx);
  }
  return out;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

/// Fraction shown next to a baseline: how much worse `cost` is than `base`.
double percent_over(double cost, double base) {
  if (std::abs(base) < 1e-300) return 0.0;
  return 100.0 * (cost / base - 1.0);
}

json support_to_json(const Vec& mixture, double threshold,
                     const std::function<std::string(int)>& describe) {
  std::vector<int> order;
  for (int i = 0; i < mixture.size(); ++i)
    if (mixture[i] > threshold) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (mixture[a] != mixture[b]) return mixture[a] > mixture[b];
    return a < b;
  });
  json arr = json::array();
  for (int i : order)
    arr.push_back({{"index", i}, {"probability", mixture[i]}, {"strategy", describe(i)}});
  return arr;
}

}  // namespace

std::string attack_label(const DescriptorSystem& sys, const std::vector<int>& attack) {
  std::string out;
  for (size_t k = 0; k < attack.size(); ++k) {
    if (k) out += '|';
    out += sys.states[attack[k]].label;
  }
  return out;
}

std::string allocation_label(const std::vector<int>& allocation) {
  std::string out;
  for (size_t k = 0; k < allocation.size(); ++k) {
    if (k) out += '-';
    out += std::to_string(allocation[k]);
  }
  return out;
}

std::vector<int> resolve_pool(const DescriptorSystem& sys, const Scenario& scenario,
                              const std::string& restriction) {
  std::string spec = restriction;
  if (spec.empty() && !scenario.game.attacker_pool.empty())
    return labels_to_indices(sys, scenario.game.attacker_pool, "game.attacker_pool");
  if (spec.empty()) spec = "all";

  std::vector<int> pool;
  if (spec == "all") {
    pool.resize(sys.n());
    for (int i = 0; i < sys.n(); ++i) pool[i] = i;
  } else if (spec == "electric") {
    pool = sys.electric_states();
  } else {
    pool = labels_to_indices(sys, split_commas(spec), "attacker restriction");
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (pool.empty()) fail(Errc::InvalidScenario, "attacker pool is empty");
  return pool;
}

// ---------------------------------------------------------------------------
// build
// ---------------------------------------------------------------------------

BuildReport run_build(const Scenario& scenario, uint64_t seed) {
  BuildReport report;
  report.meta = make_meta(scenario, seed);
  report.system = assemble(scenario.infra);
  return report;
}

void write_build_report(const BuildReport& report, const std::string& out_dir) {
  const auto dir = ensure_dir(out_dir);
  const DescriptorSystem& sys = report.system;

  json doc;
  doc["meta"] = meta_to_json(report.meta);
  doc["dimensions"] = {{"states", sys.n()},
                       {"outputs", sys.outputs()},
                       {"subsystems", sys.subsystem_count()}};
  doc["stability_margin"] = sys.stability_margin;
  doc["coupling_density"] = sys.coupling_density;
  json eigs = json::array();
  for (const auto& ev : sys.finite_eigenvalues) eigs.push_back({ev.real(), ev.imag()});
  doc["finite_eigenvalues"] = eigs;
  json states = json::array();
  for (int i = 0; i < sys.n(); ++i) {
    const StateInfo& info = sys.states[i];
    states.push_back({{"label", info.label},
                      {"component", info.component},
                      {"kind", kind_name(info.kind)},
                      {"algebraic", info.algebraic},
                      {"subsystem", info.subsystem},
                      {"electric", sys.state_electric(i)},
                      {"cost", sys.cost[i]}});
  }
  doc["states"] = states;
  write_json(doc, dir / "build.json");
}

std::string build_summary(const BuildReport& report) {
  const DescriptorSystem& sys = report.system;
  std::ostringstream out;
  out << "system '" << report.meta.scenario_name << "': " << sys.n() << " states, "
      << sys.outputs() << " outputs, " << sys.subsystem_count() << " subsystems\n";
  int algebraic = 0;
  for (const auto& info : sys.states) algebraic += info.algebraic ? 1 : 0;
  out << "  algebraic states: " << algebraic
      << ", coupling density: " << format_number(sys.coupling_density) << "\n";
  out << "  stability margin: " << format_number(sys.stability_margin)
      << " (finite pencil eigenvalues: " << sys.finite_eigenvalues.size() << ")\n";
  for (const auto& ev : sys.finite_eigenvalues) {
    char line[96];
    std::snprintf(line, sizeof(line), "    %+.6f %+.6fi\n", ev.real(), ev.imag());
    out << line;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

SimulateReport run_simulate(const Scenario& scenario, uint64_t seed) {
  SimulateReport report;
  report.meta = make_meta(scenario, seed);
  report.system = assemble(scenario.infra);

  report.attacked = labels_to_indices(report.system, scenario.attack.states, "attack.states");
  AttackScenario attack;
  attack.states = report.attacked;
  attack.waveform = scenario.attack.waveform;
  attack.horizon = scenario.attack.horizon;
  attack.step = scenario.attack.step;

  report.trajectory = integrate_attacked(report.system, attack);
  report.combined_cost = running_cost(report.system, report.trajectory);
  report.per_state.reserve(report.attacked.size());
  for (int state : report.attacked)
    report.per_state.push_back(cost_profile(report.system, state, attack.waveform, attack.horizon,
                                            attack.step));
  return report;
}

void write_simulate_report(const SimulateReport& report, const std::string& out_dir) {
  const auto dir = ensure_dir(out_dir);
  const DescriptorSystem& sys = report.system;
  const Grid& grid = report.trajectory.grid;

  CsvWriter traj((dir / "trajectory.csv").string());
  traj.cell(std::string("time"));
  for (const auto& info : sys.states) traj.cell(info.label);
  traj.end_row();
  for (int k = 0; k < grid.nodes(); ++k) {
    traj.cell(grid.time(k));
    for (int i = 0; i < sys.n(); ++i) traj.cell(report.trajectory.states(i, k));
    traj.end_row();
  }
  traj.close();

  CsvWriter cost((dir / "cost.csv").string());
  cost.cell(std::string("time")).cell(std::string("total"));
  for (int state : report.attacked) cost.cell(sys.states[state].label);
  cost.end_row();
  for (int k = 0; k < grid.nodes(); ++k) {
    cost.cell(grid.time(k));
    cost.cell(report.combined_cost[k]);
    for (const auto& profile : report.per_state) cost.cell(profile.cumulative[k]);
    cost.end_row();
  }
  cost.close();

  json doc;
  doc["meta"] = meta_to_json(report.meta);
  json attacked = json::array();
  for (int state : report.attacked) attacked.push_back(sys.states[state].label);
  doc["attacked"] = attacked;
  doc["scheme"] = report.trajectory.scheme;
  doc["step"] = grid.step;
  doc["horizon"] = grid.horizon();
  doc["max_algebraic_residual"] = report.trajectory.max_algebraic_residual;
  doc["final_cost"] = report.combined_cost.size() > 0
                          ? report.combined_cost[report.combined_cost.size() - 1]
                          : 0.0;
  json per_state = json::array();
  for (size_t k = 0; k < report.per_state.size(); ++k) {
    const Vec& cum = report.per_state[k].cumulative;
    per_state.push_back({{"state", sys.states[report.attacked[k]].label},
                         {"final_cost", cum.size() > 0 ? cum[cum.size() - 1] : 0.0}});
  }
  doc["per_state"] = per_state;
  write_json(doc, dir / "simulate.json");
}

std::string simulate_summary(const SimulateReport& report) {
  const DescriptorSystem& sys = report.system;
  std::ostringstream out;
  out << "simulated " << report.trajectory.grid.horizon() << " s at step "
      << format_number(report.trajectory.grid.step) << " (" << report.trajectory.scheme << ")\n";
  if (report.attacked.empty()) {
    out << "  null attack: deviations identically zero\n";
  } else {
    out << "  attacked:";
    for (int state : report.attacked) out << ' ' << sys.states[state].label;
    out << '\n';
  }
  const double total = report.combined_cost.size() > 0
                           ? report.combined_cost[report.combined_cost.size() - 1]
                           : 0.0;
  out << "  cost deviation over the horizon: " << format_number(total) << '\n';
  out << "  max algebraic residual: " << format_number(report.trajectory.max_algebraic_residual)
      << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<int>> defender_allocations(const DescriptorSystem& sys,
                                                   const std::string& restriction,
                                                   long long budget, int granularity,
                                                   long long cap) {
  if (restriction.empty() || restriction == "all")
    return enumerate_allocations(sys.subsystem_count(), budget, granularity, cap);
  if (restriction == "electric") return electric_allocations(sys, budget, granularity, cap);
  fail(Errc::InvalidScenario,
       "defender restriction must be 'all' or 'electric', got '" + restriction + "'");
}

}  // namespace

SolveReport run_solve(const Scenario& scenario, const SolveOverrides& overrides) {
  SolveReport report;
  report.meta = make_meta(scenario, overrides.seed);
  report.system = assemble(scenario.infra);

  report.budget = overrides.budget >= 0 ? overrides.budget : scenario.game.budget;
  report.granularity = overrides.granularity >= 1 ? overrides.granularity : scenario.game.granularity;
  report.attacker_restriction = overrides.restrict_attacker.empty()
                                    ? (scenario.game.attacker_pool.empty() ? "all" : "scenario")
                                    : overrides.restrict_attacker;
  report.defender_restriction =
      overrides.restrict_defender.empty() ? "all" : overrides.restrict_defender;

  report.pool = resolve_pool(report.system, scenario, overrides.restrict_attacker);
  const auto attacks =
      enumerate_attacks(report.pool, scenario.game.max_attack_size, scenario.game.attack_cap);
  const auto allocations =
      defender_allocations(report.system, overrides.restrict_defender, report.budget,
                           report.granularity, scenario.game.allocation_cap);

  PayoffInputs inputs;
  inputs.waveform = scenario.attack.waveform;
  inputs.window = scenario.game.window;
  inputs.step = scenario.attack.step;
  report.payoff = build_payoff(report.system, attacks, allocations, inputs);

  const long long max_iterations =
      overrides.max_iterations >= 1 ? overrides.max_iterations : scenario.solver.max_iterations;
  const double tolerance =
      overrides.tolerance >= 0.0 ? overrides.tolerance : scenario.solver.tolerance;
  report.play = fictitious_play(report.payoff.values, max_iterations, tolerance);
  report.exact = lp_minimax(report.payoff.values);
  report.value_agreement = std::abs(report.play.value - report.exact.value);
  report.indifference =
      indifference_gap(report.payoff.values, report.exact.attacker, report.exact.defender);
  report.baseline = equal_allocation_baseline(report.payoff, report.exact.attacker);
  return report;
}

void write_solve_report(const SolveReport& report, const std::string& out_dir) {
  const auto dir = ensure_dir(out_dir);
  const DescriptorSystem& sys = report.system;
  const PayoffMatrix& payoff = report.payoff;
  const auto rows = static_cast<int>(payoff.attacks.size());
  const auto cols = static_cast<int>(payoff.allocations.size());

  CsvWriter matrix((dir / "payoff.csv").string());
  matrix.cell(std::string("attack"));
  for (const auto& alloc : payoff.allocations) matrix.cell(allocation_label(alloc));
  matrix.end_row();
  for (int r = 0; r < rows; ++r) {
    matrix.cell(attack_label(sys, payoff.attacks[r]));
    for (int c = 0; c < cols; ++c) matrix.cell(payoff.values(r, c));
    matrix.end_row();
  }
  matrix.close();

  CsvWriter attacker((dir / "attacker_mixture.csv").string());
  attacker.cell(std::string("index"))
      .cell(std::string("attack"))
      .cell(std::string("play"))
      .cell(std::string("exact"));
  attacker.end_row();
  for (int r = 0; r < rows; ++r) {
    attacker.cell(r)
        .cell(attack_label(sys, payoff.attacks[r]))
        .cell(report.play.attacker[r])
        .cell(report.exact.attacker[r]);
    attacker.end_row();
  }
  attacker.close();

  CsvWriter defender((dir / "defender_mixture.csv").string());
  defender.cell(std::string("index"))
      .cell(std::string("allocation"))
      .cell(std::string("play"))
      .cell(std::string("exact"));
  defender.end_row();
  for (int c = 0; c < cols; ++c) {
    defender.cell(c)
        .cell(allocation_label(payoff.allocations[c]))
        .cell(report.play.defender[c])
        .cell(report.exact.defender[c]);
    defender.end_row();
  }
  defender.close();

  const auto equilibrium_json = [](const Equilibrium& eq) {
    return json{{"method", eq.method},
                {"value", eq.value},
                {"upper_value", eq.upper_value},
                {"lower_value", eq.lower_value},
                {"gap", eq.gap()},
                {"iterations", eq.iterations},
                {"converged", eq.converged},
                {"degenerate_pivots", eq.degenerate_pivots}};
  };

  json doc;
  doc["meta"] = meta_to_json(report.meta);
  doc["budget"] = report.budget;
  doc["granularity"] = report.granularity;
  doc["restrictions"] = {{"attacker", report.attacker_restriction},
                         {"defender", report.defender_restriction}};
  json pool = json::array();
  for (int state : report.pool) pool.push_back(sys.states[state].label);
  doc["pool"] = pool;
  doc["counts"] = {{"attacks", rows}, {"allocations", cols}};
  doc["window"] = payoff.window;
  doc["payoff_fingerprint"] = hex_fingerprint(payoff.config_hash);
  doc["play"] = equilibrium_json(report.play);
  doc["exact"] = equilibrium_json(report.exact);
  doc["value_agreement"] = report.value_agreement;
  doc["indifference"] = report.indifference;
  doc["baseline"] = {{"allocation", report.baseline.allocation},
                     {"column", report.baseline.column},
                     {"exact_split", report.baseline.exact},
                     {"mixture_loss", report.baseline.mixture_loss},
                     {"best_response_loss", report.baseline.best_response_loss},
                     {"best_response", report.baseline.best_response_row >= 0
                                           ? attack_label(sys, payoff.attacks[report.baseline.best_response_row])
                                           : ""}};
  doc["attacker_support"] = support_to_json(report.exact.attacker, 1e-6, [&](int r) {
    return attack_label(sys, payoff.attacks[r]);
  });
  doc["defender_support"] = support_to_json(report.exact.defender, 1e-6, [&](int c) {
    return allocation_label(payoff.allocations[c]);
  });
  write_json(doc, dir / "solve.json");
}

std::string solve_summary(const SolveReport& report) {
  const DescriptorSystem& sys = report.system;
  const PayoffMatrix& payoff = report.payoff;
  std::ostringstream out;
  out << "game: " << payoff.attacks.size() << " attacks x " << payoff.allocations.size()
      << " allocations (budget " << report.budget << ", granularity " << report.granularity
      << ")\n";
  char line[256];
  std::snprintf(line, sizeof(line),
                "value %.6g (exact), fictitious play %.6g after %lld iterations (gap %.3g, %s)\n",
                report.exact.value, report.play.value,
                static_cast<long long>(report.play.iterations), report.play.gap(),
                report.play.converged ? "converged" : "hit the iteration cap");
  out << line;
  std::snprintf(line, sizeof(line), "indifference residual %.3g, solver agreement %.3g\n",
                report.indifference, report.value_agreement);
  out << line;

  const auto print_support = [&](const char* title, const Vec& mixture,
                                 const std::function<std::string(int)>& describe) {
    out << title << '\n';
    std::vector<int> order;
    for (int i = 0; i < mixture.size(); ++i)
      if (mixture[i] > 1e-6) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (mixture[a] != mixture[b]) return mixture[a] > mixture[b];
      return a < b;
    });
    for (int i : order) {
      std::snprintf(line, sizeof(line), "  %.3f  %s\n", mixture[i], describe(i).c_str());
      out << line;
    }
  };
  print_support("attacker mixture:", report.exact.attacker,
                [&](int r) { return "{" + attack_label(sys, payoff.attacks[r]) + "}"; });
  print_support("defender mixture:", report.exact.defender,
                [&](int c) { return "(" + allocation_label(payoff.allocations[c]) + ")"; });

  std::snprintf(line, sizeof(line),
                "equal allocation (%s)%s: mixture loss %.6g (%+.1f%% vs value), best response "
                "%.6g (%+.1f%% vs mixture)\n",
                allocation_label(report.baseline.allocation).c_str(),
                report.baseline.exact ? "" : " [most balanced available]",
                report.baseline.mixture_loss,
                percent_over(report.baseline.mixture_loss, report.exact.value),
                report.baseline.best_response_loss,
                percent_over(report.baseline.best_response_loss, report.baseline.mixture_loss));
  out << line;
  return out.str();
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

SweepReport run_sweep(const Scenario& scenario, std::vector<long long> budgets,
                      const SolveOverrides& overrides) {
  SweepReport report;
  report.meta = make_meta(scenario, overrides.seed);
  const DescriptorSystem sys = assemble(scenario.infra);

  const int granularity =
      overrides.granularity >= 1 ? overrides.granularity : scenario.game.granularity;
  if (budgets.empty()) {
    const long long base = overrides.budget >= 0 ? overrides.budget : scenario.game.budget;
    for (double factor : {1.0, 1.2, 1.4}) {
      const auto raw = static_cast<long long>(std::floor(base * factor));
      budgets.push_back(raw / granularity * granularity);
    }
  }
  std::sort(budgets.begin(), budgets.end());
  budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
  if (budgets.size() < 2)
    fail(Errc::InvalidScenario, "budget sweep needs at least two distinct budgets");

  const auto pool = resolve_pool(sys, scenario, overrides.restrict_attacker);
  const auto attacks =
      enumerate_attacks(pool, scenario.game.max_attack_size, scenario.game.attack_cap);
  report.attack_count = static_cast<long long>(attacks.size());

  PayoffInputs inputs;
  inputs.waveform = scenario.attack.waveform;
  inputs.window = scenario.game.window;
  inputs.step = scenario.attack.step;

  for (long long budget : budgets) {
    const auto allocations = defender_allocations(sys, overrides.restrict_defender, budget,
                                                  granularity, scenario.game.allocation_cap);
    const PayoffMatrix payoff = build_payoff(sys, attacks, allocations, inputs);
    const Equilibrium exact = lp_minimax(payoff.values);
    const BaselineReport baseline = equal_allocation_baseline(payoff, exact.attacker);

    SweepPoint point;
    point.budget = budget;
    point.allocation_count = static_cast<long long>(allocations.size());
    point.value = exact.value;
    point.equal_mixture = baseline.mixture_loss;
    point.equal_best_response = baseline.best_response_loss;
    report.points.push_back(point);
  }
  return report;
}

void write_sweep_report(const SweepReport& report, const std::string& out_dir) {
  const auto dir = ensure_dir(out_dir);

  CsvWriter csv((dir / "sweep.csv").string());
  csv.cell(std::string("budget"))
      .cell(std::string("allocations"))
      .cell(std::string("value"))
      .cell(std::string("equal_mixture"))
      .cell(std::string("equal_best_response"));
  csv.end_row();
  for (const SweepPoint& point : report.points) {
    csv.cell(point.budget)
        .cell(point.allocation_count)
        .cell(point.value)
        .cell(point.equal_mixture)
        .cell(point.equal_best_response);
    csv.end_row();
  }
  csv.close();

  json doc;
  doc["meta"] = meta_to_json(report.meta);
  doc["attack_count"] = report.attack_count;
  json points = json::array();
  for (const SweepPoint& point : report.points)
    points.push_back({{"budget", point.budget},
                      {"allocations", point.allocation_count},
                      {"value", point.value},
                      {"equal_mixture", point.equal_mixture},
                      {"equal_best_response", point.equal_best_response}});
  doc["points"] = points;
  write_json(doc, dir / "sweep.json");
}

std::string sweep_summary(const SweepReport& report) {
  std::ostringstream out;
  out << "budget sweep over " << report.points.size() << " budgets, " << report.attack_count
      << " attacks\n";
  char line[160];
  for (const SweepPoint& point : report.points) {
    std::snprintf(line, sizeof(line),
                  "  budget %6lld: value %.6g, equal split %.6g, best response %.6g\n",
                  point.budget, point.value, point.equal_mixture, point.equal_best_response);
    out << line;
  }
  return out.str();
}

}  // namespace gridgame
