#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridgame/infrastructure.hpp"
#include "gridgame/waveform.hpp"

namespace gridgame {

/// Attack displayed by `simulate`: which states, what waveform, how long.
struct AttackConfig {
  std::vector<std::string> states;  // state labels, e.g. "h(gs1)"
  Waveform waveform;
  double horizon = 5.0;
  double step = 1e-3;
};

struct GameConfig {
  int max_attack_size = 1;                 // K
  std::vector<std::string> attacker_pool;  // labels; empty = every state
  double window = 5.0;                     // observation window T
  long long budget = 0;                    // total communication links
  int granularity = 1;                     // link block size g
  long long attack_cap = 2000000;
  long long allocation_cap = 2000000;
};

struct DetectionConfig {
  double window = 5.0;
  int max_iterations = 250;
  double residue_threshold = 1e-5;
};

struct SolverConfig {
  long long max_iterations = 2000000;  // fictitious play cap
  double tolerance = 1e-3;             // duality gap target
};

struct Scenario {
  std::string name;
  std::string description;
  InfrastructureSpec infra;
  AttackConfig attack;
  GameConfig game;
  DetectionConfig detection;
  SolverConfig solver;
};

/// Strict JSON parsing: unknown keys, missing fields and malformed values
/// all raise InvalidScenario with the offending path.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);  // Io on filesystem trouble

/// Canonical serialization (sorted keys, shortest round-trip numbers):
/// parse_scenario(scenario_to_text(s)) reproduces s exactly.
std::string scenario_to_text(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::string& path);

/// Fingerprint of the canonical text, recorded in every report.
uint64_t scenario_hash(const Scenario& scenario);

/// Built-in example: four-generator grid, two gas storages, two water tanks,
/// six subsystems, five-link attack budget 1200 at granularity 100.
Scenario reference_scenario();

}  // namespace gridgame
