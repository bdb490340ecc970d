#include "gridgame/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gridgame/errors.hpp"
#include "gridgame/hashing.hpp"

namespace gridgame {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& message) {
  fail(Errc::InvalidScenario, path + ": " + message);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) bad(path, "unknown field '" + key + "'");
  }
}

const json* find(const json& obj, const char* key) {
  if (!obj.is_object()) return nullptr;
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& need(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) bad(path, "expected an object");
  const json* v = find(obj, key);
  if (!v) bad(path, std::string("missing field '") + key + "'");
  return *v;
}

double need_number(const json& obj, const std::string& path, const char* key) {
  const json& v = need(obj, path, key);
  if (!v.is_number()) bad(path + "." + key, "expected a number");
  return v.get<double>();
}

double opt_number(const json& obj, const std::string& path, const char* key, double fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number()) bad(path + "." + key, "expected a number");
  return v->get<double>();
}

long long need_integer(const json& obj, const std::string& path, const char* key) {
  const json& v = need(obj, path, key);
  if (!v.is_number_integer()) bad(path + "." + key, "expected an integer");
  return v.get<long long>();
}

long long opt_integer(const json& obj, const std::string& path, const char* key,
                      long long fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) bad(path + "." + key, "expected an integer");
  return v->get<long long>();
}

std::string need_string(const json& obj, const std::string& path, const char* key) {
  const json& v = need(obj, path, key);
  if (!v.is_string()) bad(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::string opt_string(const json& obj, const std::string& path, const char* key,
                       const std::string& fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_string()) bad(path + "." + key, "expected a string");
  return v->get<std::string>();
}

bool opt_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_boolean()) bad(path + "." + key, "expected a boolean");
  return v->get<bool>();
}

std::vector<std::string> opt_string_list(const json& obj, const std::string& path,
                                         const char* key) {
  const json* v = find(obj, key);
  std::vector<std::string> out;
  if (!v) return out;
  if (!v->is_array()) bad(path + "." + key, "expected an array of strings");
  for (const auto& item : *v) {
    if (!item.is_string()) bad(path + "." + key, "expected an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

const json& need_array(const json& obj, const std::string& path, const char* key) {
  const json& v = need(obj, path, key);
  if (!v.is_array()) bad(path + "." + key, "expected an array");
  return v;
}

const json* opt_array(const json& obj, const std::string& path, const char* key) {
  const json* v = find(obj, key);
  if (v && !v->is_array()) bad(path + "." + key, "expected an array");
  return v;
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

Waveform parse_waveform(const json& obj, const std::string& path) {
  check_keys(obj, path, {"kind", "magnitude", "start", "stop", "frequency_hz"});
  Waveform w;
  w.kind = waveform_kind_from_name(need_string(obj, path, "kind"));
  w.magnitude = need_number(obj, path, "magnitude");
  w.start = opt_number(obj, path, "start", 0.0);
  if (w.start < 0.0) bad(path + ".start", "must be nonnegative");
  if (w.kind == WaveformKind::Pulse) {
    w.stop = need_number(obj, path, "stop");
    if (!(w.stop > w.start)) bad(path + ".stop", "must exceed start");
  }
  if (w.kind == WaveformKind::Sine) {
    w.frequency_hz = need_number(obj, path, "frequency_hz");
    if (!(w.frequency_hz > 0.0)) bad(path + ".frequency_hz", "must be positive");
  }
  return w;
}

PowerSpec parse_power(const json& obj, const std::string& path) {
  check_keys(obj, path, {"generators", "buses", "branches", "ground_ties"});
  PowerSpec power;
  for (const auto& g : need_array(obj, path, "generators")) {
    const std::string p = path + ".generators";
    check_keys(g, p, {"id", "inertia", "damping", "gas_fired", "angle_cost", "speed_cost"});
    GeneratorSpec spec;
    spec.id = need_string(g, p, "id");
    spec.inertia = need_number(g, p, "inertia");
    spec.damping = need_number(g, p, "damping");
    spec.gas_fired = opt_bool(g, p, "gas_fired", false);
    spec.angle_cost = opt_number(g, p, "angle_cost", 0.0);
    spec.speed_cost = opt_number(g, p, "speed_cost", 0.0);
    power.generators.push_back(std::move(spec));
  }
  if (const json* arr = opt_array(obj, path, "buses")) {
    for (const auto& b : *arr) {
      const std::string p = path + ".buses";
      check_keys(b, p, {"id", "kind", "angle_cost"});
      BusSpec spec;
      spec.id = need_string(b, p, "id");
      spec.kind = bus_kind_from_name(opt_string(b, p, "kind", "other"));
      spec.angle_cost = opt_number(b, p, "angle_cost", 0.0);
      power.buses.push_back(std::move(spec));
    }
  }
  if (const json* arr = opt_array(obj, path, "branches")) {
    for (const auto& br : *arr) {
      const std::string p = path + ".branches";
      check_keys(br, p, {"from", "to", "susceptance"});
      power.branches.push_back(
          {need_string(br, p, "from"), need_string(br, p, "to"), need_number(br, p, "susceptance")});
    }
  }
  if (const json* arr = opt_array(obj, path, "ground_ties")) {
    for (const auto& t : *arr) {
      const std::string p = path + ".ground_ties";
      check_keys(t, p, {"node", "susceptance"});
      power.ground_ties.push_back({need_string(t, p, "node"), need_number(t, p, "susceptance")});
    }
  }
  return power;
}

FluidSpec parse_fluid(const json* obj, const std::string& path, FluidKind kind) {
  FluidSpec fluid;
  fluid.kind = kind;
  if (!obj) return fluid;
  check_keys(*obj, path, {"supplies", "storages", "junctions", "pipes", "compressors"});
  if (const json* arr = opt_array(*obj, path, "supplies")) {
    for (const auto& s : *arr) {
      const std::string p = path + ".supplies";
      check_keys(s, p, {"id", "head"});
      fluid.supplies.push_back({need_string(s, p, "id"), need_number(s, p, "head")});
    }
  }
  if (const json* arr = opt_array(*obj, path, "storages")) {
    for (const auto& s : *arr) {
      const std::string p = path + ".storages";
      check_keys(s, p, {"id", "charge_ratio", "head"});
      fluid.storages.push_back({need_string(s, p, "id"), need_number(s, p, "charge_ratio"),
                                need_number(s, p, "head")});
    }
  }
  if (const json* arr = opt_array(*obj, path, "junctions")) {
    for (const auto& j : *arr) {
      const std::string p = path + ".junctions";
      check_keys(j, p, {"id", "head"});
      fluid.junctions.push_back({need_string(j, p, "id"), need_number(j, p, "head")});
    }
  }
  if (const json* arr = opt_array(*obj, path, "pipes")) {
    for (const auto& pp : *arr) {
      const std::string p = path + ".pipes";
      check_keys(pp, p, {"from", "to", "constant"});
      fluid.pipes.push_back(
          {need_string(pp, p, "from"), need_string(pp, p, "to"), need_number(pp, p, "constant")});
    }
  }
  if (const json* arr = opt_array(*obj, path, "compressors")) {
    for (const auto& c : *arr) {
      const std::string p = path + ".compressors";
      check_keys(c, p, {"from", "to", "power", "k1", "k2", "alpha"});
      fluid.compressors.push_back({need_string(c, p, "from"), need_string(c, p, "to"),
                                   need_number(c, p, "power"), need_number(c, p, "k1"),
                                   need_number(c, p, "k2"), need_number(c, p, "alpha")});
    }
  }
  return fluid;
}

std::vector<CouplingSpec> parse_couplings(const json* arr, const std::string& path) {
  std::vector<CouplingSpec> out;
  if (!arr) return out;
  if (!arr->is_array()) bad(path, "expected an array");
  for (const auto& c : *arr) {
    check_keys(c, path, {"node", "generator", "gain"});
    out.push_back(
        {need_string(c, path, "node"), need_string(c, path, "generator"), need_number(c, path, "gain")});
  }
  return out;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& ex) {
    fail(Errc::InvalidScenario, std::string("malformed JSON: ") + ex.what());
  }
  if (!root.is_object()) fail(Errc::InvalidScenario, "top level must be an object");
  check_keys(root, "scenario",
             {"name", "description", "power", "gas", "water", "couplings", "partition",
              "measured", "attack", "game", "detection", "solver"});

  Scenario s;
  s.name = opt_string(root, "scenario", "name", "unnamed");
  s.description = opt_string(root, "scenario", "description", "");
  s.infra.power = parse_power(need(root, "scenario", "power"), "power");
  s.infra.gas = parse_fluid(find(root, "gas"), "gas", FluidKind::Gas);
  s.infra.water = parse_fluid(find(root, "water"), "water", FluidKind::Water);
  if (const json* couplings = find(root, "couplings")) {
    check_keys(*couplings, "couplings", {"gas", "water"});
    s.infra.gas_couplings = parse_couplings(find(*couplings, "gas"), "couplings.gas");
    s.infra.water_couplings = parse_couplings(find(*couplings, "water"), "couplings.water");
  }
  if (const json* partition = opt_array(root, "scenario", "partition")) {
    for (const auto& block : *partition) {
      if (!block.is_array()) bad("partition", "expected arrays of component ids");
      std::vector<std::string> ids;
      for (const auto& id : block) {
        if (!id.is_string()) bad("partition", "expected arrays of component ids");
        ids.push_back(id.get<std::string>());
      }
      s.infra.partition.push_back(std::move(ids));
    }
  }
  s.infra.measured = opt_string_list(root, "scenario", "measured");

  if (const json* attack = find(root, "attack")) {
    check_keys(*attack, "attack", {"states", "waveform", "horizon", "step"});
    s.attack.states = opt_string_list(*attack, "attack", "states");
    if (const json* w = find(*attack, "waveform"))
      s.attack.waveform = parse_waveform(*w, "attack.waveform");
    s.attack.horizon = opt_number(*attack, "attack", "horizon", s.attack.horizon);
    s.attack.step = opt_number(*attack, "attack", "step", s.attack.step);
    if (!(s.attack.horizon > 0.0)) bad("attack.horizon", "must be positive");
    if (!(s.attack.step > 0.0)) bad("attack.step", "must be positive");
  }

  if (const json* game = find(root, "game")) {
    check_keys(*game, "game",
               {"max_attack_size", "attacker_pool", "window", "budget", "granularity",
                "attack_cap", "allocation_cap"});
    s.game.max_attack_size =
        static_cast<int>(opt_integer(*game, "game", "max_attack_size", s.game.max_attack_size));
    s.game.attacker_pool = opt_string_list(*game, "game", "attacker_pool");
    s.game.window = opt_number(*game, "game", "window", s.game.window);
    s.game.budget = opt_integer(*game, "game", "budget", s.game.budget);
    s.game.granularity =
        static_cast<int>(opt_integer(*game, "game", "granularity", s.game.granularity));
    s.game.attack_cap = opt_integer(*game, "game", "attack_cap", s.game.attack_cap);
    s.game.allocation_cap = opt_integer(*game, "game", "allocation_cap", s.game.allocation_cap);
    if (s.game.max_attack_size < 1) bad("game.max_attack_size", "must be at least 1");
    if (!(s.game.window > 0.0)) bad("game.window", "must be positive");
    if (s.game.budget < 0) bad("game.budget", "must be nonnegative");
    if (s.game.granularity < 1) bad("game.granularity", "must be positive");
    if (s.game.attack_cap < 1 || s.game.allocation_cap < 1)
      bad("game", "caps must be positive");
  }

  if (const json* det = find(root, "detection")) {
    check_keys(*det, "detection", {"window", "max_iterations", "residue_threshold"});
    s.detection.window = opt_number(*det, "detection", "window", s.detection.window);
    s.detection.max_iterations = static_cast<int>(
        opt_integer(*det, "detection", "max_iterations", s.detection.max_iterations));
    s.detection.residue_threshold =
        opt_number(*det, "detection", "residue_threshold", s.detection.residue_threshold);
    if (!(s.detection.window > 0.0)) bad("detection.window", "must be positive");
    if (s.detection.max_iterations < 1) bad("detection.max_iterations", "must be at least 1");
    if (!(s.detection.residue_threshold > 0.0)) bad("detection.residue_threshold", "must be positive");
  }

  if (const json* solver = find(root, "solver")) {
    check_keys(*solver, "solver", {"max_iterations", "tolerance"});
    s.solver.max_iterations =
        opt_integer(*solver, "solver", "max_iterations", s.solver.max_iterations);
    s.solver.tolerance = opt_number(*solver, "solver", "tolerance", s.solver.tolerance);
    if (s.solver.max_iterations < 1) bad("solver.max_iterations", "must be at least 1");
    if (s.solver.tolerance < 0.0) bad("solver.tolerance", "must be nonnegative");
  }

  validate(s.infra);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::Io, "cannot open scenario file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

namespace {

json waveform_to_json(const Waveform& w) {
  json j;
  j["kind"] = waveform_kind_name(w.kind);
  j["magnitude"] = w.magnitude;
  j["start"] = w.start;
  if (w.kind == WaveformKind::Pulse) j["stop"] = w.stop;
  if (w.kind == WaveformKind::Sine) j["frequency_hz"] = w.frequency_hz;
  return j;
}

json fluid_to_json(const FluidSpec& fluid) {
  json j;
  j["supplies"] = json::array();
  for (const auto& s : fluid.supplies) j["supplies"].push_back({{"id", s.id}, {"head", s.head}});
  j["storages"] = json::array();
  for (const auto& s : fluid.storages)
    j["storages"].push_back({{"id", s.id}, {"charge_ratio", s.charge_ratio}, {"head", s.head}});
  j["junctions"] = json::array();
  for (const auto& jn : fluid.junctions)
    j["junctions"].push_back({{"id", jn.id}, {"head", jn.head}});
  j["pipes"] = json::array();
  for (const auto& p : fluid.pipes)
    j["pipes"].push_back({{"from", p.from}, {"to", p.to}, {"constant", p.constant}});
  if (fluid.kind == FluidKind::Gas) {
    j["compressors"] = json::array();
    for (const auto& c : fluid.compressors)
      j["compressors"].push_back({{"from", c.from},
                                  {"to", c.to},
                                  {"power", c.power},
                                  {"k1", c.k1},
                                  {"k2", c.k2},
                                  {"alpha", c.alpha}});
  }
  return j;
}

json couplings_to_json(const std::vector<CouplingSpec>& couplings) {
  json arr = json::array();
  for (const auto& c : couplings)
    arr.push_back({{"node", c.node}, {"generator", c.generator}, {"gain", c.gain}});
  return arr;
}

}  // namespace

std::string scenario_to_text(const Scenario& s) {
  json root;
  root["name"] = s.name;
  root["description"] = s.description;

  json power;
  power["generators"] = json::array();
  for (const auto& g : s.infra.power.generators)
    power["generators"].push_back({{"id", g.id},
                                   {"inertia", g.inertia},
                                   {"damping", g.damping},
                                   {"gas_fired", g.gas_fired},
                                   {"angle_cost", g.angle_cost},
                                   {"speed_cost", g.speed_cost}});
  power["buses"] = json::array();
  for (const auto& b : s.infra.power.buses)
    power["buses"].push_back(
        {{"id", b.id}, {"kind", bus_kind_name(b.kind)}, {"angle_cost", b.angle_cost}});
  power["branches"] = json::array();
  for (const auto& br : s.infra.power.branches)
    power["branches"].push_back(
        {{"from", br.from}, {"to", br.to}, {"susceptance", br.susceptance}});
  power["ground_ties"] = json::array();
  for (const auto& t : s.infra.power.ground_ties)
    power["ground_ties"].push_back({{"node", t.node}, {"susceptance", t.susceptance}});
  root["power"] = power;

  root["gas"] = fluid_to_json(s.infra.gas);
  root["water"] = fluid_to_json(s.infra.water);
  root["couplings"] = {{"gas", couplings_to_json(s.infra.gas_couplings)},
                       {"water", couplings_to_json(s.infra.water_couplings)}};
  root["partition"] = s.infra.partition;
  root["measured"] = s.infra.measured;

  root["attack"] = {{"states", s.attack.states},
                    {"waveform", waveform_to_json(s.attack.waveform)},
                    {"horizon", s.attack.horizon},
                    {"step", s.attack.step}};
  root["game"] = {{"max_attack_size", s.game.max_attack_size},
                  {"attacker_pool", s.game.attacker_pool},
                  {"window", s.game.window},
                  {"budget", s.game.budget},
                  {"granularity", s.game.granularity},
                  {"attack_cap", s.game.attack_cap},
                  {"allocation_cap", s.game.allocation_cap}};
  root["detection"] = {{"window", s.detection.window},
                       {"max_iterations", s.detection.max_iterations},
                       {"residue_threshold", s.detection.residue_threshold}};
  root["solver"] = {{"max_iterations", s.solver.max_iterations},
                    {"tolerance", s.solver.tolerance}};
  return root.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::Io, "cannot write scenario file '" + path + "'");
  out << scenario_to_text(scenario);
  if (!out) fail(Errc::Io, "short write to '" + path + "'");
}

uint64_t scenario_hash(const Scenario& scenario) {
  return fnv1a(scenario_to_text(scenario));
}

Scenario reference_scenario() {
  Scenario s;
  s.name = "reference";
  s.description =
      "Four-generator grid fed by two gas storages and cooled from two water tanks; "
      "six control subsystems share the communication budget.";

  s.infra.power.generators = {
      {"g1", 0.20, 0.34, true, 320.0, 840.0},
      {"g2", 0.24, 0.40, true, 300.0, 780.0},
      {"g3", 0.18, 0.31, false, 340.0, 900.0},
      {"g4", 0.22, 0.38, false, 310.0, 820.0},
  };
  s.infra.power.branches = {
      {"g1", "g2", 1.25}, {"g2", "g3", 1.10}, {"g3", "g4", 1.30},
      {"g4", "g1", 1.15}, {"g1", "g3", 0.85},
  };
  s.infra.power.ground_ties = {{"g2", 0.55}, {"g4", 0.60}};

  s.infra.gas.kind = FluidKind::Gas;
  s.infra.gas.supplies = {{"gw1", 3.2}};
  s.infra.gas.storages = {{"gs1", 0.55, 2.4}, {"gs2", 0.50, 1.7}};
  s.infra.gas.pipes = {{"gw1", "gs1", 1.6}, {"gs1", "gs2", 0.7}};

  s.infra.water.kind = FluidKind::Water;
  s.infra.water.supplies = {{"ww1", 2.8}};
  s.infra.water.storages = {{"ws1", 0.35, 2.1}, {"ws2", 0.30, 1.5}};
  s.infra.water.pipes = {{"ww1", "ws1", 1.1}, {"ws1", "ws2", 0.85}};

  s.infra.gas_couplings = {{"gs1", "g1", 2.2}, {"gs2", "g2", 1.8}};
  s.infra.water_couplings = {{"ws1", "g3", 1.6}, {"ws2", "g4", 1.4}};

  s.infra.partition = {{"g1", "g2"}, {"g3", "g4"}, {"gs1"}, {"gs2"}, {"ws1"}, {"ws2"}};

  s.attack.states = {"h(gs1)"};
  s.attack.waveform.kind = WaveformKind::Pulse;
  s.attack.waveform.magnitude = 0.5;
  s.attack.waveform.start = 1.0;
  s.attack.waveform.stop = 4.0;
  s.attack.horizon = 5.0;
  s.attack.step = 1e-3;

  s.game.max_attack_size = 5;
  s.game.window = 5.0;
  s.game.budget = 1200;
  s.game.granularity = 100;
  s.game.attack_cap = 2000000;
  s.game.allocation_cap = 6000000;

  s.detection.window = 5.0;
  s.detection.max_iterations = 250;
  s.detection.residue_threshold = 1e-5;

  s.solver.max_iterations = 2000000;
  s.solver.tolerance = 1e-3;
  return s;
}

}  // namespace gridgame
