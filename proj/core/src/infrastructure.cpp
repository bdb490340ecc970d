#include "gridgame/infrastructure.hpp"

#include <set>
#include <string>

#include "gridgame/errors.hpp"

namespace gridgame {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) fail(Errc::InvalidScenario, message);
}

void insert_unique(std::set<std::string>& ids, const std::string& id, const std::string& where) {
  require(!id.empty(), where + ": empty id");
  require(ids.insert(id).second, where + ": duplicate id '" + id + "'");
}

void check_fluid(const FluidSpec& fluid, const std::string& net, std::set<std::string>& all_ids) {
  std::set<std::string> nodes;
  for (const auto& s : fluid.supplies) {
    insert_unique(all_ids, s.id, net + ".supplies");
    nodes.insert(s.id);
    require(s.head > 0.0, net + ".supplies[" + s.id + "].head must be positive");
  }
  for (const auto& s : fluid.storages) {
    insert_unique(all_ids, s.id, net + ".storages");
    nodes.insert(s.id);
    require(s.charge_ratio > 0.0, net + ".storages[" + s.id + "].charge_ratio must be positive");
    require(s.head > 0.0, net + ".storages[" + s.id + "].head must be positive");
  }
  for (const auto& j : fluid.junctions) {
    insert_unique(all_ids, j.id, net + ".junctions");
    nodes.insert(j.id);
    require(j.head > 0.0, net + ".junctions[" + j.id + "].head must be positive");
  }
  auto endpoint = [&](const std::string& id, const std::string& where) {
    require(nodes.count(id) != 0, where + ": unknown node '" + id + "'");
  };
  for (const auto& p : fluid.pipes) {
    endpoint(p.from, net + ".pipes");
    endpoint(p.to, net + ".pipes");
    require(p.from != p.to, net + ".pipes: self-loop at '" + p.from + "'");
    require(p.constant > 0.0, net + ".pipes[" + p.from + "->" + p.to + "].constant must be positive");
  }
  require(fluid.kind == FluidKind::Gas || fluid.compressors.empty(),
          net + ".compressors: only gas networks have compressors");
  for (const auto& c : fluid.compressors) {
    endpoint(c.from, net + ".compressors");
    endpoint(c.to, net + ".compressors");
    require(c.from != c.to, net + ".compressors: self-loop at '" + c.from + "'");
    require(c.power > 0.0, net + ".compressors[" + c.from + "->" + c.to + "].power must be positive");
    require(c.k1 > 0.0, net + ".compressors[" + c.from + "->" + c.to + "].k1 must be positive");
    require(c.alpha > 0.0, net + ".compressors[" + c.from + "->" + c.to + "].alpha must be positive");
  }
}

void check_couplings(const std::vector<CouplingSpec>& couplings, const FluidSpec& fluid,
                     const PowerSpec& power, const std::string& where) {
  std::set<std::string> state_nodes;
  for (const auto& s : fluid.storages) state_nodes.insert(s.id);
  for (const auto& j : fluid.junctions) state_nodes.insert(j.id);
  std::set<std::string> gens;
  for (const auto& g : power.generators) gens.insert(g.id);
  for (const auto& c : couplings) {
    require(state_nodes.count(c.node) != 0,
            where + ": '" + c.node + "' is not a storage or junction of that network");
    require(gens.count(c.generator) != 0, where + ": unknown generator '" + c.generator + "'");
    require(c.gain != 0.0, where + "[" + c.node + "->" + c.generator + "].gain must be nonzero");
  }
}

}  // namespace

void validate(const InfrastructureSpec& spec) {
  std::set<std::string> ids;

  require(!spec.power.generators.empty(), "power.generators: at least one generator required");
  std::set<std::string> electric_nodes;
  for (const auto& g : spec.power.generators) {
    insert_unique(ids, g.id, "power.generators");
    electric_nodes.insert(g.id);
    require(g.inertia > 0.0, "power.generators[" + g.id + "].inertia must be positive");
    require(g.damping >= 0.0, "power.generators[" + g.id + "].damping must be nonnegative");
    require(g.angle_cost >= 0.0 && g.speed_cost >= 0.0,
            "power.generators[" + g.id + "]: costs must be nonnegative");
  }
  for (const auto& b : spec.power.buses) {
    insert_unique(ids, b.id, "power.buses");
    electric_nodes.insert(b.id);
    require(b.angle_cost >= 0.0, "power.buses[" + b.id + "].angle_cost must be nonnegative");
  }
  for (const auto& br : spec.power.branches) {
    require(electric_nodes.count(br.from) != 0, "power.branches: unknown node '" + br.from + "'");
    require(electric_nodes.count(br.to) != 0, "power.branches: unknown node '" + br.to + "'");
    require(br.from != br.to, "power.branches: self-loop at '" + br.from + "'");
    require(br.susceptance > 0.0,
            "power.branches[" + br.from + "->" + br.to + "].susceptance must be positive");
  }
  for (const auto& t : spec.power.ground_ties) {
    require(electric_nodes.count(t.node) != 0, "power.ground_ties: unknown node '" + t.node + "'");
    require(t.susceptance > 0.0, "power.ground_ties[" + t.node + "].susceptance must be positive");
  }

  require(spec.gas.kind == FluidKind::Gas, "gas.kind must be gas");
  require(spec.water.kind == FluidKind::Water, "water.kind must be water");
  check_fluid(spec.gas, "gas", ids);
  check_fluid(spec.water, "water", ids);
  check_couplings(spec.gas_couplings, spec.gas, spec.power, "couplings.gas");
  check_couplings(spec.water_couplings, spec.water, spec.power, "couplings.water");
}

const char* bus_kind_name(BusKind kind) noexcept {
  switch (kind) {
    case BusKind::Compressor: return "compressor";
    case BusKind::Treatment: return "treatment";
    case BusKind::Other: return "other";
  }
  return "other";
}

BusKind bus_kind_from_name(const std::string& name) {
  if (name == "compressor") return BusKind::Compressor;
  if (name == "treatment") return BusKind::Treatment;
  if (name == "other") return BusKind::Other;
  fail(Errc::InvalidScenario, "unknown bus kind '" + name + "'");
}

const char* fluid_kind_name(FluidKind kind) noexcept {
  return kind == FluidKind::Gas ? "gas" : "water";
}

}  // namespace gridgame
