#include <doctest.h>

#include <cstdio>
#include <functional>
#include <optional>
#include <string>

#include "gridgame/descriptor_system.hpp"
#include "gridgame/errors.hpp"
#include "gridgame/scenario.hpp"
#include "oracles.hpp"

using namespace gridgame;
using gridgame::testing::error_code_of;

namespace {

std::string scenario_path(const char* name) {
  return std::string(GRIDGAME_SCENARIO_DIR) + "/" + name;
}

std::optional<std::string> message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.what();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("canonical text round-trips the built-in scenario") {
  const Scenario original = reference_scenario();
  const std::string text = scenario_to_text(original);
  const Scenario reparsed = parse_scenario(text);
  CHECK(scenario_to_text(reparsed) == text);
  CHECK(scenario_hash(reparsed) == scenario_hash(original));
  CHECK(reparsed.name == original.name);
  CHECK(reparsed.game.budget == 1200);
  CHECK(reparsed.game.granularity == 100);
  CHECK(reparsed.game.max_attack_size == 5);
  CHECK(reparsed.attack.states == std::vector<std::string>{"h(gs1)"});
  CHECK(reparsed.infra.partition.size() == 6);
}

TEST_CASE("the checked-in reference file matches the built-in scenario") {
  const Scenario from_file = load_scenario(scenario_path("reference.json"));
  CHECK(scenario_to_text(from_file) == scenario_to_text(reference_scenario()));
  CHECK(scenario_hash(from_file) == scenario_hash(reference_scenario()));
}

TEST_CASE("the fingerprint tracks every field") {
  const Scenario base = reference_scenario();
  Scenario tweaked = base;
  tweaked.game.budget = 1300;
  CHECK(scenario_hash(tweaked) != scenario_hash(base));
  tweaked = base;
  tweaked.infra.power.generators[0].inertia = 0.21;
  CHECK(scenario_hash(tweaked) != scenario_hash(base));
  tweaked = base;
  tweaked.attack.waveform.magnitude = 0.51;
  CHECK(scenario_hash(tweaked) != scenario_hash(base));
  tweaked = base;
  tweaked.description += "!";
  CHECK(scenario_hash(tweaked) != scenario_hash(base));
}

TEST_CASE("the algebraic example loads and assembles") {
  const Scenario scenario = load_scenario(scenario_path("algebraic.json"));
  const DescriptorSystem sys = assemble(scenario.infra);
  CHECK(sys.n() == 10);
  int algebraic = 0;
  for (const auto& state : sys.states) algebraic += state.algebraic ? 1 : 0;
  CHECK(algebraic == 4);  // two bus angles, two junction heads
  CHECK(sys.finite_eigenvalues.size() == 6);
  CHECK(sys.stability_margin < 0.0);
  CHECK(scenario.infra.power.buses.size() == 2);
  CHECK(scenario.infra.gas.compressors.size() == 1);
}

TEST_CASE("unknown keys are rejected with their path") {
  const Scenario base = reference_scenario();
  std::string text = scenario_to_text(base);
  text.insert(text.find("\"attack\""), "\"attak\": {},\n  ");
  const auto message = message_of([&] { (void)parse_scenario(text); });
  REQUIRE(message.has_value());
  CHECK(message->find("attak") != std::string::npos);
  CHECK(error_code_of([&] { (void)parse_scenario(text); }) == Errc::InvalidScenario);
}

TEST_CASE("malformed scenarios name the offending field") {
  auto mutate = [](const std::string& from, const std::string& to) {
    std::string text = scenario_to_text(reference_scenario());
    const auto at = text.find(from);
    REQUIRE(at != std::string::npos);
    text.replace(at, from.size(), to);
    return text;
  };

  SUBCASE("bad waveform kind") {
    const std::string text = mutate("\"kind\": \"pulse\"", "\"kind\": \"sawtooth\"");
    const auto message = message_of([&] { (void)parse_scenario(text); });
    REQUIRE(message.has_value());
    CHECK(message->find("sawtooth") != std::string::npos);
  }
  SUBCASE("pulse without a stop") {
    const std::string text = mutate("\"stop\": 4", "\"stopp\": 4");
    CHECK(error_code_of([&] { (void)parse_scenario(text); }) == Errc::InvalidScenario);
  }
  SUBCASE("non-numeric inertia") {
    const std::string text = mutate("\"inertia\": 0.2,", "\"inertia\": \"big\",");
    const auto message = message_of([&] { (void)parse_scenario(text); });
    REQUIRE(message.has_value());
    CHECK(message->find("inertia") != std::string::npos);
  }
  SUBCASE("negative budget") {
    const std::string text = mutate("\"budget\": 1200", "\"budget\": -5");
    CHECK(error_code_of([&] { (void)parse_scenario(text); }) == Errc::InvalidScenario);
  }
  SUBCASE("zero granularity") {
    const std::string text = mutate("\"granularity\": 100", "\"granularity\": 0");
    CHECK(error_code_of([&] { (void)parse_scenario(text); }) == Errc::InvalidScenario);
  }
  SUBCASE("fractional link count") {
    const std::string text = mutate("\"budget\": 1200", "\"budget\": 1200.5");
    CHECK(error_code_of([&] { (void)parse_scenario(text); }) == Errc::InvalidScenario);
  }
  SUBCASE("not json at all") {
    CHECK(error_code_of([] { (void)parse_scenario("pure nonsense"); }) == Errc::InvalidScenario);
  }
}

TEST_CASE("missing files raise an io error") {
  CHECK(error_code_of([] { (void)load_scenario("/nonexistent/nowhere.json"); }) == Errc::Io);
}

TEST_CASE("save and reload preserves the canonical form") {
  const Scenario scenario = reference_scenario();
  const std::string path = "roundtrip_scenario_tmp.json";
  save_scenario(scenario, path);
  const Scenario reloaded = load_scenario(path);
  CHECK(scenario_to_text(reloaded) == scenario_to_text(scenario));
  std::remove(path.c_str());
}

TEST_CASE("structural validation runs at parse time") {
  // duplicating a generator id must be caught before assembly
  std::string text = scenario_to_text(reference_scenario());
  const std::string g2 = "\"id\": \"g2\"";
  const auto at = text.find(g2);
  REQUIRE(at != std::string::npos);
  text.replace(at, g2.size(), "\"id\": \"g1\"");
  const auto message = message_of([&] { (void)parse_scenario(text); });
  REQUIRE(message.has_value());
  CHECK(message->find("g1") != std::string::npos);
}
