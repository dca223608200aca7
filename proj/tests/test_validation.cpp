#include <doctest.h>

#include <algorithm>
#include <random>

#include "fdo/fixtures.hpp"
#include "fdo/generator.hpp"
#include "fdo/validation.hpp"

using namespace fdo;

namespace {

Ecosystem small(Model model) {
  Ecosystem eco(model);
  eco.add_definition({Pid::parse("t/d-pr"), std::string(keys::profile_ref),
                      ValueRestriction::reference(ComponentKind::profile)});
  eco.add_definition({Pid::parse("t/d-or"), std::string(keys::operation_ref),
                      ValueRestriction::reference(ComponentKind::operation_fdo)});
  eco.add_definition({Pid::parse("t/d-ol"), std::string(keys::operation_list), ValueRestriction::any()});
  eco.add_definition({Pid::parse("t/d-ri"), std::string(keys::required_input), ValueRestriction::any()});
  eco.add_definition({Pid::parse("t/d-title"), "title", ValueRestriction::any()});
  eco.add_definition({Pid::parse("t/d-size"), "size", ValueRestriction::enumeration({"s", "m", "l"})});
  eco.add_profile({Pid::parse("t/p"), {std::string(keys::profile_ref), "title"}, {"size"}, {}});
  eco.add_operation({Pid::parse("t/o"), {}, "exec://o"});
  return eco;
}

InformationRecord fdo_record(std::string_view pid) {
  return InformationRecord{Pid::parse(pid), ComponentKind::data_fdo, {}, std::nullopt};
}

bool has(const std::vector<Violation>& vs, ViolationKind kind, std::string_view key) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind && v.key == key; });
}

}  // namespace

TEST_CASE("conforming record") {
  auto eco = small(Model::record);
  auto r = fdo_record("t/f");
  r.add(keys::profile_ref, "t/p").add("title", "x").add("size", "m").add(keys::operation_ref, "t/o");
  CHECK(validate_record(r, eco).empty());
}

TEST_CASE("each violation kind") {
  auto eco = small(Model::record);

  SUBCASE("missing mandatory") {
    auto r = fdo_record("t/f");
    r.add(keys::profile_ref, "t/p");
    auto vs = validate_record(r, eco);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0] == Violation{ViolationKind::missing_mandatory, "title", ""});
  }
  SUBCASE("unregistered key") {
    auto r = fdo_record("t/f");
    r.add(keys::profile_ref, "t/p").add("title", "x").add("colour", "red");
    CHECK(has(validate_record(r, eco), ViolationKind::unregistered_key, "colour"));
  }
  SUBCASE("restricted value") {
    auto r = fdo_record("t/f");
    r.add(keys::profile_ref, "t/p").add("title", "x").add("size", "xl");
    CHECK(has(validate_record(r, eco), ViolationKind::restricted_value, "size"));
  }
  SUBCASE("reference to the wrong kind") {
    auto r = fdo_record("t/f");
    r.add(keys::profile_ref, "t/p").add("title", "x").add(keys::operation_ref, "t/p");
    CHECK(has(validate_record(r, eco), ViolationKind::restricted_value, keys::operation_ref));
  }
  SUBCASE("missing profile") {
    auto r = fdo_record("t/f");
    r.add("title", "x");
    auto vs = validate_record(r, eco);
    CHECK(has(vs, ViolationKind::missing_profile, keys::profile_ref));
  }
  SUBCASE("two profile references") {
    auto r = fdo_record("t/f");
    r.add(keys::profile_ref, "t/p").add(keys::profile_ref, "t/p").add("title", "x");
    CHECK(has(validate_record(r, eco), ViolationKind::restricted_value, keys::profile_ref));
  }
}

TEST_CASE("unresolved profile throws") {
  auto eco = small(Model::record);
  auto r = fdo_record("t/f");
  // Resolves as a Pid but names nothing in the ecosystem; the restriction
  // check also reports it.
  r.add(keys::profile_ref, "t/ghost");
  try {
    validate_record(r, eco);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unresolved_profile);
    CHECK(e.subjects() == std::vector<std::string>{"t/ghost"});
  }
  eco.add_fdo(r);
  auto all = validate_ecosystem(eco);
  CHECK(std::any_of(all.begin(), all.end(), [](const ComponentViolation& cv) {
    return cv.violation.kind == ViolationKind::missing_profile;
  }));
}

TEST_CASE("model fields outside their model are violations") {
  SUBCASE("operation reference under profile typing") {
    auto eco = small(Model::profile);
    auto r = fdo_record("t/f");
    r.add(keys::profile_ref, "t/p").add("title", "x").add(keys::operation_ref, "t/o");
    CHECK(has(validate_record(r, eco), ViolationKind::restricted_value, keys::operation_ref));
  }
  SUBCASE("required inputs under record typing") {
    auto eco = small(Model::record);
    OperationSpec op{Pid::parse("t/o2"), {{"title", std::nullopt}}, ""};
    CHECK(has(validate_component(op, eco), ViolationKind::restricted_value, keys::required_input));
    eco.set_model(Model::attribute);
    CHECK(validate_component(op, eco).empty());
  }
  SUBCASE("operation list under attribute typing") {
    auto eco = small(Model::attribute);
    Profile p{Pid::parse("t/p2"), {}, {}, {Pid::parse("t/o")}};
    CHECK(has(validate_component(p, eco), ViolationKind::restricted_value, keys::operation_list));
    eco.set_model(Model::profile);
    CHECK(validate_component(p, eco).empty());
  }
}

TEST_CASE("profile and operation checks") {
  auto eco = small(Model::profile);
  Profile p{Pid::parse("t/p2"), {"title", "nope"}, {"title"}, {Pid::parse("t/ghost")}};
  auto vs = validate_component(p, eco);
  CHECK(has(vs, ViolationKind::unregistered_key, "nope"));
  CHECK(has(vs, ViolationKind::restricted_value, "title"));
  CHECK(has(vs, ViolationKind::restricted_value, keys::operation_list));

  eco.set_model(Model::attribute);
  OperationSpec op{Pid::parse("t/o2"), {{"size", "xl"}, {"nope", std::nullopt}}, ""};
  auto ov = validate_component(op, eco);
  CHECK(has(ov, ViolationKind::restricted_value, "size"));
  CHECK(has(ov, ViolationKind::unregistered_key, "nope"));
}

TEST_CASE("violations are sorted and independent of attribute order") {
  auto eco = small(Model::record);
  std::mt19937_64 rng(11);
  const std::vector<std::pair<std::string, std::string>> attrs{
      {std::string(keys::profile_ref), "t/p"}, {"size", "xl"}, {"colour", "red"}, {"shape", "round"},
      {std::string(keys::operation_ref), "t/nothing"}, {"size", "s"}};
  std::vector<Violation> first;
  for (int round = 0; round < 200; ++round) {
    auto order = attrs;
    std::shuffle(order.begin(), order.end(), rng);
    auto r = fdo_record("t/f");
    for (const auto& [k, v] : order) r.add(k, v);
    auto vs = validate_record(r, eco);
    CHECK(std::is_sorted(vs.begin(), vs.end()));
    if (round == 0) {
      first = vs;
      CHECK(has(vs, ViolationKind::missing_mandatory, "title"));
    } else {
      CHECK(vs == first);
    }
  }
}

TEST_CASE("fixtures and generated ecosystems validate cleanly") {
  for (Model m : kAllModels) {
    CAPTURE(to_string(m));
    CHECK(validate_ecosystem(example_ecosystem(m)).empty());
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      GeneratorParams params;
      params.model = m;
      params.seed = seed;
      params.value_constraint_probability = 0.3;
      CHECK(validate_ecosystem(generate_ecosystem(params)).empty());
    }
  }
}
