#include <doctest.h>

#include "fdo/engine.hpp"
#include "fdo/fixtures.hpp"
#include "fdo/generator.hpp"
#include "support/oracle.hpp"

using namespace fdo;
Pid fd(int i) { return example::fdo(i); }
using example::op;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::io_error;
}

std::uint64_t steps_of(const std::function<void(StepCounter*)>& f) {
  StepCounter s;
  f(&s);
  return s.value();
}

}  // namespace

TEST_CASE("example relation in every model and strategy") {
  for (Model m : kAllModels) {
    for (Strategy s : {Strategy::scan, Strategy::indexed}) {
      CAPTURE(to_string(m));
      AssociationEngine e(example_ecosystem(m), {s});
      CHECK(e.relation() == example::relation());
      CHECK(e.ops_for_fdo(fd(1)) == std::set<Pid>{op(1), op(2), op(3)});
      CHECK(e.fdos_for_op(op(3)) == std::set<Pid>{fd(1), fd(2), fd(3)});
      CHECK(e.fdos_for_op(op(4)).empty());
      CHECK_FALSE(e.is_associated(fd(4), op(1)));
      CHECK(e.is_associated(fd(4), op(5)));
    }
  }
}

TEST_CASE("query errors") {
  AssociationEngine e(example_ecosystem(Model::record));
  CHECK(code_of([&] { e.ops_for_fdo(Pid::parse("ex/none")); }) == ErrorCode::unknown_pid);
  CHECK(code_of([&] { e.fdos_for_op(fd(1)); }) == ErrorCode::kind_mismatch);
  CHECK(code_of([&] { e.is_associated(op(1), op(1)); }) == ErrorCode::kind_mismatch);
  CHECK(code_of([&] { e.is_associated(fd(1), Pid::parse("ex/none")); }) == ErrorCode::unknown_pid);
}

TEST_CASE("scan step counts on the example") {
  AssociationEngine rec(example_ecosystem(Model::record), {Strategy::scan});
  AssociationEngine pro(example_ecosystem(Model::profile), {Strategy::scan});
  AssociationEngine att(example_ecosystem(Model::attribute), {Strategy::scan});

  // Whole record: profile reference plus three operation references.
  CHECK(steps_of([&](StepCounter* s) { rec.is_associated(fd(1), op(1), s); }) == 4);
  // Profile reference, then the three-element list.
  CHECK(steps_of([&](StepCounter* s) { pro.is_associated(fd(1), op(1), s); }) == 4);
  // Two requirements, four attributes, two key lookups.
  CHECK(steps_of([&](StepCounter* s) { att.is_associated(fd(1), op(1), s); }) == 8);
  // First lookup misses.
  CHECK(steps_of([&](StepCounter* s) { att.is_associated(fd(2), op(1), s); }) == 5);
  CHECK(steps_of([&](StepCounter* s) { att.is_associated(fd(4), op(1), s); }) == 6);

  // All four records read: 4 + 2 + 2 + 2.
  CHECK(steps_of([&](StepCounter* s) { rec.fdos_for_op(op(3), s); }) == 10);
  // Four one-attribute records, three distinct lists of lengths 3, 1, 1.
  CHECK(steps_of([&](StepCounter* s) { pro.fdos_for_op(op(3), s); }) == 9);

  AssociationEngine idx(example_ecosystem(Model::attribute));
  CHECK(steps_of([&](StepCounter* s) { idx.is_associated(fd(1), op(1), s); }) == 1);
  CHECK(steps_of([&](StepCounter* s) { idx.ops_for_fdo(fd(1), s); }) == 3);
  CHECK(steps_of([&](StepCounter* s) { idx.fdos_for_op(op(3), s); }) == 3);
}

TEST_CASE("value constraints and key-only matching") {
  auto eco = example_ecosystem(Model::attribute);
  OperationSpec strict{Pid::parse("ex/o6"), {{"gamma", "y"}}, ""};
  eco.add_operation(strict);
  AssociationEngine kv(eco, {Strategy::scan, MatchMode::key_value});
  AssociationEngine ko(eco, {Strategy::scan, MatchMode::key_only});
  CHECK(kv.fdos_for_op(strict.pid).empty());
  CHECK(ko.fdos_for_op(strict.pid) == std::set<Pid>{fd(1), fd(2), fd(3)});
  CHECK(oracle::as_pairs(kv.relation()) == oracle::relation(eco, false));
  CHECK(oracle::as_pairs(ko.relation()) == oracle::relation(eco, true));
}

TEST_CASE("an operation without required inputs applies to every FDO") {
  auto eco = example_ecosystem(Model::attribute);
  eco.add_operation({Pid::parse("ex/o0"), {}, ""});
  AssociationEngine e(eco);
  CHECK(e.fdos_for_op(Pid::parse("ex/o0")).size() == 4);
}

TEST_CASE("handshake on the index") {
  for (Model m : kAllModels) {
    AssociationEngine e(example_ecosystem(m));
    CHECK(e.index()->association_count() == 6);
    CHECK(e.index()->handshake_holds());
  }
  CHECK(AssociationEngine(example_ecosystem(Model::record), {Strategy::scan}).index() == nullptr);
}

TEST_CASE("new operation under record typing") {
  AssociationEngine e(example_ecosystem(Model::record));
  auto before = e.snapshot();
  OperationSpec o6{Pid::parse("ex/o6"), {}, ""};
  auto rep = e.associate_new_operation(o6, {fd(2), fd(4)});
  CHECK(rep.record_writes == 2);
  REQUIRE(rep.writes.size() == 3);
  CHECK(rep.writes[0].action == WriteAction::registration);
  CHECK(rep.writes[1].action == WriteAction::update);
  AssociationEngine after(rep.ecosystem);
  CHECK(after.fdos_for_op(o6.pid) == std::set<Pid>{fd(2), fd(4)});
  // The engine's own snapshot is untouched.
  CHECK(*e.snapshot() == *before);
  CHECK(code_of([&] { e.associate_new_operation({op(1), {}, ""}, {}); }) == ErrorCode::duplicate_pid);
}

TEST_CASE("new operation under profile typing") {
  AssociationEngine e(example_ecosystem(Model::profile));
  OperationSpec o6{Pid::parse("ex/o6"), {}, ""};
  auto rep = e.associate_new_operation(o6, {fd(2), fd(3), fd(4)});
  CHECK(rep.record_writes == 2);
  CHECK(rep.touched_profiles == std::set<Pid>{example::profile(2), example::profile(3)});
  CHECK(AssociationEngine(rep.ecosystem).fdos_for_op(o6.pid) == std::set<Pid>{fd(2), fd(3), fd(4)});

  try {
    e.associate_new_operation(o6, {fd(2)});
    FAIL("expected throw");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::unexpressible_target_set);
    CHECK(err.subjects() == std::vector<std::string>{fd(2).str()});
  }
}

TEST_CASE("new operation under attribute typing writes nothing but the operation") {
  AssociationEngine e(example_ecosystem(Model::attribute));
  OperationSpec o6{Pid::parse("ex/o6"), {{"gamma", std::nullopt}}, ""};
  auto rep = e.associate_new_operation(o6, {});
  CHECK(rep.record_writes == 0);
  CHECK(rep.writes.size() == 1);
  CHECK(rep.associated == std::set<Pid>{fd(1), fd(2), fd(3)});
}

TEST_CASE("new FDO") {
  SUBCASE("record typing: one update per operation") {
    AssociationEngine e(example_ecosystem(Model::record));
    InformationRecord f5{Pid::parse("ex/f5"), ComponentKind::data_fdo, {}, std::nullopt};
    f5.add(keys::profile_ref, example::profile(0).str());
    auto rep = e.associate_new_fdo(f5, {op(1), op(4)});
    CHECK(rep.record_writes == 2);
    CHECK(rep.writes.size() == 3);
    CHECK(AssociationEngine(rep.ecosystem).ops_for_fdo(f5.pid) == std::set<Pid>{op(1), op(4)});
  }
  SUBCASE("profile typing: operations follow from the profile") {
    AssociationEngine e(example_ecosystem(Model::profile));
    InformationRecord f5{Pid::parse("ex/f5"), ComponentKind::data_fdo, {}, std::nullopt};
    f5.add(keys::profile_ref, example::profile(2).str());
    auto rep = e.associate_new_fdo(f5, {op(3)});
    CHECK(rep.record_writes == 0);
    CHECK(rep.writes.size() == 1);
    try {
      e.associate_new_fdo(f5, {op(1)});
      FAIL("expected throw");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::model_mismatch);
      CHECK(err.subjects() == std::vector<std::string>{op(3).str()});
    }
    InformationRecord orphan{Pid::parse("ex/f6"), ComponentKind::data_fdo, {}, std::nullopt};
    CHECK(code_of([&] { e.associate_new_fdo(orphan, {}); }) == ErrorCode::unresolved_profile);
  }
  SUBCASE("attribute typing: operations follow from the attributes") {
    AssociationEngine e(example_ecosystem(Model::attribute));
    InformationRecord f5{Pid::parse("ex/f5"), ComponentKind::data_fdo, {}, std::nullopt};
    f5.add(keys::profile_ref, example::profile(0).str()).add("alpha", "x");
    CHECK(e.implied_ops(f5) == std::set<Pid>{op(2)});
    auto rep = e.associate_new_fdo(f5, {op(2)});
    CHECK(rep.record_writes == 0);
    CHECK(code_of([&] { e.associate_new_fdo(f5, {}); }) == ErrorCode::model_mismatch);
  }
  SUBCASE("invalid records are rejected") {
    AssociationEngine e(example_ecosystem(Model::record));
    InformationRecord f5{Pid::parse("ex/f5"), ComponentKind::data_fdo, {}, std::nullopt};
    f5.add("undefined-key", "x");
    CHECK(code_of([&] { e.associate_new_fdo(f5, {}); }) == ErrorCode::validation_failed);
    CHECK(code_of([&] { e.associate_new_fdo(example_ecosystem(Model::record).fdos().begin()->second, {}); }) ==
          ErrorCode::duplicate_pid);
  }
}

TEST_CASE("engines agree with the oracle on generated ecosystems") {
  for (Model m : kAllModels) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      GeneratorParams params;
      params.model = m;
      params.seed = seed;
      params.value_constraint_probability = 0.4;
      auto eco = generate_ecosystem(params);
      auto expected = oracle::relation(eco);
      for (Strategy s : {Strategy::scan, Strategy::indexed}) {
        AssociationEngine e(eco, {s});
        CHECK(oracle::as_pairs(e.relation()) == expected);
        for (const auto& [o, operation] : eco.operations()) {
          std::set<oracle::Pair> col;
          for (const auto& f : e.fdos_for_op(o)) col.emplace(f.str(), o.str());
          for (const auto& p : expected) {
            if (p.second == o.str()) CHECK(col.contains(p));
          }
        }
      }
    }
  }
}
