#include <doctest.h>

#include "fdo/fixtures.hpp"
#include "fdo/generator.hpp"
#include "fdo/metrics.hpp"
#include "support/oracle.hpp"

using namespace fdo;
Pid fd(int i) { return example::fdo(i); }
using example::op;

TEST_CASE("component counts of the example") {
  auto c1 = count_components(example_ecosystem(Model::record));
  CHECK(c1.formula == 10);
  CHECK(c1.measured == 10);
  auto c2 = count_components(example_ecosystem(Model::profile));
  CHECK(c2.formula == 14);
  CHECK(c2.exact());
  // Four FDOs, five operations, eight definitions.
  auto c3 = count_components(example_ecosystem(Model::attribute));
  CHECK(c3.formula == 17);
  CHECK(c3.exact());
}

TEST_CASE("component count of an ecosystem holding only the reserved definition") {
  Ecosystem eco(Model::record);
  eco.add_definition({Pid::parse("t/d"), std::string(keys::operation_ref),
                      ValueRestriction::reference(ComponentKind::operation_fdo)});
  auto c = count_components(eco);
  CHECK(c.formula == 1);
  CHECK(c.exact());
}

TEST_CASE("attribute counts of the example") {
  auto a1 = count_attributes(example_ecosystem(Model::record));
  CHECK(a1.formula == 6);
  CHECK(a1.measured == 6);
  auto a2 = count_attributes(example_ecosystem(Model::profile));
  CHECK(a2.formula == 7);
  CHECK(a2.measured == 7);
  // b = 3, 1, 1, 2 and d = 2, 1, 1, 2.
  auto a3 = count_attributes(example_ecosystem(Model::attribute));
  CHECK(a3.formula == 13);
  CHECK(a3.measured == 13);

  auto in = collect_inputs(example_ecosystem(Model::attribute));
  CHECK(in.associated_fdos == 4);
  CHECK(in.associated_operations == 4);
  CHECK(in.fdo_attribute_counts == std::vector<std::size_t>{3, 1, 1, 2});
  CHECK(in.operation_attribute_counts == std::vector<std::size_t>{2, 1, 1, 2});
  CHECK(collect_inputs(example_ecosystem(Model::profile)).associated_profiles == 3);
}

TEST_CASE("exact counts on generated ecosystems match the oracle") {
  for (Model m : kAllModels) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      GeneratorParams params;
      params.model = m;
      params.seed = seed;
      params.n_fdos = 5 + seed;
      params.association_density = 0.1 + 0.02 * double(seed % 20);
      auto eco = generate_ecosystem(params);
      auto c = count_components(eco);
      auto a = count_attributes(eco);
      CHECK(c.exact());
      CHECK(a.exact());
      CHECK(a.measured == oracle::association_attributes(eco));
    }
  }
}

TEST_CASE("query costs stay within their ceilings") {
  CHECK_THROWS_AS(measure_query_costs(example_ecosystem(Model::record), {}), Error);
  try {
    measure_query_costs(example_ecosystem(Model::record), {});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_sample);
  }

  for (Model m : kAllModels) {
    auto eco = example_ecosystem(m);
    auto sample = sample_pairs(eco, 1000, 0);
    CHECK(sample.size() == 20);
    auto measured = measure_query_costs(eco, sample);
    // 20 Q, 5 R, 4 S.
    CHECK(measured.size() == 29);
    for (const auto& q : measured) CHECK(q.within());
  }
  // Record typing reads exactly the ceiling.
  auto q = measure_query_costs(example_ecosystem(Model::record), std::vector<Association>{{fd(1), op(1)}});
  CHECK(q[0].measured == 4);
  CHECK(q[0].ceiling == 4);
}

TEST_CASE("sampled pairs are distinct and reproducible") {
  GeneratorParams params;
  params.n_fdos = 50;
  auto eco = generate_ecosystem(params);
  auto a = sample_pairs(eco, 100, 9);
  auto b = sample_pairs(eco, 100, 9);
  CHECK(a == b);
  CHECK(std::set<Association>(a.begin(), a.end()).size() == 100);
  CHECK(sample_pairs(Ecosystem(Model::record), 10, 0).empty());
}

TEST_CASE("update costs") {
  oracle::TempDir dir("metrics");

  SUBCASE("record typing: a new operation for seven FDOs is seven writes") {
    GeneratorParams params;
    params.n_fdos = 20;
    auto eco = generate_ecosystem(params);
    std::set<Pid> targets;
    for (const auto& [f, r] : eco.fdos()) {
      if (targets.size() < 7) targets.insert(f);
    }
    OperationSpec o{Pid::parse("21.O/new"), {}, ""};
    auto t = measure_new_operation(eco, o, targets, dir.path());
    CHECK(t.measured == 7);
    CHECK(t.formula == 7);
  }
  SUBCASE("attribute typing: a new operation costs nothing") {
    auto eco = example_ecosystem(Model::attribute);
    OperationSpec o{Pid::parse("ex/o6"), {{"gamma", std::nullopt}}, ""};
    auto t = measure_new_operation(eco, o, {}, dir.path());
    CHECK(t.measured == 0);
    CHECK(t.exact());
    CHECK(t.set_size == 3);
  }
  SUBCASE("profile typing: one write per profile, none for a new FDO") {
    auto eco = example_ecosystem(Model::profile);
    OperationSpec o{Pid::parse("ex/o6"), {}, ""};
    auto t = measure_new_operation(eco, o, {fd(2), fd(3), fd(4)}, dir.path());
    CHECK(t.measured == 2);
    CHECK(t.exact());

    InformationRecord f5{Pid::parse("ex/f5"), ComponentKind::data_fdo, {}, std::nullopt};
    f5.add(keys::profile_ref, example::profile(1).str());
    auto u = measure_new_fdo(eco, f5, {op(1), op(2), op(3)}, dir.path());
    CHECK(u.measured == 0);
    CHECK(u.exact());
  }
  SUBCASE("record typing: a new FDO with three operations") {
    auto eco = example_ecosystem(Model::record);
    InformationRecord f5{Pid::parse("ex/f5"), ComponentKind::data_fdo, {}, std::nullopt};
    f5.add(keys::profile_ref, example::profile(0).str());
    auto u = measure_new_fdo(eco, f5, {op(1), op(2), op(4)}, dir.path());
    CHECK(u.measured == 3);
    CHECK(u.exact());
  }
  SUBCASE("random scenarios") {
    for (Model m : kAllModels) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        GeneratorParams params;
        params.model = m;
        params.seed = seed;
        auto eco = generate_ecosystem(params);
        auto s = make_update_scenario(eco, seed);
        auto t = measure_new_operation(eco, s.new_op, s.targets, dir.path());
        auto u = measure_new_fdo(eco, s.new_fdo, s.fdo_ops, dir.path());
        CHECK(t.exact());
        CHECK(u.exact());
        if (m == Model::attribute) CHECK(t.measured == 0);
        if (m != Model::record) CHECK(u.measured == 0);
      }
    }
  }
}

TEST_CASE("full report") {
  oracle::TempDir dir("metrics");
  for (Model m : kAllModels) {
    MetricsOptions opts;
    opts.scratch = dir.path();
    auto rep = evaluate_metrics(example_ecosystem(m), opts);
    CHECK(rep.passed());
    CHECK(rep.rows.size() == 7);
    auto csv = to_csv(rep.rows);
    CHECK(csv.starts_with("model,measure,measured,ceiling,pass\n"));
    CHECK(csv.find(std::string(to_string(m)) + ",C,") != std::string::npos);
    CHECK(to_text(rep).find("|F|=4 |O|=5") != std::string::npos);
  }
  MetricsOptions only;
  only.measures = {Measure::C};
  auto rep = evaluate_metrics(example_ecosystem(Model::record), only);
  REQUIRE(rep.rows.size() == 1);
  CHECK(to_csv(rep.rows, false) == "record,C,10,10,true\n");
}

TEST_CASE("scaling on a short ladder") {
  const std::vector<std::size_t> ladder{10, 100, 300};
  auto rep = scaling_report(ladder, 0, 10);
  REQUIRE(rep.rungs.size() == 3);
  CHECK(rep.passed());
  CHECK(rep.rungs[0].s1_measured == 8);
  CHECK(rep.rungs[2].total_operation_attributes == 60);
  CHECK(to_csv(rep).starts_with("fdos,operations,"));
}
