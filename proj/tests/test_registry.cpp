#include <doctest.h>

#include <fstream>
#include <thread>

#include "fdo/fixtures.hpp"
#include "fdo/generator.hpp"
#include "fdo/ndrec.hpp"
#include "fdo/registry.hpp"
#include "support/oracle.hpp"

using namespace fdo;
namespace fs = std::filesystem;

namespace {

RegistryStore::Clock fixed_clock() {
  return [] { return std::chrono::system_clock::time_point(std::chrono::milliseconds(1700000000123)); };
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void seed_definitions(RegistryStore& store) {
  store.register_component(AttributeDefinition{Pid::parse("t/d-pr"), std::string(keys::profile_ref),
                                               ValueRestriction::reference(ComponentKind::profile)},
                           Namespace::attribute_defs);
  store.register_component(AttributeDefinition{Pid::parse("t/d-or"), std::string(keys::operation_ref),
                                               ValueRestriction::reference(ComponentKind::operation_fdo)},
                           Namespace::attribute_defs);
  store.register_component(AttributeDefinition{Pid::parse("t/d-title"), "title", ValueRestriction::any()},
                           Namespace::attribute_defs);
  store.register_component(Profile{Pid::parse("t/p"), {std::string(keys::profile_ref), "title"}, {}, {}},
                           Namespace::profiles);
}

InformationRecord sample_fdo(std::string_view pid, std::string_view title = "x") {
  InformationRecord r{Pid::parse(pid), ComponentKind::data_fdo, {}, "bits://x"};
  r.add(keys::profile_ref, "t/p").add("title", title);
  return r;
}

}  // namespace

TEST_CASE("timestamps are ISO 8601 UTC with milliseconds") {
  CHECK(format_timestamp(fixed_clock()()) == "2023-11-14T22:13:20.123Z");
}

TEST_CASE("namespaces") {
  for (auto ns : kAllNamespaces) CHECK(parse_namespace(to_string(ns)) == ns);
  CHECK_THROWS_AS(parse_namespace("elsewhere"), Error);
  CHECK(namespace_for(ComponentKind::data_fdo) == Namespace::handles);
  CHECK(namespace_for(ComponentKind::operation_fdo) == Namespace::operations);
}

TEST_CASE("create, register, resolve") {
  oracle::TempDir dir("registry");
  auto store = RegistryStore::create(dir.path(), Model::record, fixed_clock());
  CHECK(store.model() == Model::record);
  CHECK_THROWS_AS(RegistryStore::create(dir.path(), Model::record), Error);

  seed_definitions(store);
  store.register_component(sample_fdo("t/f1"), Namespace::handles);

  auto resolved = store.resolve(Pid::parse("t/f1"));
  REQUIRE(std::holds_alternative<InformationRecord>(resolved));
  CHECK(std::get<InformationRecord>(resolved) == sample_fdo("t/f1"));

  try {
    store.resolve(Pid::parse("t/nothing"));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_found);
  }

  SUBCASE("operations resolve as operation records") {
    store.register_component(OperationSpec{Pid::parse("t/o"), {}, "exec://o"}, Namespace::operations);
    auto r = store.resolve(Pid::parse("t/o"));
    REQUIRE(std::holds_alternative<InformationRecord>(r));
    CHECK(std::get<InformationRecord>(r).kind == ComponentKind::operation_fdo);
    CHECK(std::get<InformationRecord>(r).payload_ref == "exec://o");
  }
  SUBCASE("errors") {
    auto code_of = [&](auto&& f) {
      try {
        f();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::io_error;
    };
    CHECK(code_of([&] { store.register_component(sample_fdo("t/f1"), Namespace::handles); }) ==
          ErrorCode::duplicate_pid);
    CHECK(code_of([&] { store.register_component(sample_fdo("t/f2"), Namespace::profiles); }) ==
          ErrorCode::kind_mismatch);
    InformationRecord bad{Pid::parse("t/f3"), ComponentKind::data_fdo, {}, std::nullopt};
    bad.add(keys::profile_ref, "t/p");
    CHECK(code_of([&] { store.register_component(bad, Namespace::handles); }) == ErrorCode::validation_failed);
    CHECK(code_of([&] { store.update(Pid::parse("t/f9"), sample_fdo("t/f9")); }) == ErrorCode::not_found);
    // A failed write leaves no trace.
    CHECK(store.write_count() == 5);
    CHECK_FALSE(store.snapshot().contains(Pid::parse("t/f3")));
  }
}

TEST_CASE("write log and last-write-wins") {
  oracle::TempDir dir("registry");
  {
    auto store = RegistryStore::create(dir.path(), Model::record, fixed_clock());
    seed_definitions(store);
    store.register_component(sample_fdo("t/f1"), Namespace::handles);
    store.update(Pid::parse("t/f1"), sample_fdo("t/f1", "second"));
    store.update(Pid::parse("t/f1"), sample_fdo("t/f1", "third"));

    auto log = store.write_log();
    REQUIRE(log.size() == 7);
    CHECK(log[4].action == WriteAction::registration);
    CHECK(log[5].action == WriteAction::update);
    CHECK(log[6].pid == Pid::parse("t/f1"));
    CHECK(log[6].ns == Namespace::handles);
    CHECK(log[6].timestamp == "2023-11-14T22:13:20.123Z");

    auto line = slurp(dir / "writes.log");
    CHECK(line.find("2023-11-14T22:13:20.123Z\thandles\tt/f1\tupdate\n") != std::string::npos);
  }
  // Three lines for t/f1 on disk, the last one wins on load.
  auto handles = slurp(dir / "handles.ndrec");
  CHECK(std::count(handles.begin(), handles.end(), '\n') == 3);
  auto eco = load_ecosystem(dir.path());
  CHECK(eco.find_fdo(Pid::parse("t/f1"))->attributes[1].value == "third");

  auto reopened = RegistryStore::open(dir.path());
  CHECK(reopened.write_count() == 7);
  CHECK(reopened.snapshot() == eco);
}

TEST_CASE("load errors") {
  oracle::TempDir dir("registry");
  try {
    load_ecosystem(dir.path());
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::model_unset);
  }
  dump_ecosystem(example_ecosystem(Model::record), dir.path());
  {
    std::ofstream out(dir / "handles.ndrec", std::ios::app);
    out << "t/broken\tdata-fdo\tattr\n";
  }
  try {
    load_ecosystem(dir.path());
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse_error);
    CHECK(std::string(e.what()).find("handles.ndrec:5") != std::string::npos);
  }
  dump_ecosystem(example_ecosystem(Model::record), dir.path());
  {
    std::ofstream out(dir / "profiles.ndrec", std::ios::app);
    out << ndrec::encode(OperationSpec{Pid::parse("t/o"), {}, ""}) << "\n";
  }
  CHECK_THROWS_AS(load_ecosystem(dir.path()), Error);
}

TEST_CASE("dump and load round trip") {
  oracle::TempDir dir("registry");
  for (Model m : kAllModels) {
    auto eco = example_ecosystem(m);
    dump_ecosystem(eco, dir.path());
    CHECK(load_ecosystem(dir.path()) == eco);
    CHECK(slurp(dir / "writes.log").empty());
  }
  GeneratorParams params;
  params.model = Model::attribute;
  params.value_constraint_probability = 0.5;
  auto eco = generate_ecosystem(params);
  dump_ecosystem(eco, dir.path());
  CHECK(load_ecosystem(dir.path()) == eco);

  // Dumps are byte-identical for equal ecosystems.
  auto first = slurp(dir / "handles.ndrec");
  dump_ecosystem(load_ecosystem(dir.path()), dir.path());
  CHECK(slurp(dir / "handles.ndrec") == first);
}

TEST_CASE("apply performs pending writes in order") {
  oracle::TempDir dir("registry");
  auto store = RegistryStore::create(dir.path(), Model::record);
  seed_definitions(store);
  std::vector<PendingWrite> writes{{WriteAction::registration, OperationSpec{Pid::parse("t/o"), {}, ""}},
                                   {WriteAction::registration, sample_fdo("t/f")}};
  auto updated = sample_fdo("t/f");
  updated.add(keys::operation_ref, "t/o");
  writes.push_back({WriteAction::update, updated});
  store.apply(writes);
  CHECK(*store.snapshot().find_fdo(Pid::parse("t/f")) == updated);
  CHECK(store.write_count() == 7);
}

TEST_CASE("concurrent resolves alongside writes") {
  oracle::TempDir dir("registry");
  auto store = RegistryStore::create(dir.path(), Model::record);
  seed_definitions(store);
  store.register_component(sample_fdo("t/f0"), Namespace::handles);

  std::atomic<bool> stop{false};
  std::atomic<int> failures{0};
  std::vector<std::thread> readers;
  for (int t = 0; t < 4; ++t) {
    readers.emplace_back([&] {
      while (!stop) {
        auto r = store.resolve(Pid::parse("t/f0"));
        if (!std::holds_alternative<InformationRecord>(r)) ++failures;
      }
    });
  }
  for (int i = 1; i <= 50; ++i) {
    store.register_component(sample_fdo("t/f" + std::to_string(i)), Namespace::handles);
  }
  stop = true;
  for (auto& t : readers) t.join();
  CHECK(failures == 0);
  CHECK(store.snapshot().fdos().size() == 51);
  CHECK(load_ecosystem(dir.path()) == store.snapshot());
}
