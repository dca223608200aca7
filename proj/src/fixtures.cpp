#include "fdo/fixtures.hpp"

namespace fdo {

namespace example {

Pid fdo(int i) { return Pid::parse("ex/f" + std::to_string(i)); }
Pid op(int i) { return Pid::parse("ex/o" + std::to_string(i)); }
Pid profile(int i) { return Pid::parse("ex/p" + std::to_string(i)); }

Relation relation() {
  return {{fdo(1), op(1)}, {fdo(1), op(2)}, {fdo(1), op(3)},
          {fdo(2), op(3)}, {fdo(3), op(3)}, {fdo(4), op(5)}};
}

}  // namespace example

namespace {

Pid def_pid(std::string_view name) { return Pid::parse("ex/def-" + std::string(name)); }

void add_reserved(Ecosystem& eco, Model model) {
  eco.add_definition({def_pid("profile-ref"), std::string(keys::profile_ref),
                      ValueRestriction::reference(ComponentKind::profile)});
  switch (model) {
    case Model::record:
      eco.add_definition({def_pid("operation-ref"), std::string(keys::operation_ref),
                          ValueRestriction::reference(ComponentKind::operation_fdo)});
      break;
    case Model::profile:
      eco.add_definition({def_pid("operation-list"), std::string(keys::operation_list), ValueRestriction::any()});
      break;
    case Model::attribute:
      eco.add_definition({def_pid("required-input"), std::string(keys::required_input), ValueRestriction::any()});
      break;
  }
}

InformationRecord data_fdo(int i, const Pid& profile) {
  InformationRecord r{example::fdo(i), ComponentKind::data_fdo, {}, "bits://ex/f" + std::to_string(i)};
  r.add(keys::profile_ref, profile.str());
  return r;
}

OperationSpec operation(int i, std::vector<RequiredInput> inputs = {}) {
  return OperationSpec{example::op(i), std::move(inputs), "exec://ex/o" + std::to_string(i)};
}

}  // namespace

Ecosystem example_ecosystem(Model model) {
  Ecosystem eco(model);
  add_reserved(eco, model);

  switch (model) {
    case Model::record: {
      eco.add_profile(Profile{example::profile(0), {std::string(keys::profile_ref)}, {}, {}});
      for (int i = 1; i <= 5; ++i) eco.add_operation(operation(i));
      const std::vector<std::vector<int>> refs = {{1, 2, 3}, {3}, {3}, {5}};
      for (int i = 1; i <= 4; ++i) {
        auto r = data_fdo(i, example::profile(0));
        for (int o : refs[i - 1]) r.add(keys::operation_ref, example::op(o).str());
        eco.add_fdo(std::move(r));
      }
      break;
    }
    case Model::profile: {
      for (int i = 1; i <= 5; ++i) eco.add_operation(operation(i));
      const std::set<std::string> mandatory{std::string(keys::profile_ref)};
      eco.add_profile(Profile{example::profile(1), mandatory, {}, {example::op(1), example::op(2), example::op(3)}});
      eco.add_profile(Profile{example::profile(2), mandatory, {}, {example::op(3)}});
      eco.add_profile(Profile{example::profile(3), mandatory, {}, {example::op(5)}});
      eco.add_fdo(data_fdo(1, example::profile(1)));
      eco.add_fdo(data_fdo(2, example::profile(2)));
      eco.add_fdo(data_fdo(3, example::profile(2)));
      eco.add_fdo(data_fdo(4, example::profile(3)));
      break;
    }
    case Model::attribute: {
      for (std::string_view key : {"alpha", "beta", "gamma", "delta", "epsilon", "zeta"}) {
        eco.add_definition({def_pid(key), std::string(key), ValueRestriction::any()});
      }
      eco.add_profile(Profile{example::profile(0), {std::string(keys::profile_ref)}, {}, {}});
      auto in = [](std::string key) { return RequiredInput{std::move(key), std::nullopt}; };
      eco.add_operation(operation(1, {in("alpha"), in("beta")}));
      eco.add_operation(operation(2, {in("alpha")}));
      eco.add_operation(operation(3, {in("gamma")}));
      eco.add_operation(operation(4, {in("zeta")}));
      eco.add_operation(operation(5, {in("delta"), in("epsilon")}));
      const std::vector<std::vector<std::string>> attrs = {
          {"alpha", "beta", "gamma"}, {"gamma"}, {"gamma"}, {"delta", "epsilon"}};
      for (int i = 1; i <= 4; ++i) {
        auto r = data_fdo(i, example::profile(0));
        for (const auto& k : attrs[i - 1]) r.add(k, "x");
        eco.add_fdo(std::move(r));
      }
      break;
    }
  }
  return eco;
}

}  // namespace fdo
