#include "fdo/validation.hpp"

#include <algorithm>
#include <set>

namespace fdo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class Collector {
 public:
  void add(ViolationKind kind, std::string key, std::string detail = {}) {
    found_.insert(Violation{kind, std::move(key), std::move(detail)});
  }
  std::vector<Violation> take() { return {found_.begin(), found_.end()}; }

 private:
  std::set<Violation> found_;
};

bool value_allowed(const AttributeDefinition& def, const std::string& value, const Ecosystem& eco) {
  switch (def.restriction.kind) {
    case ValueRestriction::Kind::any:
      return true;
    case ValueRestriction::Kind::enumeration:
      return def.restriction.allowed.contains(value);
    case ValueRestriction::Kind::reference: {
      if (!Pid::is_valid(value)) return false;
      auto kind = eco.kind_of(Pid::parse(value));
      return kind && *kind == def.restriction.target;
    }
  }
  return false;
}

void check_attributes(const std::vector<Attribute>& attributes, const Ecosystem& eco, Collector& out) {
  for (const auto& a : attributes) {
    const auto* def = eco.definition_by_key(a.key);
    if (!def) {
      out.add(ViolationKind::unregistered_key, a.key);
    } else if (!value_allowed(*def, a.value, eco)) {
      out.add(ViolationKind::restricted_value, a.key, a.value);
    }
  }
}

void check_model_fields(const InformationRecord& record, Model model, Collector& out) {
  if (model == Model::record) return;
  for (const auto& a : record.attributes) {
    if (a.key == keys::operation_ref) {
      out.add(ViolationKind::restricted_value, a.key,
              "operation references are not used by the " + std::string(to_string(model)) + " model");
    }
  }
}

std::vector<Violation> validate_data_record(const InformationRecord& record, const Ecosystem& eco,
                                            bool throw_on_unresolved) {
  Collector out;
  check_attributes(record.attributes, eco, out);
  if (auto m = eco.model_opt()) check_model_fields(record, *m, out);

  auto refs = record.find_all(keys::profile_ref);
  if (refs.empty()) {
    out.add(ViolationKind::missing_profile, std::string(keys::profile_ref));
    return out.take();
  }
  if (refs.size() > 1) {
    out.add(ViolationKind::restricted_value, std::string(keys::profile_ref),
            "more than one profile reference");
    return out.take();
  }
  const std::string& ref = refs.front()->value;
  const Profile* profile = Pid::is_valid(ref) ? eco.find_profile(Pid::parse(ref)) : nullptr;
  if (!profile) {
    if (throw_on_unresolved) {
      throw Error(ErrorCode::unresolved_profile, record.pid.str() + " references '" + ref + "'",
                  std::vector<std::string>{ref});
    }
    out.add(ViolationKind::missing_profile, std::string(keys::profile_ref), ref);
    return out.take();
  }
  std::set<std::string_view> present;
  for (const auto& a : record.attributes) present.insert(a.key);
  for (const auto& key : profile->mandatory_keys) {
    if (!present.contains(key)) out.add(ViolationKind::missing_mandatory, key);
  }
  return out.take();
}

std::vector<Violation> validate_operation(const OperationSpec& op, const Ecosystem& eco) {
  Collector out;
  if (!op.required_inputs.empty() && !eco.definition_by_key(keys::required_input)) {
    out.add(ViolationKind::unregistered_key, std::string(keys::required_input));
  }
  for (const auto& in : op.required_inputs) {
    const auto* def = eco.definition_by_key(in.key);
    if (!def) {
      out.add(ViolationKind::unregistered_key, in.key);
    } else if (in.value_constraint && !value_allowed(*def, *in.value_constraint, eco)) {
      out.add(ViolationKind::restricted_value, in.key, *in.value_constraint);
    }
  }
  if (auto m = eco.model_opt(); m && *m != Model::attribute && !op.required_inputs.empty()) {
    out.add(ViolationKind::restricted_value, std::string(keys::required_input),
            "required inputs are not used by the " + std::string(to_string(*m)) + " model");
  }
  return out.take();
}

std::vector<Violation> validate_profile(const Profile& profile, const Ecosystem& eco) {
  Collector out;
  for (const auto* keys : {&profile.mandatory_keys, &profile.optional_keys}) {
    for (const auto& key : *keys) {
      if (!eco.definition_by_key(key)) out.add(ViolationKind::unregistered_key, key);
    }
  }
  for (const auto& key : profile.mandatory_keys) {
    if (profile.optional_keys.contains(key)) {
      out.add(ViolationKind::restricted_value, key, "both mandatory and optional");
    }
  }
  if (!profile.operation_list.empty()) {
    if (!eco.definition_by_key(keys::operation_list)) {
      out.add(ViolationKind::unregistered_key, std::string(keys::operation_list));
    }
    for (const auto& op : profile.operation_list) {
      if (!eco.find_operation(op)) {
        out.add(ViolationKind::restricted_value, std::string(keys::operation_list), op.str());
      }
    }
    if (auto m = eco.model_opt(); m && *m != Model::profile) {
      out.add(ViolationKind::restricted_value, std::string(keys::operation_list),
              "operation lists are not used by the " + std::string(to_string(*m)) + " model");
    }
  }
  return out.take();
}

}  // namespace

std::vector<Violation> validate_record(const InformationRecord& record, const Ecosystem& ecosystem) {
  switch (record.kind) {
    case ComponentKind::data_fdo:
      return validate_data_record(record, ecosystem, true);
    case ComponentKind::operation_fdo:
      return validate_operation(OperationSpec::from_record(record), ecosystem);
    default: {
      Collector out;
      check_attributes(record.attributes, ecosystem, out);
      return out.take();
    }
  }
}

std::vector<Violation> validate_component(const Component& component, const Ecosystem& ecosystem) {
  return std::visit(overloaded{
                        [&](const InformationRecord& r) { return validate_record(r, ecosystem); },
                        [&](const Profile& p) { return validate_profile(p, ecosystem); },
                        [&](const OperationSpec& o) { return validate_operation(o, ecosystem); },
                        [](const AttributeDefinition&) { return std::vector<Violation>{}; },
                    },
                    component);
}

std::vector<ComponentViolation> validate_ecosystem(const Ecosystem& ecosystem) {
  std::vector<ComponentViolation> out;
  auto push = [&](const Pid& pid, std::vector<Violation> vs) {
    for (auto& v : vs) out.push_back(ComponentViolation{pid, std::move(v)});
  };
  for (const auto& [pid, r] : ecosystem.fdos()) push(pid, validate_data_record(r, ecosystem, false));
  for (const auto& [pid, o] : ecosystem.operations()) push(pid, validate_operation(o, ecosystem));
  for (const auto& [pid, p] : ecosystem.profiles()) push(pid, validate_profile(p, ecosystem));
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.pid < b.pid; });
  return out;
}

}  // namespace fdo
