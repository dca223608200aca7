#include "fdo/core.hpp"

#include <algorithm>
#include <cstdio>

namespace fdo {

namespace {

bool is_pid_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return u > 0x20 && u != 0x7f && c != kListSeparator;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_pid: return "invalid-pid";
    case ErrorCode::invalid_prefix: return "invalid-prefix";
    case ErrorCode::invalid_key: return "invalid-key";
    case ErrorCode::duplicate_pid: return "duplicate-pid";
    case ErrorCode::duplicate_key: return "duplicate-key";
    case ErrorCode::not_found: return "not-found";
    case ErrorCode::unknown_pid: return "unknown-pid";
    case ErrorCode::kind_mismatch: return "kind-mismatch";
    case ErrorCode::unresolved_profile: return "unresolved-profile";
    case ErrorCode::validation_failed: return "validation-failed";
    case ErrorCode::unexpressible_target_set: return "unexpressible-target-set";
    case ErrorCode::model_mismatch: return "model-mismatch";
    case ErrorCode::model_unset: return "model-unset";
    case ErrorCode::dangling_reference: return "dangling-reference";
    case ErrorCode::empty_sample: return "empty-sample";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::missing_mandatory: return "missing-mandatory";
    case ViolationKind::unregistered_key: return "unregistered-key";
    case ViolationKind::restricted_value: return "restricted-value";
    case ViolationKind::missing_profile: return "missing-profile";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

Error::Error(ErrorCode code, const std::string& what, std::vector<std::string> subjects)
    : Error(code, what) {
  subjects_ = std::move(subjects);
}

Error::Error(ErrorCode code, const std::string& what, std::vector<Violation> violations)
    : Error(code, what) {
  violations_ = std::move(violations);
}

std::string_view to_string(Model model) {
  switch (model) {
    case Model::record: return "record";
    case Model::profile: return "profile";
    case Model::attribute: return "attribute";
  }
  return "unknown";
}

Model parse_model(std::string_view text) {
  for (Model m : kAllModels) {
    if (to_string(m) == text) return m;
  }
  throw Error(ErrorCode::parse_error, "unknown model '" + std::string(text) + "'");
}

std::string_view to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::data_fdo: return "data-fdo";
    case ComponentKind::operation_fdo: return "operation-fdo";
    case ComponentKind::profile: return "profile";
    case ComponentKind::attribute_definition: return "attribute-def";
  }
  return "unknown";
}

ComponentKind parse_component_kind(std::string_view text) {
  for (auto k : {ComponentKind::data_fdo, ComponentKind::operation_fdo, ComponentKind::profile,
                 ComponentKind::attribute_definition}) {
    if (to_string(k) == text) return k;
  }
  throw Error(ErrorCode::parse_error, "unknown component kind '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Pid

bool Pid::is_valid(std::string_view text) noexcept {
  auto slash = text.find('/');
  if (slash == std::string_view::npos || slash == 0 || slash + 1 == text.size()) return false;
  return std::all_of(text.begin(), text.end(), is_pid_char);
}

Pid Pid::parse(std::string_view text) {
  if (!is_valid(text)) throw Error(ErrorCode::invalid_pid, "'" + std::string(text) + "'");
  return Pid(std::string(text));
}

std::string_view Pid::prefix() const noexcept {
  return std::string_view(value_).substr(0, value_.find('/'));
}

std::string_view Pid::suffix() const noexcept {
  return std::string_view(value_).substr(value_.find('/') + 1);
}

bool is_valid_key(std::string_view key) noexcept {
  if (key.empty()) return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return u >= 0x20 && u != 0x7f && c != '=' && c != kListSeparator;
  });
}

// ---------------------------------------------------------------------------
// Records

InformationRecord& InformationRecord::add(std::string_view key, std::string_view value) {
  attributes.push_back(Attribute{std::string(key), std::string(value), pid});
  return *this;
}

std::optional<Pid> InformationRecord::profile_ref() const {
  std::optional<Pid> found;
  for (const auto& a : attributes) {
    if (a.key != keys::profile_ref) continue;
    if (found || !Pid::is_valid(a.value)) return std::nullopt;
    found = Pid::parse(a.value);
  }
  return found;
}

std::vector<const Attribute*> InformationRecord::find_all(std::string_view key) const {
  std::vector<const Attribute*> out;
  for (const auto& a : attributes) {
    if (a.key == key) out.push_back(&a);
  }
  return out;
}

std::vector<Attribute> Profile::association_attributes() const {
  if (operation_list.empty()) return {};
  std::string joined;
  for (const auto& op : operation_list) {
    if (!joined.empty()) joined += kListSeparator;
    joined += op.str();
  }
  return {Attribute{std::string(keys::operation_list), std::move(joined), pid}};
}

std::string RequiredInput::encode() const {
  return value_constraint ? key + "=" + *value_constraint : key;
}

RequiredInput RequiredInput::decode(std::string_view text) {
  auto eq = text.find('=');
  RequiredInput in;
  in.key = std::string(text.substr(0, eq));
  if (eq != std::string_view::npos) in.value_constraint = std::string(text.substr(eq + 1));
  if (!is_valid_key(in.key)) {
    throw Error(ErrorCode::parse_error, "bad required input '" + std::string(text) + "'");
  }
  return in;
}

std::vector<Attribute> OperationSpec::association_attributes() const {
  std::vector<Attribute> out;
  out.reserve(required_inputs.size());
  for (const auto& in : required_inputs) {
    out.push_back(Attribute{std::string(keys::required_input), in.encode(), pid});
  }
  return out;
}

InformationRecord OperationSpec::to_record() const {
  InformationRecord rec{pid, ComponentKind::operation_fdo, association_attributes(), std::nullopt};
  if (!executor_ref.empty()) rec.payload_ref = executor_ref;
  return rec;
}

OperationSpec OperationSpec::from_record(const InformationRecord& record) {
  if (record.kind != ComponentKind::operation_fdo) {
    throw Error(ErrorCode::kind_mismatch, record.pid.str() + " is not an operation record");
  }
  OperationSpec op{record.pid, {}, record.payload_ref.value_or("")};
  for (const auto& a : record.attributes) {
    if (a.key != keys::required_input) {
      throw Error(ErrorCode::parse_error,
                  "operation " + record.pid.str() + " carries unexpected key '" + a.key + "'");
    }
    op.required_inputs.push_back(RequiredInput::decode(a.value));
  }
  return op;
}

const Pid& pid_of(const Component& component) {
  return std::visit([](const auto& c) -> const Pid& { return c.pid; }, component);
}

ComponentKind kind_of(const Component& component) {
  return std::visit(overloaded{
                        [](const InformationRecord& r) { return r.kind; },
                        [](const Profile&) { return ComponentKind::profile; },
                        [](const OperationSpec&) { return ComponentKind::operation_fdo; },
                        [](const AttributeDefinition&) { return ComponentKind::attribute_definition; },
                    },
                    component);
}

// ---------------------------------------------------------------------------
// Ecosystem

Model Ecosystem::model() const {
  if (!model_) throw Error(ErrorCode::model_unset, "ecosystem has no association model");
  return *model_;
}

void Ecosystem::check_unbound(const Pid& pid) const {
  if (contains(pid)) throw Error(ErrorCode::duplicate_pid, pid.str());
}

void Ecosystem::add(Component component) {
  std::visit(overloaded{
                 [this](InformationRecord&& r) {
                   if (r.kind == ComponentKind::operation_fdo) {
                     add_operation(OperationSpec::from_record(r));
                   } else if (r.kind == ComponentKind::data_fdo) {
                     add_fdo(std::move(r));
                   } else {
                     throw Error(ErrorCode::kind_mismatch,
                                 r.pid.str() + ": profile given as information record");
                   }
                 },
                 [this](Profile&& p) { add_profile(std::move(p)); },
                 [this](OperationSpec&& o) { add_operation(std::move(o)); },
                 [this](AttributeDefinition&& d) { add_definition(std::move(d)); },
             },
             std::move(component));
}

void Ecosystem::add_fdo(InformationRecord record) {
  if (record.kind != ComponentKind::data_fdo) {
    throw Error(ErrorCode::kind_mismatch, record.pid.str() + " is not a data FDO record");
  }
  check_unbound(record.pid);
  Pid pid = record.pid;
  fdos_.emplace(std::move(pid), std::move(record));
}

void Ecosystem::add_operation(OperationSpec op) {
  check_unbound(op.pid);
  Pid pid = op.pid;
  operations_.emplace(std::move(pid), std::move(op));
}

void Ecosystem::add_profile(Profile profile) {
  check_unbound(profile.pid);
  Pid pid = profile.pid;
  profiles_.emplace(std::move(pid), std::move(profile));
}

void Ecosystem::add_definition(AttributeDefinition def) {
  check_unbound(def.pid);
  if (!is_valid_key(def.key)) throw Error(ErrorCode::invalid_key, "'" + def.key + "'");
  if (definition_keys_.contains(def.key)) throw Error(ErrorCode::duplicate_key, def.key);
  definition_keys_.emplace(def.key, def.pid);
  Pid pid = def.pid;
  definitions_.emplace(std::move(pid), std::move(def));
}

void Ecosystem::replace(Component component) {
  const Pid pid = pid_of(component);
  auto existing = kind_of(pid);
  if (!existing) throw Error(ErrorCode::not_found, pid.str());
  if (*existing != fdo::kind_of(component)) {
    throw Error(ErrorCode::kind_mismatch, pid.str() + " is bound to a " +
                                              std::string(to_string(*existing)));
  }
  std::visit(overloaded{
                 [this](InformationRecord&& r) {
                   if (r.kind == ComponentKind::operation_fdo) {
                     auto op = OperationSpec::from_record(r);
                     operations_.at(op.pid) = std::move(op);
                   } else {
                     fdos_.at(r.pid) = std::move(r);
                   }
                 },
                 [this](Profile&& p) { profiles_.at(p.pid) = std::move(p); },
                 [this](OperationSpec&& o) { operations_.at(o.pid) = std::move(o); },
                 [this](AttributeDefinition&& d) {
                   auto& slot = definitions_.at(d.pid);
                   if (slot.key != d.key) {
                     if (!is_valid_key(d.key)) throw Error(ErrorCode::invalid_key, "'" + d.key + "'");
                     if (definition_keys_.contains(d.key)) throw Error(ErrorCode::duplicate_key, d.key);
                     definition_keys_.erase(definition_keys_.find(slot.key));
                     definition_keys_.emplace(d.key, d.pid);
                   }
                   slot = std::move(d);
                 },
             },
             std::move(component));
}

bool Ecosystem::contains(const Pid& pid) const { return kind_of(pid).has_value(); }

std::optional<ComponentKind> Ecosystem::kind_of(const Pid& pid) const {
  if (fdos_.contains(pid)) return ComponentKind::data_fdo;
  if (operations_.contains(pid)) return ComponentKind::operation_fdo;
  if (profiles_.contains(pid)) return ComponentKind::profile;
  if (definitions_.contains(pid)) return ComponentKind::attribute_definition;
  return std::nullopt;
}

Component Ecosystem::get(const Pid& pid) const {
  if (auto* r = find_fdo(pid)) return *r;
  if (auto* o = find_operation(pid)) return *o;
  if (auto* p = find_profile(pid)) return *p;
  if (auto* d = find_definition(pid)) return *d;
  throw Error(ErrorCode::not_found, pid.str());
}

namespace {
template <class Map>
const typename Map::mapped_type* lookup(const Map& map, const Pid& pid) {
  auto it = map.find(pid);
  return it == map.end() ? nullptr : &it->second;
}
}  // namespace

const InformationRecord* Ecosystem::find_fdo(const Pid& pid) const { return lookup(fdos_, pid); }
const OperationSpec* Ecosystem::find_operation(const Pid& pid) const {
  return lookup(operations_, pid);
}
const Profile* Ecosystem::find_profile(const Pid& pid) const { return lookup(profiles_, pid); }
const AttributeDefinition* Ecosystem::find_definition(const Pid& pid) const {
  return lookup(definitions_, pid);
}

const AttributeDefinition* Ecosystem::definition_by_key(std::string_view key) const {
  auto it = definition_keys_.find(key);
  return it == definition_keys_.end() ? nullptr : find_definition(it->second);
}

std::vector<std::string_view> reserved_keys(Model model) {
  switch (model) {
    case Model::record: return {keys::profile_ref, keys::operation_ref};
    case Model::profile: return {keys::profile_ref, keys::operation_list};
    case Model::attribute: return {keys::profile_ref, keys::required_input};
  }
  return {};
}

// ---------------------------------------------------------------------------
// PidMinter

Pid PidMinter::mint(std::string_view prefix, const Ecosystem* in_use) {
  if (prefix.empty() || prefix.find('/') != std::string_view::npos ||
      !std::all_of(prefix.begin(), prefix.end(), is_pid_char)) {
    throw Error(ErrorCode::invalid_prefix, "'" + std::string(prefix) + "'");
  }
  auto it = next_.find(prefix);
  if (it == next_.end()) it = next_.emplace(std::string(prefix), 1).first;
  for (;;) {
    char suffix[24];
    std::snprintf(suffix, sizeof suffix, "%04llu", static_cast<unsigned long long>(it->second++));
    Pid pid = Pid::parse(std::string(prefix) + "/" + suffix);
    if (!in_use || !in_use->contains(pid)) return pid;
  }
}

}  // namespace fdo
