#pragma once

// Domain types of the FDO core model: PIDs, attribute definitions, information
// records, profiles, operations and the ecosystem that holds them.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fdo/error.hpp"

namespace fdo {

// Association model of an ecosystem.
enum class Model { record, profile, attribute };

inline constexpr Model kAllModels[] = {Model::record, Model::profile, Model::attribute};

std::string_view to_string(Model model);
Model parse_model(std::string_view text);

enum class ComponentKind { data_fdo, operation_fdo, profile, attribute_definition };

std::string_view to_string(ComponentKind kind);
ComponentKind parse_component_kind(std::string_view text);

// Reserved attribute keys carrying the association mechanisms.
namespace keys {
inline constexpr std::string_view profile_ref = "fdo-profile-ref";
inline constexpr std::string_view operation_ref = "fdo-operation-ref";
inline constexpr std::string_view operation_list = "fdo-operation-list";
inline constexpr std::string_view required_input = "fdo-required-input";
}  // namespace keys

// Separator inside the value of a profile's operation-list attribute.
inline constexpr char kListSeparator = '|';

// Handle-style persistent identifier `<prefix>/<suffix>`. The prefix holds no
// slash; the suffix may.
class Pid {
 public:
  // Throws Error(invalid_pid).
  static Pid parse(std::string_view text);
  static bool is_valid(std::string_view text) noexcept;

  const std::string& str() const noexcept { return value_; }
  std::string_view prefix() const noexcept;
  std::string_view suffix() const noexcept;

  friend bool operator==(const Pid&, const Pid&) = default;
  friend auto operator<=>(const Pid&, const Pid&) = default;

 private:
  explicit Pid(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

// Attribute keys are non-empty and free of the characters used as structural
// separators in values (`=`, `|`) and of control characters.
bool is_valid_key(std::string_view key) noexcept;

struct ValueRestriction {
  enum class Kind { any, enumeration, reference };

  Kind kind = Kind::any;
  std::set<std::string> allowed;                       // enumeration only
  ComponentKind target = ComponentKind::data_fdo;      // reference only

  static ValueRestriction any() { return {}; }
  static ValueRestriction enumeration(std::set<std::string> values) {
    return {Kind::enumeration, std::move(values), ComponentKind::data_fdo};
  }
  static ValueRestriction reference(ComponentKind target) { return {Kind::reference, {}, target}; }

  friend bool operator==(const ValueRestriction&, const ValueRestriction&) = default;
};

struct AttributeDefinition {
  Pid pid;
  std::string key;
  ValueRestriction restriction;

  friend bool operator==(const AttributeDefinition&, const AttributeDefinition&) = default;
};

// A key-value pair instantiated inside one information record. Two attributes
// are the same element only if key, value and owning record all agree.
struct Attribute {
  std::string key;
  std::string value;
  Pid owner;

  friend bool operator==(const Attribute&, const Attribute&) = default;
  friend auto operator<=>(const Attribute&, const Attribute&) = default;
};

struct InformationRecord {
  Pid pid;
  ComponentKind kind = ComponentKind::data_fdo;
  std::vector<Attribute> attributes;
  std::optional<std::string> payload_ref;

  // Appends an attribute owned by this record.
  InformationRecord& add(std::string_view key, std::string_view value);

  // Value of the profile-reference attribute when exactly one is present.
  std::optional<Pid> profile_ref() const;

  std::vector<const Attribute*> find_all(std::string_view key) const;

  friend bool operator==(const InformationRecord&, const InformationRecord&) = default;
};

struct Profile {
  Pid pid;
  std::set<std::string> mandatory_keys;
  std::set<std::string> optional_keys;
  std::vector<Pid> operation_list;

  // The operation-list attribute as it appears in the profile's record; empty
  // when the list is empty.
  std::vector<Attribute> association_attributes() const;

  friend bool operator==(const Profile&, const Profile&) = default;
};

struct RequiredInput {
  std::string key;
  std::optional<std::string> value_constraint;

  // `key` or `key=value`, the value of the required-input attribute.
  std::string encode() const;
  static RequiredInput decode(std::string_view text);

  friend bool operator==(const RequiredInput&, const RequiredInput&) = default;
  friend auto operator<=>(const RequiredInput&, const RequiredInput&) = default;
};

struct OperationSpec {
  Pid pid;
  std::vector<RequiredInput> required_inputs;
  std::string executor_ref;

  // One required-input attribute per entry, in order.
  std::vector<Attribute> association_attributes() const;

  InformationRecord to_record() const;
  // Throws Error(kind_mismatch) for non-operation records, Error(parse_error)
  // for attributes other than required inputs.
  static OperationSpec from_record(const InformationRecord& record);

  friend bool operator==(const OperationSpec&, const OperationSpec&) = default;
};

using Component = std::variant<InformationRecord, Profile, OperationSpec, AttributeDefinition>;

const Pid& pid_of(const Component& component);
ComponentKind kind_of(const Component& component);

// All components under a single association model. Pids are unique across
// the four component sets and definition keys are unique.
class Ecosystem {
 public:
  Ecosystem() = default;
  explicit Ecosystem(Model model) : model_(model) {}

  std::optional<Model> model_opt() const noexcept { return model_; }
  // Throws Error(model_unset).
  Model model() const;
  void set_model(Model model) noexcept { model_ = model; }

  // Inserters throw Error(duplicate_pid) or Error(duplicate_key) and leave the
  // ecosystem unchanged on failure.
  void add(Component component);
  void add_fdo(InformationRecord record);
  void add_operation(OperationSpec op);
  void add_profile(Profile profile);
  void add_definition(AttributeDefinition def);

  // Replaces an existing component of the same kind. Throws Error(not_found)
  // or Error(kind_mismatch).
  void replace(Component component);

  bool contains(const Pid& pid) const;
  std::optional<ComponentKind> kind_of(const Pid& pid) const;
  // Throws Error(not_found).
  Component get(const Pid& pid) const;

  const InformationRecord* find_fdo(const Pid& pid) const;
  const OperationSpec* find_operation(const Pid& pid) const;
  const Profile* find_profile(const Pid& pid) const;
  const AttributeDefinition* find_definition(const Pid& pid) const;
  const AttributeDefinition* definition_by_key(std::string_view key) const;

  const std::map<Pid, InformationRecord>& fdos() const noexcept { return fdos_; }
  const std::map<Pid, OperationSpec>& operations() const noexcept { return operations_; }
  const std::map<Pid, Profile>& profiles() const noexcept { return profiles_; }
  const std::map<Pid, AttributeDefinition>& definitions() const noexcept { return definitions_; }

  std::size_t component_count() const noexcept {
    return fdos_.size() + operations_.size() + profiles_.size() + definitions_.size();
  }
  bool empty() const noexcept { return component_count() == 0; }

  friend bool operator==(const Ecosystem&, const Ecosystem&) = default;

 private:
  void check_unbound(const Pid& pid) const;

  std::optional<Model> model_;
  std::map<Pid, InformationRecord> fdos_;
  std::map<Pid, OperationSpec> operations_;
  std::map<Pid, Profile> profiles_;
  std::map<Pid, AttributeDefinition> definitions_;
  std::map<std::string, Pid, std::less<>> definition_keys_;
};

// Reserved definitions an ecosystem of the given model carries: the profile
// reference plus the model's own association key(s).
std::vector<std::string_view> reserved_keys(Model model);

// Deterministic Pid source: a monotone counter per prefix, zero-padded to four
// digits. Skips suffixes already bound in the ecosystem, when one is given.
class PidMinter {
 public:
  // Throws Error(invalid_prefix).
  Pid mint(std::string_view prefix, const Ecosystem* in_use = nullptr);

 private:
  std::map<std::string, std::uint64_t, std::less<>> next_;
};

}  // namespace fdo
