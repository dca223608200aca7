#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fdo/core.hpp"

namespace fdo {

// The four registries, kept as namespaces of one local store.
enum class Namespace { handles, profiles, operations, attribute_defs };

inline constexpr Namespace kAllNamespaces[] = {Namespace::handles, Namespace::profiles,
                                               Namespace::operations, Namespace::attribute_defs};

std::string_view to_string(Namespace ns);
Namespace parse_namespace(std::string_view text);
Namespace namespace_for(ComponentKind kind);

enum class WriteAction { registration, update };

std::string_view to_string(WriteAction action);

struct WriteLogEntry {
  std::string timestamp;  // ISO 8601, UTC
  Namespace ns;
  Pid pid;
  WriteAction action;
};

// What resolving a Pid yields. Operations come back as operation-fdo records.
using Resolved = std::variant<InformationRecord, Profile, AttributeDefinition>;

struct PendingWrite {
  WriteAction action;
  Component component;
};

// Directory-backed registry. Layout under the root:
//
//   model                  association model name
//   handles.ndrec          data FDO records
//   profiles.ndrec
//   operations.ndrec
//   attribute_defs.ndrec
//   writes.log             <iso8601>\t<namespace>\t<pid>\t<action>
//
// Writes append one line to the namespace file and one to writes.log; when a
// Pid appears on several lines the last one wins. Resolves may run
// concurrently; writes are serialized.
class RegistryStore {
 public:
  using Clock = std::function<std::chrono::system_clock::time_point()>;

  // Initializes an empty store. Throws Error(io_error) if the root already
  // holds a store.
  static RegistryStore create(const std::filesystem::path& root, Model model, Clock clock = {});
  // Throws Error(model_unset) for a directory without a store.
  static RegistryStore open(const std::filesystem::path& root, Clock clock = {});

  RegistryStore(RegistryStore&&) noexcept;
  RegistryStore& operator=(RegistryStore&&) noexcept;
  ~RegistryStore();

  const std::filesystem::path& root() const;
  Model model() const;

  // Throws Error(not_found).
  Resolved resolve(const Pid& pid) const;

  // Throws Error(kind_mismatch) when the component does not belong in `ns`,
  // Error(duplicate_pid), or Error(validation_failed) with the violations.
  Pid register_component(Component component, Namespace ns);

  // Last-write-wins replacement. Throws Error(not_found), Error(kind_mismatch)
  // or Error(validation_failed).
  void update(const Pid& pid, Component component);

  // Performs the writes in order; stops at the first failure.
  void apply(std::span<const PendingWrite> writes);

  Ecosystem snapshot() const;
  std::vector<WriteLogEntry> write_log() const;
  std::size_t write_count() const;

 private:
  struct State;
  explicit RegistryStore(std::unique_ptr<State> state);
  std::unique_ptr<State> state_;
};

// Reads a store directory into an ecosystem. Throws Error(model_unset) when the
// model file is missing, Error(parse_error) on malformed lines.
Ecosystem load_ecosystem(const std::filesystem::path& root);

// Writes a compacted store (one line per component, sorted by Pid) with an
// empty write log. Replaces any store already at `root`.
void dump_ecosystem(const Ecosystem& ecosystem, const std::filesystem::path& root);

std::string format_timestamp(std::chrono::system_clock::time_point t);

}  // namespace fdo
