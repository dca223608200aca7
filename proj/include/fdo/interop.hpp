#pragma once

// Conversion of whole ecosystems between association models. The FDO and
// operation sets carry over one-to-one; whatever the target model needs to
// express the source relation is synthesized.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdo/core.hpp"

namespace fdo {

struct ModelMapping {
  Model source = Model::record;
  Model target = Model::record;
  std::map<Pid, Pid> fdo_map;
  std::map<Pid, Pid> op_map;
  // Components created only to express the relation in the target model.
  std::vector<Component> synthesized;

  // Identity bijections over the ecosystem's FDOs and operations.
  static ModelMapping identity(const Ecosystem& ecosystem);
};

struct ConvertOptions {
  // When set, FDOs and operations get fresh Pids under these prefixes.
  std::optional<std::string> fdo_prefix;
  std::optional<std::string> op_prefix;
  // Prefix of synthesized profiles and attribute definitions.
  std::string synth_prefix = "fdo.synth";
};

struct Conversion {
  Ecosystem ecosystem;
  ModelMapping mapping;
};

// Key prefix of synthesized marker attributes. Attributes and definitions
// with this prefix are dropped when an ecosystem is converted.
inline constexpr std::string_view kMarkerPrefix = "assoc-marker:";

std::string marker_key(const Pid& op);

// To record: one operation reference per associated pair.
// To attribute: one marker definition per operation, required by that
// operation and set to "true" on every FDO associated with it.
// To profile: FDOs grouped by identical operation sets, one synthesized
// profile per group, replacing the source profiles.
// Converting to the source model returns a copy with the identity mapping;
// the re-identification options are ignored then.
Conversion convert(const Ecosystem& ecosystem, Model target, const ConvertOptions& options = {});

struct Disagreement {
  Pid fdo;                  // in the first ecosystem
  std::size_t ecosystem;    // index of the disagreeing ecosystem
  std::set<Pid> expected;   // first ecosystem's operations, mapped
  std::set<Pid> actual;
};

struct ConsistencyReport {
  std::vector<Disagreement> disagreements;
  bool consistent() const { return disagreements.empty(); }
};

// mappings[k - 1] maps ecosystems[0] to ecosystems[k]. Every FDO of the first
// ecosystem must have the same operations in each of the others. Throws
// Error(model_mismatch) when the counts do not line up.
ConsistencyReport check_consistency(std::span<const Ecosystem> ecosystems, std::span<const ModelMapping> mappings);

// Two-column tables, one section per bijection:
//   [fdo]
//   <source pid>\t<target pid>
//   [operation]
//   ...
std::string to_table(const ModelMapping& mapping);

}  // namespace fdo
