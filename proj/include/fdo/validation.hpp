#pragma once

#include <utility>
#include <vector>

#include "fdo/core.hpp"

namespace fdo {

// Conformance of a record to its profile and to the registered definitions.
// Returns violations sorted by (kind, key, detail); empty means conforming.
// Throws Error(unresolved_profile) when a data FDO references a profile that
// is not in the ecosystem.
std::vector<Violation> validate_record(const InformationRecord& record, const Ecosystem& ecosystem);

// Registration-time check for any component: record conformance, registered
// keys in profiles and operations, resolvable operation lists, and that only
// the association fields of the ecosystem's model are populated.
std::vector<Violation> validate_component(const Component& component, const Ecosystem& ecosystem);

struct ComponentViolation {
  Pid pid;
  Violation violation;
};

// Every violation of every component, ordered by Pid. Unresolved profiles are
// reported as missing-profile instead of thrown.
std::vector<ComponentViolation> validate_ecosystem(const Ecosystem& ecosystem);

}  // namespace fdo
