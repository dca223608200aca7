#pragma once

// The four-FDO, five-operation example ecosystem used throughout the tests,
// expressed in each association model. All three express the relation
//
//   f1 -> o1, o2, o3    f2 -> o3    f3 -> o3    f4 -> o5
//
// and leave o4 unassociated.

#include "fdo/core.hpp"
#include "fdo/engine.hpp"

namespace fdo {

namespace example {
inline constexpr std::string_view prefix = "ex";
Pid fdo(int i);        // ex/f<i>
Pid op(int i);         // ex/o<i>
Pid profile(int i);    // ex/p<i>; p0 is the generic profile of the record and attribute variants
Relation relation();
}  // namespace example

Ecosystem example_ecosystem(Model model);

}  // namespace fdo
