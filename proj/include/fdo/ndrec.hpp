#pragma once

// Line codec for registry namespace files. One component per line:
//
//   pid<TAB>kind<TAB>field=value;field=value;...
//
// Backslash escapes `\t`, `\n`, `;`, `=` and `\\` inside field values. Fields
// repeat where the component holds a list, in list order.

#include <string>
#include <string_view>

#include "fdo/core.hpp"

namespace fdo::ndrec {

std::string escape(std::string_view raw);
// Throws Error(parse_error) on a dangling or unknown escape.
std::string unescape(std::string_view escaped);

std::string encode(const Component& component);
// Operation lines decode to OperationSpec. Throws Error(parse_error).
Component decode(std::string_view line);

}  // namespace fdo::ndrec
