#pragma once

#include "cmt/formula.hpp"

#include <string>

namespace cmt {

/// Canonical ASCII rendering; parse(print(f)) rebuilds f node for node.
std::string print(const CoPtr& f);
std::string print(const PcoPtr& f);
std::string print(const Query& q);

} // namespace cmt
