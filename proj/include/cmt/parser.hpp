#pragma once

#include "cmt/core.hpp"
#include "cmt/formula.hpp"

#include <string>

namespace cmt {

/// Parses a formula in the ASCII grammar. Returns an event formula when
/// the text stays inside the event language, a statement formula
/// otherwise. When a signature is supplied, variable names and values are
/// checked against it. Sugar is kept in the tree; see expand_sugar.
///
/// Inside Pr(...) and cindep(...) a bar at parenthesis depth zero is the
/// conditioning separator; write the tensor disjunction with parentheses
/// there, e.g. Pr((X=1 | Y=2)).
Query parse(const std::string& text, const Signature* sig = nullptr);

/// As parse, but insists on an event formula.
CoPtr parse_co(const std::string& text, const Signature* sig = nullptr);

/// As parse, but embeds event formulas into the statement language.
/// Rejects event formulas with a tensor disjunction outside antecedent or
/// probability-argument positions, since those have no statement reading.
PcoPtr parse_pco(const std::string& text, const Signature* sig = nullptr);

} // namespace cmt
