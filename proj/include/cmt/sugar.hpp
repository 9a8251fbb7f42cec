#pragma once

#include "cmt/core.hpp"
#include "cmt/formula.hpp"

namespace cmt {

/// Canonical falsum / verum over a signature: the first declared variable
/// forced to its first declared value, with a contradicting / matching
/// consequent.
CoPtr co_bot_expanded(const Signature& sig);
CoPtr co_top_expanded(const Signature& sig);

/// Dual negation as a formula: a => bot.
CoPtr co_negate(const CoPtr& a, const Signature& sig);

/// Removes bot / top / ! from an event formula.
CoPtr expand_co_sugar(const CoPtr& a, const Signature* sig);

/// Rewrites every abbreviation into the core statement language plus
/// extension atoms:
///   Pr(a) <= e        ->  Pr(a => bot) >= 1-e       (< analogously, strict)
///   Pr(a) == e        ->  both bounds conjoined
///   Pr(a) != e        ->  strict bounds disjoined
///   comparisons with <=, <, ==, != -> swapped / conjoined / disjoined
///   bot / top         ->  counterfactual on the first variable and value
///   f -> g            ->  cneg(f) \/ g
///   cneg(f)           ->  compiled contradictory negation
///   dep(X;Y)          ->  conjunction of selective implications
///   Pr(a | g) rel e   ->  g => Pr(a) rel e
///   Pr(a | g) rel Pr(b | g)  ->  g => Pr(a) rel Pr(b)   (same condition)
///   cindep(a; b | g)  ->  zero-probability escapes \/ a conditional comparison
/// Cross-condition comparisons stay as extension atoms. Idempotent.
PcoPtr expand_sugar(const PcoPtr& f, const Signature* sig);

} // namespace cmt
