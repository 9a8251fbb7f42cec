#pragma once

#include "cmt/core.hpp"
#include "cmt/formula.hpp"

#include <vector>

namespace cmt {

/// Weak contradictory negation of a sugar-free core statement: atoms flip
/// their relation, & and \/ swap, a selective implication gains a
/// Pr(antecedent) > 0 guard, counterfactuals commute. On nonempty models
/// the result holds exactly when the input fails. Extension atoms
/// (Pr*, NE, <|>, cross-condition comparisons) are rejected.
PcoPtr compile_cneg(const PcoPtr& f, const Signature& sig);

/// Collapses nested counterfactuals: X=x ~> (Y=y ~> f) becomes
/// (X' = x' & Y=y) ~> f with X' = X minus the variables of Y, whenever
/// both antecedents are consistent. Applied bottom-up to a fixpoint.
PcoPtr flatten_counterfactuals(const PcoPtr& f);

enum class Rung {
    BareAtom = 0,  // Pr(a) rel t
    Rung1 = 1,     // g => Pr(a) rel t
    Rung2 = 2,     // X=x ~> Pr(a) rel t
    Rung3 = 3,     // g => (X=x ~> Pr(a) rel t)
};

struct NormalForm {
    PcoPtr root;  // an &/\/ tree over the four leaf shapes
};

struct NormalFormLeaf {
    PcoPtr leaf;
    Rung rung;
};

/// Rewrites a sugar-free core statement so that every counterfactual has
/// an atomic consequent and every selective implication ends in a
/// counterfactual or an atom; literal leaves become Pr(literal) >= 1.
/// The result is satisfaction-equivalent to the input.
NormalForm normal_form(const PcoPtr& f, const Signature& sig);

/// The leaves of a normal form in left-to-right order.
std::vector<NormalFormLeaf> normal_form_leaves(const NormalForm& nf);

struct RungReport {
    std::vector<NormalFormLeaf> leaves;
    int max_rung = 1;  // bare atoms and conditioning count as 1
};

RungReport classify_rung(const NormalForm& nf);

/// Structural check of the two output conditions; used by tests and the
/// suite runner. Returns an empty string when the shape is correct.
std::string check_normal_form_shape(const NormalForm& nf);

} // namespace cmt
