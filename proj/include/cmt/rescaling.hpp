#pragma once

#include "cmt/core.hpp"
#include "cmt/formula.hpp"

namespace cmt {

/// Probability of one assignment: count(s) / cardinality.
Rational epsilon_of(const CausalMultiteam& m, const Assignment& s);

/// Same laws and identical per-assignment probabilities (or both empty).
bool is_rescaling(const CausalMultiteam& a, const CausalMultiteam& b);

/// Identical per-assignment probabilities of the bare multiteams.
bool multiteam_rescaling(const Multiteam& a, const Multiteam& b);

/// Every count multiplied by n >= 1.
CausalMultiteam scale(const CausalMultiteam& m, Count n);

/// The smallest model both a and b scale to; requires is_rescaling(a, b)
/// and both nonempty.
CausalMultiteam common_multiple(const CausalMultiteam& a, const CausalMultiteam& b);

/// Counts divided by their gcd; two models are rescalings of each other
/// exactly when their canonical forms are equal.
CausalMultiteam canonical(const CausalMultiteam& m);

/// Statement pinning down the distribution up to rescaling: for every
/// assignment of the signature, its exact probability (0 for absent rows).
/// The empty multiteam is captured by bot.
PcoPtr theta_formula(const Multiteam& team, const Signature& sig);

/// Event formula pinning down the laws: endogenous variables respond to
/// every forced context per their tables, exogenous variables never move.
/// Contains no tensor disjunction.
CoPtr phi_formula(const FunctionComponent& laws, const Signature& sig);

/// A finite set of models over one signature, deduped.
class FiniteClass {
public:
    explicit FiniteClass(std::vector<CausalMultiteam> members);
    const std::vector<CausalMultiteam>& members() const { return members_; }
    const SigPtr& sig_ptr() const { return members_.front().sig_ptr(); }

private:
    std::vector<CausalMultiteam> members_;
};

/// Defining statement of the class: a global disjunction of
/// distribution-capture and law-capture conjunctions, one per member
/// (law capture replaced by top for empty members).
PcoPtr psi_formula(const FiniteClass& k);

/// At least k rows: a k-fold strict split into nonempty parts.
PcoPtr theta_k_formula(int k);

struct DefinabilityReport {
    bool exact_match = true;
    unsigned long long models_checked = 0;
    std::vector<std::string> mismatches;  // capped listing
};

/// Enumerates every model up to size_bound rows and compares satisfaction
/// of the class's defining statement against membership in the
/// rescaling closure of the class plus all empty models.
DefinabilityReport check_definability(const FiniteClass& k, Count size_bound,
                                      unsigned long long cap = 1'000'000);

} // namespace cmt
