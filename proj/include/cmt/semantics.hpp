#pragma once

#include "cmt/core.hpp"
#include "cmt/formula.hpp"

#include <optional>

namespace cmt {

struct TraceNode;
using TracePtr = std::shared_ptr<const TraceNode>;

struct TraceNode {
    std::string clause;   // which semantic clause fired
    std::string detail;   // formula text or computed numbers
    bool verdict = false;
    std::vector<TracePtr> children;
};

struct EvalResult {
    bool verdict = false;
    TracePtr trace;  // present only when requested
};

/// Does a single row satisfy an event formula? Interventions inside the
/// formula recompute the row against the (restricted) laws.
bool eval_single(const Assignment& row, const FunctionComponent& laws, const Signature& sig,
                 const CoPtr& alpha);

/// Event formulas are flat: the whole multiteam satisfies one exactly when
/// every row does.
bool satisfies_co(const CausalMultiteam& m, const CoPtr& alpha);

/// Rows whose singleton satisfies alpha, with their counts; laws unchanged.
CausalMultiteam restrict_by(const CausalMultiteam& m, const CoPtr& alpha);

/// The model after do(pairs): intervened variables are pinned and lose
/// their laws, all other endogenous variables are recomputed in causal
/// order, exogenous rows are kept. Cardinality is preserved.
CausalMultiteam intervene(const CausalMultiteam& m, const std::vector<VarVal>& pairs);

/// Counting probability |rows satisfying alpha| / |rows|.
Rational prob(const CausalMultiteam& m, const CoPtr& alpha);

/// P(alpha and gamma) / P(gamma); nullopt when the condition has
/// probability zero.
std::optional<Rational> cond_prob(const CausalMultiteam& m, const CoPtr& alpha, const CoPtr& gamma);

/// The satisfaction relation for statements. Sugar is expanded against the
/// model's signature before evaluation, so any parsed formula is accepted.
EvalResult satisfies(const CausalMultiteam& m, const PcoPtr& phi, bool with_trace = false);

/// Convenience: just the verdict.
bool holds(const CausalMultiteam& m, const PcoPtr& phi);
bool holds(const CausalMultiteam& m, const Query& q);

struct MixedReport {
    bool do_form = false;     // pairs ~> (gamma => Pr(alpha) rel t)
    bool pearl_form = false;  // gamma => (pairs ~> Pr(alpha) rel t)
    std::optional<Rational> prob_do;     // P_{do(pairs)}(alpha | gamma)
    std::optional<Rational> prob_pearl;  // P(pairs ~> alpha | gamma)
};

/// Both orders of observing and intervening, with the two conditional
/// probabilities they talk about. `threshold` is a constant or a second
/// event formula. Probabilities are absent when their condition has
/// probability zero or the model is empty.
MixedReport satisfies_mixed(const CausalMultiteam& m, const CoPtr& gamma,
                            const std::vector<VarVal>& pairs, const CoPtr& alpha, Rel rel,
                            const std::variant<Rational, CoPtr>& threshold);

} // namespace cmt
