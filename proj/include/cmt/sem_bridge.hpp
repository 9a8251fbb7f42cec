#pragma once

#include "cmt/core.hpp"
#include "cmt/formula.hpp"

#include <map>

namespace cmt {

/// Structural equations plus an exact distribution over the exogenous
/// variables. Keys of exo_dist are value tuples over the exogenous
/// variables in dom order.
struct Sem {
    SigPtr sig;
    FunctionComponent laws;
    std::map<Assignment, Rational> exo_dist;

    std::vector<int> exo_vars() const;
};

/// Validates laws (total, non-constant, acyclic) and the distribution
/// (tuples in range, weights nonnegative, total exactly 1).
Sem make_sem(SigPtr sig, FunctionComponent laws, std::map<Assignment, Rational> exo_dist);

/// The unique full assignment extending the exogenous tuple u under the
/// laws, computed in causal order.
Assignment solve_endogenous(const Sem& sem, const Assignment& u);

/// Total weight of the exogenous tuples whose solution matches the event;
/// the induced joint distribution, marginalized onto the event variables.
Rational joint_prob(const Sem& sem, const std::vector<VarVal>& event);

/// The smallest multiteam realizing the distribution: with b the least
/// common multiple of the weight denominators, a tuple of weight a/b
/// contributes a copies of its solution. Cardinality is exactly b.
CausalMultiteam sem_to_multiteam(const Sem& sem);

/// Counting marginal on the exogenous variables; laws carried over.
Sem multiteam_to_sem(const CausalMultiteam& m);

struct MarkovWitness {
    int var_a, val_a;
    int var_b, val_b;
    Rational joint, product;
};

struct MarkovReport {
    bool markovian = true;
    std::vector<MarkovWitness> witnesses;
};

/// Pairwise independence of the exogenous variables, the Markov condition
/// in the recursive case. Witnesses list every failing value pair.
MarkovReport markov_check(const CausalMultiteam& m);

} // namespace cmt
