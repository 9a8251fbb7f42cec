#pragma once

#include "cmt/core.hpp"

namespace cmt {

/// Every valid function component over the signature: all endogenous-set
/// choices, all non-constant laws per variable (stored minimized, deduped),
/// cyclic combinations skipped. Deterministic order. Throws BudgetExceeded
/// when the table space alone is larger than `cap`.
std::vector<FunctionComponent> enumerate_components(const Signature& sig,
                                                    unsigned long long cap = 1'000'000);

/// Assignments compatible with the laws, in lexicographic order.
std::vector<Assignment> compatible_assignments(const Signature& sig,
                                               const FunctionComponent& laws);

/// How many causal multiteams of at most `max_rows` rows the signature
/// admits, given the components. Saturates at ULLONG_MAX.
unsigned long long count_models(const Signature& sig,
                                const std::vector<FunctionComponent>& components, Count max_rows);

/// Every causal multiteam with cardinality <= max_rows, including one
/// empty model per component. Deterministic order; BudgetExceeded if the
/// count estimate passes `cap`.
std::vector<CausalMultiteam> enumerate_models(const SigPtr& sig, Count max_rows,
                                              unsigned long long cap = 1'000'000);

} // namespace cmt
