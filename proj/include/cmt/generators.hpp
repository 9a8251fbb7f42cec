#pragma once

#include "cmt/core.hpp"
#include "cmt/formula.hpp"

#include <cstdint>

namespace cmt {

/// Deterministic generator (splitmix64) so suite runs reproduce exactly
/// from a seed, independent of platform or standard library.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
    bool flip() { return (next() & 1) != 0; }

private:
    uint64_t state_;
};

struct FormulaOptions {
    int max_depth = 4;
    bool prob_atoms = true;       // Pr(...) >= e and comparisons
    bool sugar_rels = false;      // also <=, <, ==, != on atoms
    bool conditionals = true;     // => and ~> connectives
};

/// Random event formula of bounded depth over the signature.
CoPtr random_co(Rng& rng, const Signature& sig, int max_depth);

/// Random statement in the core language (plus optional relation sugar).
PcoPtr random_pco(Rng& rng, const Signature& sig, const FormulaOptions& options);

/// Random consistent intervention antecedent (1 to max_pairs variables).
std::vector<VarVal> random_pairs(Rng& rng, const Signature& sig, int max_pairs);

/// Random signature with 2..max_vars variables of 2..max_range values.
SigPtr random_signature(Rng& rng, int max_vars, int max_range);

/// Random recursive laws over the signature: a random endogenous set wired
/// acyclically with random non-constant tables.
FunctionComponent random_laws(Rng& rng, const Signature& sig);

/// Random model: rows are solutions of random exogenous draws under the
/// laws, with small multiplicities. May be empty when rows = 0.
CausalMultiteam random_model(Rng& rng, SigPtr sig, FunctionComponent laws, int rows);

} // namespace cmt
