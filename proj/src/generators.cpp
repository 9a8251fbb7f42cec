#include "cmt/generators.hpp"

#include <algorithm>

namespace cmt {

namespace {

const Rational& random_threshold(Rng& rng) {
    static const Rational pool[] = {Rational(0),    Rational(1, 4), Rational(1, 3),
                                    Rational(1, 2), Rational(2, 3), Rational(3, 4),
                                    Rational(1)};
    return pool[rng.below(7)];
}

VarVal random_eq_pair(Rng& rng, const Signature& sig) {
    int var = rng.below(sig.var_count());
    int val = rng.below(sig.range_size(var));
    return {sig.var_name(var), sig.value_name(var, val)};
}

CoPtr random_literal(Rng& rng, const Signature& sig) {
    VarVal p = random_eq_pair(rng, sig);
    return rng.flip() ? co_eq(p.var, p.value) : co_neq(p.var, p.value);
}

} // namespace

std::vector<VarVal> random_pairs(Rng& rng, const Signature& sig, int max_pairs) {
    int want = 1 + rng.below(std::min(max_pairs, sig.var_count()));
    std::vector<VarVal> pairs;
    std::vector<bool> used(static_cast<size_t>(sig.var_count()), false);
    while (static_cast<int>(pairs.size()) < want) {
        VarVal p = random_eq_pair(rng, sig);
        size_t var = static_cast<size_t>(*sig.var_index(p.var));
        if (used[var]) continue;
        used[var] = true;
        pairs.push_back(std::move(p));
    }
    return pairs;
}

CoPtr random_co(Rng& rng, const Signature& sig, int max_depth) {
    if (max_depth <= 1) return random_literal(rng, sig);
    int roll = rng.below(6);
    if (roll <= 1) return random_literal(rng, sig);
    if (roll == 5) {
        // draws are sequenced one by one so runs replay identically
        // whatever the compiler does with argument order
        std::vector<VarVal> pairs = random_pairs(rng, sig, 2);
        return co_cf(std::move(pairs), random_co(rng, sig, max_depth - 1));
    }
    CoPtr left = random_co(rng, sig, max_depth - 1);
    CoPtr right = random_co(rng, sig, max_depth - 1);
    switch (roll) {
        case 2: return co_and(left, right);
        case 3: return co_or(left, right);
        default: return co_sup(left, right);
    }
}

namespace {

PcoPtr random_atom(Rng& rng, const Signature& sig, const FormulaOptions& options) {
    Rel rel = rng.flip() ? Rel::Ge : Rel::Gt;
    if (options.sugar_rels) {
        static const Rel all[] = {Rel::Ge, Rel::Gt, Rel::Le, Rel::Lt, Rel::Eq, Rel::Ne};
        rel = all[rng.below(6)];
    }
    if (!options.prob_atoms || rng.below(4) == 0) {
        VarVal p = random_eq_pair(rng, sig);
        return pco_lit(p.var, p.value, rng.flip());
    }
    if (rng.below(4) == 0) {
        CoPtr lhs = random_co(rng, sig, 2);
        CoPtr rhs = random_co(rng, sig, 2);
        return pco_pr_cmp(lhs, rel, rhs);
    }
    CoPtr arg = random_co(rng, sig, 2);
    return pco_pr_const(arg, rel, random_threshold(rng));
}

PcoPtr random_pco_at(Rng& rng, const Signature& sig, const FormulaOptions& options, int depth) {
    if (depth <= 1) return random_atom(rng, sig, options);
    int roll = rng.below(options.conditionals ? 5 : 3);
    switch (roll) {
        case 0:
            return random_atom(rng, sig, options);
        case 1: {
            PcoPtr left = random_pco_at(rng, sig, options, depth - 1);
            PcoPtr right = random_pco_at(rng, sig, options, depth - 1);
            return pco_and(left, right);
        }
        case 2: {
            std::vector<PcoPtr> items;
            int n = 2 + rng.below(2);
            for (int i = 0; i < n; ++i)
                items.push_back(random_pco_at(rng, sig, options, depth - 1));
            return pco_gdisj(std::move(items));
        }
        case 3: {
            CoPtr antecedent = random_co(rng, sig, 2);
            return pco_sup(antecedent, random_pco_at(rng, sig, options, depth - 1));
        }
        default: {
            std::vector<VarVal> pairs = random_pairs(rng, sig, 2);
            return pco_cf(std::move(pairs), random_pco_at(rng, sig, options, depth - 1));
        }
    }
}

} // namespace

PcoPtr random_pco(Rng& rng, const Signature& sig, const FormulaOptions& options) {
    return random_pco_at(rng, sig, options, options.max_depth);
}

SigPtr random_signature(Rng& rng, int max_vars, int max_range) {
    int vars = 2 + rng.below(std::max(1, max_vars - 1));
    static const char* names[] = {"A", "B", "C", "D", "E", "F"};
    std::vector<std::string> dom;
    std::vector<std::vector<std::string>> ranges;
    for (int v = 0; v < vars; ++v) {
        dom.push_back(names[v]);
        int size = 2 + rng.below(std::max(1, max_range - 1));
        std::vector<std::string> range;
        for (int i = 0; i < size; ++i) range.push_back(std::to_string(i));
        ranges.push_back(std::move(range));
    }
    return std::make_shared<Signature>(std::move(dom), std::move(ranges));
}

FunctionComponent random_laws(Rng& rng, const Signature& sig) {
    int n = sig.var_count();
    // wire endogenous variables against earlier variables only
    FunctionComponent laws;
    for (int v = 1; v < n; ++v) {
        if (rng.below(2) != 0) continue;  // stays exogenous
        std::vector<int> parents;
        for (int p = 0; p < v; ++p)
            if (rng.flip()) parents.push_back(p);
        if (parents.empty()) parents.push_back(rng.below(v));
        CausalFunction f;
        f.target = v;
        f.args = parents;
        size_t entries = 1;
        for (int p : parents) entries *= static_cast<size_t>(sig.range_size(p));
        int out_range = sig.range_size(v);
        bool constant = true;
        for (size_t i = 0; i < entries; ++i) {
            f.table.push_back(rng.below(out_range));
            if (f.table.back() != f.table.front()) constant = false;
        }
        if (constant) f.table.back() = (f.table.back() + 1) % out_range;
        laws.functions.emplace(v, minimize_parents(f, sig));
    }
    return laws;
}

CausalMultiteam random_model(Rng& rng, SigPtr sig, FunctionComponent laws, int rows) {
    std::vector<int> exo;
    for (int v = 0; v < sig->var_count(); ++v)
        if (!laws.has(v)) exo.push_back(v);
    std::vector<int> order = topological_order(laws, *sig);

    Multiteam team;
    for (int i = 0; i < rows; ++i) {
        Assignment row(static_cast<size_t>(sig->var_count()), 0);
        for (int v : exo) row[static_cast<size_t>(v)] = rng.below(sig->range_size(v));
        for (int v : order)
            if (laws.has(v))
                row[static_cast<size_t>(v)] = laws.functions.at(v).apply_full(row, *sig);
        team.add(row, 1 + rng.below(3));
    }
    return CausalMultiteam::create(std::move(sig), std::move(team), std::move(laws));
}

} // namespace cmt
