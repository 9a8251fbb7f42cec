#include "cmt/enumerate.hpp"

#include <algorithm>
#include <set>

namespace cmt {

namespace {

/// All laws an endogenous variable can have: every non-constant total map
/// from the other variables' values, minimized and deduped.
std::vector<CausalFunction> candidate_laws(const Signature& sig, int target,
                                           unsigned long long cap) {
    std::vector<int> full_args;
    std::vector<int> radices;
    for (int v = 0; v < sig.var_count(); ++v)
        if (v != target) {
            full_args.push_back(v);
            radices.push_back(sig.range_size(v));
        }
    unsigned long long rows = 1;
    for (int r : radices) {
        rows *= static_cast<unsigned long long>(r);
        if (rows > cap) throw BudgetExceeded(rows);
    }
    unsigned long long tables = 1;
    for (unsigned long long i = 0; i < rows; ++i) {
        tables *= static_cast<unsigned long long>(sig.range_size(target));
        if (tables > cap) throw BudgetExceeded(tables);
    }

    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    std::vector<CausalFunction> out;
    std::vector<int> table(rows, 0);
    std::vector<int> table_radices(rows, sig.range_size(target));
    do {
        if (std::adjacent_find(table.begin(), table.end(), std::not_equal_to<>()) == table.end())
            continue;  // constant
        CausalFunction f;
        f.target = target;
        f.args = full_args;
        f.table = table;
        CausalFunction min = minimize_parents(f, sig);
        if (seen.emplace(min.args, min.table).second) out.push_back(std::move(min));
    } while (next_tuple(table, table_radices));
    return out;
}

} // namespace

std::vector<FunctionComponent> enumerate_components(const Signature& sig,
                                                    unsigned long long cap) {
    int n = sig.var_count();
    std::vector<std::vector<CausalFunction>> per_var;
    for (int v = 0; v < n; ++v) per_var.push_back(candidate_laws(sig, v, cap));

    std::vector<FunctionComponent> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> endo;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) endo.push_back(v);

        unsigned long long combos = 1;
        for (int v : endo) {
            combos *= std::max<unsigned long long>(per_var[static_cast<size_t>(v)].size(), 1);
            if (combos > cap) throw BudgetExceeded(combos);
        }

        std::vector<int> choice(endo.size(), 0);
        std::vector<int> radices;
        for (int v : endo) radices.push_back(static_cast<int>(per_var[static_cast<size_t>(v)].size()));
        if (std::any_of(radices.begin(), radices.end(), [](int r) { return r == 0; })) continue;
        do {
            FunctionComponent comp;
            for (size_t i = 0; i < endo.size(); ++i)
                comp.functions.emplace(endo[i], per_var[static_cast<size_t>(endo[i])]
                                                       [static_cast<size_t>(choice[i])]);
            try {
                topological_order(comp, sig);
            } catch (const CyclicGraph&) {
                continue;
            }
            out.push_back(std::move(comp));
        } while (next_tuple(choice, radices));
    }
    return out;
}

std::vector<Assignment> compatible_assignments(const Signature& sig,
                                               const FunctionComponent& laws) {
    std::vector<int> radices;
    for (int v = 0; v < sig.var_count(); ++v) radices.push_back(sig.range_size(v));
    std::vector<Assignment> out;
    Assignment row(static_cast<size_t>(sig.var_count()), 0);
    do {
        bool ok = true;
        for (const auto& [target, f] : laws.functions)
            if (row[static_cast<size_t>(target)] != f.apply_full(row, sig)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(row);
    } while (next_tuple(row, radices));
    return out;
}

namespace {

unsigned long long saturating_mul(unsigned long long a, unsigned long long b) {
    if (a != 0 && b > ~0ull / a) return ~0ull;
    return a * b;
}

/// Count vectors of length k with sum <= bound: C(k + bound, k).
unsigned long long count_multiteams(size_t k, Count bound) {
    unsigned long long result = 1;
    for (size_t i = 1; i <= k; ++i) {
        result = saturating_mul(result, static_cast<unsigned long long>(bound) + i);
        if (result == ~0ull) return result;
        result /= i;
    }
    return result;
}

} // namespace

unsigned long long count_models(const Signature& sig,
                                const std::vector<FunctionComponent>& components, Count max_rows) {
    unsigned long long total = 0;
    for (const auto& comp : components) {
        size_t k = compatible_assignments(sig, comp).size();
        unsigned long long here = count_multiteams(k, max_rows);
        if (here == ~0ull || total > ~0ull - here) return ~0ull;
        total += here;
    }
    return total;
}

std::vector<CausalMultiteam> enumerate_models(const SigPtr& sig, Count max_rows,
                                              unsigned long long cap) {
    std::vector<FunctionComponent> components = enumerate_components(*sig, cap);
    unsigned long long estimate = count_models(*sig, components, max_rows);
    if (estimate > cap) throw BudgetExceeded(estimate);

    std::vector<CausalMultiteam> out;
    out.reserve(estimate);
    for (const auto& comp : components) {
        std::vector<Assignment> rows = compatible_assignments(*sig, comp);
        std::vector<Count> counts(rows.size(), 0);
        while (true) {
            Multiteam team;
            for (size_t i = 0; i < rows.size(); ++i)
                if (counts[i] > 0) team.counts.emplace(rows[i], counts[i]);
            out.push_back(CausalMultiteam::unchecked(sig, std::move(team), comp));

            // odometer bounded by total cardinality
            size_t i = 0;
            while (i < counts.size()) {
                ++counts[i];
                Count total = 0;
                for (Count c : counts) total += c;
                if (total <= max_rows) break;
                counts[i] = 0;
                ++i;
            }
            if (i == counts.size()) break;
        }
    }
    return out;
}

} // namespace cmt
