#include "cmt/sem_bridge.hpp"

#include "cmt/semantics.hpp"

#include <limits>

namespace cmt {

std::vector<int> Sem::exo_vars() const {
    std::vector<int> out;
    for (int v = 0; v < sig->var_count(); ++v)
        if (!laws.has(v)) out.push_back(v);
    return out;
}

Sem make_sem(SigPtr sig, FunctionComponent laws, std::map<Assignment, Rational> exo_dist) {
    // reuse model validation for the laws by pairing them with no rows
    CausalMultiteam shell = CausalMultiteam::create(sig, Multiteam{}, std::move(laws));

    Sem sem{sig, shell.laws(), std::move(exo_dist)};
    std::vector<int> exo = sem.exo_vars();
    Rational total(0);
    for (const auto& [u, p] : sem.exo_dist) {
        if (u.size() != exo.size()) throw ModelError("exogenous tuple has the wrong arity");
        for (size_t i = 0; i < exo.size(); ++i)
            if (u[i] < 0 || u[i] >= sig->range_size(exo[i]))
                throw RangeError(sig->var_name(exo[i]), std::to_string(u[i]));
        if (p < Rational(0)) throw ModelError("negative weight in the exogenous distribution");
        total += p;
    }
    if (total != Rational(1))
        throw ModelError("exogenous distribution sums to " + total.str() + ", not 1");
    return sem;
}

Assignment solve_endogenous(const Sem& sem, const Assignment& u) {
    const Signature& sig = *sem.sig;
    std::vector<int> exo = sem.exo_vars();
    if (u.size() != exo.size()) throw ModelError("exogenous tuple has the wrong arity");
    Assignment row(static_cast<size_t>(sig.var_count()), 0);
    for (size_t i = 0; i < exo.size(); ++i) row[static_cast<size_t>(exo[i])] = u[i];
    for (int v : topological_order(sem.laws, sig))
        if (sem.laws.has(v))
            row[static_cast<size_t>(v)] = sem.laws.functions.at(v).apply_full(row, sig);
    return row;
}

Rational joint_prob(const Sem& sem, const std::vector<VarVal>& event) {
    const Signature& sig = *sem.sig;
    std::vector<std::pair<int, int>> resolved;
    for (const auto& e : event) {
        auto var = sig.var_index(e.var);
        if (!var) throw UnknownVariable(e.var, 0);
        auto val = sig.value_index(*var, e.value);
        if (!val) throw RangeError(e.var, e.value);
        for (const auto& [v, x] : resolved) {
            (void)x;
            if (v == *var) throw ModelError("event mentions '" + e.var + "' twice");
        }
        resolved.emplace_back(*var, *val);
    }
    Rational total(0);
    for (const auto& [u, p] : sem.exo_dist) {
        Assignment row = solve_endogenous(sem, u);
        bool match = true;
        for (const auto& [var, val] : resolved)
            if (row[static_cast<size_t>(var)] != val) {
                match = false;
                break;
            }
        if (match) total += p;
    }
    return total;
}

CausalMultiteam sem_to_multiteam(const Sem& sem) {
    using Int = Rational::Int;
    Int common(1);
    for (const auto& [u, p] : sem.exo_dist) {
        (void)u;
        if (p > Rational(0)) common = boost::multiprecision::lcm(common, p.denominator());
    }
    Multiteam team;
    for (const auto& [u, p] : sem.exo_dist) {
        if (p == Rational(0)) continue;
        Int copies = p.numerator() * (common / p.denominator());
        if (copies > Int(std::numeric_limits<Count>::max()))
            throw ModelError("distribution denominators too large to realize by counting");
        team.add(solve_endogenous(sem, u), static_cast<Count>(copies));
    }
    return CausalMultiteam::unchecked(sem.sig, std::move(team), sem.laws);
}

Sem multiteam_to_sem(const CausalMultiteam& m) {
    if (m.empty()) throw EmptyModel();
    std::vector<int> exo = m.exogenous();
    std::map<Assignment, Count> marginal;
    for (const auto& [row, n] : m.team().counts) {
        Assignment u;
        u.reserve(exo.size());
        for (int v : exo) u.push_back(row[static_cast<size_t>(v)]);
        marginal[u] += n;
    }
    Count total = m.cardinality();
    std::map<Assignment, Rational> dist;
    for (const auto& [u, n] : marginal) dist.emplace(u, Rational(n, total));
    return Sem{m.sig_ptr(), m.laws(), std::move(dist)};
}

MarkovReport markov_check(const CausalMultiteam& m) {
    if (m.empty()) throw EmptyModel();
    const Signature& sig = m.sig();
    std::vector<int> exo = m.exogenous();
    Count total = m.cardinality();

    MarkovReport report;
    for (size_t i = 0; i < exo.size(); ++i) {
        for (size_t j = i + 1; j < exo.size(); ++j) {
            int a = exo[i], b = exo[j];
            for (int va = 0; va < sig.range_size(a); ++va) {
                for (int vb = 0; vb < sig.range_size(b); ++vb) {
                    Count joint = 0, hits_a = 0, hits_b = 0;
                    for (const auto& [row, n] : m.team().counts) {
                        bool ma = row[static_cast<size_t>(a)] == va;
                        bool mb = row[static_cast<size_t>(b)] == vb;
                        if (ma) hits_a += n;
                        if (mb) hits_b += n;
                        if (ma && mb) joint += n;
                    }
                    Rational lhs(joint, total);
                    Rational rhs = Rational(hits_a, total) * Rational(hits_b, total);
                    if (lhs != rhs) {
                        report.markovian = false;
                        report.witnesses.push_back({a, va, b, vb, lhs, rhs});
                    }
                }
            }
        }
    }
    return report;
}

} // namespace cmt
