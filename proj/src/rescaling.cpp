#include "cmt/rescaling.hpp"

#include "cmt/enumerate.hpp"
#include "cmt/semantics.hpp"
#include "cmt/sugar.hpp"

#include <numeric>

namespace cmt {

Rational epsilon_of(const CausalMultiteam& m, const Assignment& s) {
    if (m.empty()) throw EmptyModel();
    auto it = m.team().counts.find(s);
    Count hits = it == m.team().counts.end() ? 0 : it->second;
    return Rational(hits, m.cardinality());
}

bool multiteam_rescaling(const Multiteam& a, const Multiteam& b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    Count ca = a.cardinality(), cb = b.cardinality();
    if (a.counts.size() != b.counts.size()) return false;
    auto ita = a.counts.begin();
    auto itb = b.counts.begin();
    for (; ita != a.counts.end(); ++ita, ++itb) {
        if (ita->first != itb->first) return false;
        // counts proportional: n_a / ca == n_b / cb
        if (ita->second * cb != itb->second * ca) return false;
    }
    return true;
}

bool is_rescaling(const CausalMultiteam& a, const CausalMultiteam& b) {
    if (a.sig() != b.sig()) throw SignatureMismatch();
    return a.laws() == b.laws() && multiteam_rescaling(a.team(), b.team());
}

CausalMultiteam scale(const CausalMultiteam& m, Count n) {
    if (n < 1) throw ModelError("scale factor must be at least 1");
    Multiteam scaled;
    for (const auto& [row, c] : m.team().counts) scaled.counts.emplace(row, c * n);
    return CausalMultiteam::unchecked(m.sig_ptr(), std::move(scaled), m.laws());
}

CausalMultiteam common_multiple(const CausalMultiteam& a, const CausalMultiteam& b) {
    if (a.empty() || b.empty()) throw EmptyModel();
    if (!is_rescaling(a, b)) throw NotRescalings();
    Count ca = a.cardinality(), cb = b.cardinality();
    Count common = std::lcm(ca, cb);
    CausalMultiteam result = scale(a, common / ca);
    if (result.team() != scale(b, common / cb).team())
        throw Error("common multiple disagrees between the two routes");
    return result;
}

CausalMultiteam canonical(const CausalMultiteam& m) {
    Count divisor = 0;
    for (const auto& [row, c] : m.team().counts) {
        (void)row;
        divisor = std::gcd(divisor, c);
    }
    if (divisor <= 1) return m;
    Multiteam reduced;
    for (const auto& [row, c] : m.team().counts) reduced.counts.emplace(row, c / divisor);
    return CausalMultiteam::unchecked(m.sig_ptr(), std::move(reduced), m.laws());
}

PcoPtr theta_formula(const Multiteam& team, const Signature& sig) {
    if (team.empty()) return pco_bot();
    Count total = team.cardinality();

    std::vector<int> radices;
    for (int v = 0; v < sig.var_count(); ++v) radices.push_back(sig.range_size(v));

    std::vector<PcoPtr> conjuncts;
    Assignment row(static_cast<size_t>(sig.var_count()), 0);
    do {
        std::vector<CoPtr> eqs;
        for (int v = 0; v < sig.var_count(); ++v)
            eqs.push_back(co_eq(sig.var_name(v), sig.value_name(v, row[static_cast<size_t>(v)])));
        auto it = team.counts.find(row);
        Count hits = it == team.counts.end() ? 0 : it->second;
        conjuncts.push_back(pco_pr_const(co_and_all(eqs), Rel::Eq, Rational(hits, total)));
    } while (next_tuple(row, radices));
    return pco_and_all(conjuncts);
}

CoPtr phi_formula(const FunctionComponent& laws, const Signature& sig) {
    std::vector<CoPtr> conjuncts;
    for (int v = 0; v < sig.var_count(); ++v) {
        std::vector<int> others;
        std::vector<int> radices;
        for (int w = 0; w < sig.var_count(); ++w)
            if (w != v) {
                others.push_back(w);
                radices.push_back(sig.range_size(w));
            }

        auto context_pairs = [&](const std::vector<int>& tuple) {
            std::vector<VarVal> pairs;
            for (size_t i = 0; i < others.size(); ++i)
                pairs.push_back({sig.var_name(others[i]), sig.value_name(others[i], tuple[i])});
            return pairs;
        };

        if (laws.has(v)) {
            // endogenous: under every forced context, v lands on its table value
            const CausalFunction& f = laws.functions.at(v);
            std::vector<int> tuple(others.size(), 0);
            do {
                Assignment full(static_cast<size_t>(sig.var_count()), 0);
                for (size_t i = 0; i < others.size(); ++i)
                    full[static_cast<size_t>(others[i])] = tuple[i];
                int out = f.apply_full(full, sig);
                conjuncts.push_back(
                    co_cf(context_pairs(tuple), co_eq(sig.var_name(v), sig.value_name(v, out))));
            } while (next_tuple(tuple, radices));
        } else {
            // exogenous: forcing everything else never moves v
            for (int val = 0; val < sig.range_size(v); ++val) {
                CoPtr holds_value = co_eq(sig.var_name(v), sig.value_name(v, val));
                if (others.empty()) {
                    conjuncts.push_back(co_sup(holds_value, holds_value));
                    continue;
                }
                std::vector<int> tuple(others.size(), 0);
                do {
                    conjuncts.push_back(
                        co_sup(holds_value, co_cf(context_pairs(tuple), holds_value)));
                } while (next_tuple(tuple, radices));
            }
        }
    }
    if (conjuncts.empty()) throw ModelError("signature admits no law-capture formula");
    return co_and_all(conjuncts);
}

FiniteClass::FiniteClass(std::vector<CausalMultiteam> members) {
    if (members.empty()) throw EmptyClass();
    for (const auto& m : members)
        if (m.sig() != members.front().sig()) throw SignatureMismatch();
    for (auto& m : members) {
        bool fresh = true;
        for (const auto& kept : members_)
            if (kept == m) {
                fresh = false;
                break;
            }
        if (fresh) members_.push_back(std::move(m));
    }
}

PcoPtr psi_formula(const FiniteClass& k) {
    std::vector<PcoPtr> disjuncts;
    for (const auto& m : k.members()) {
        PcoPtr theta = theta_formula(m.team(), m.sig());
        PcoPtr phi;
        if (m.empty()) {
            phi = pco_top();
        } else {
            auto embedded = co_to_pco(phi_formula(m.laws(), m.sig()));
            phi = *embedded;  // law capture has no tensor, so it always embeds
        }
        disjuncts.push_back(pco_and(theta, phi));
    }
    if (disjuncts.size() == 1) return disjuncts.front();
    return pco_gdisj(std::move(disjuncts));
}

PcoPtr theta_k_formula(int k) {
    if (k < 1) throw ModelError("row threshold must be at least 1");
    PcoPtr acc = pco_ne();
    for (int i = 1; i < k; ++i) acc = pco_strict_tensor(acc, pco_ne());
    return acc;
}

DefinabilityReport check_definability(const FiniteClass& k, Count size_bound,
                                      unsigned long long cap) {
    const SigPtr& sig = k.sig_ptr();
    PcoPtr psi = expand_sugar(psi_formula(k), sig.get());

    std::vector<CausalMultiteam> all = enumerate_models(sig, size_bound, cap);

    DefinabilityReport report;
    for (const auto& m : all) {
        ++report.models_checked;
        bool defined = holds(m, psi);
        bool in_closure = m.empty();
        if (!in_closure)
            for (const auto& member : k.members())
                if (!member.empty() && is_rescaling(m, member)) {
                    in_closure = true;
                    break;
                }
        if (defined != in_closure) {
            report.exact_match = false;
            if (report.mismatches.size() < 20) {
                std::string what = defined ? "defined but outside closure" : "in closure but not defined";
                std::string rows;
                for (const auto& [row, n] : m.team().counts)
                    rows += format_row(row, *sig) + "x" + std::to_string(n) + " ";
                report.mismatches.push_back(what + ": {" + rows + "}");
            }
        }
    }
    return report;
}

} // namespace cmt
