#include "cmt/semantics.hpp"

#include "cmt/printer.hpp"
#include "cmt/sugar.hpp"

#include <map>
#include <sstream>

namespace cmt {

namespace {

int resolve_var(const Signature& sig, const std::string& name) {
    auto idx = sig.var_index(name);
    if (!idx) throw UnknownVariable(name, 0);
    return *idx;
}

int resolve_value(const Signature& sig, int var, const std::string& token) {
    auto idx = sig.value_index(var, token);
    if (!idx) throw RangeError(sig.var_name(var), token);
    return *idx;
}

std::vector<std::pair<int, int>> resolve_pairs(const Signature& sig,
                                               const std::vector<VarVal>& pairs) {
    std::vector<std::pair<int, int>> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) {
        int var = resolve_var(sig, p.var);
        out.emplace_back(var, resolve_value(sig, var, p.value));
    }
    return out;
}

} // namespace

bool eval_single(const Assignment& row, const FunctionComponent& laws, const Signature& sig,
                 const CoPtr& alpha) {
    switch (alpha->kind) {
        case CoKind::Eq: {
            int var = resolve_var(sig, alpha->var);
            return row[static_cast<size_t>(var)] == resolve_value(sig, var, alpha->value);
        }
        case CoKind::Neq: {
            int var = resolve_var(sig, alpha->var);
            return row[static_cast<size_t>(var)] != resolve_value(sig, var, alpha->value);
        }
        case CoKind::And:
            return eval_single(row, laws, sig, alpha->left) &&
                   eval_single(row, laws, sig, alpha->right);
        case CoKind::Or:
            return eval_single(row, laws, sig, alpha->left) ||
                   eval_single(row, laws, sig, alpha->right);
        case CoKind::Sup:
            return !eval_single(row, laws, sig, alpha->left) ||
                   eval_single(row, laws, sig, alpha->right);
        case CoKind::Cf: {
            if (!is_consistent_antecedent(alpha->antecedent)) return true;
            auto resolved = resolve_pairs(sig, alpha->antecedent);
            FunctionComponent cut = laws;
            for (const auto& [var, value] : resolved) {
                (void)value;
                cut.functions.erase(var);
            }
            Assignment next = row;
            for (const auto& [var, value] : resolved) next[static_cast<size_t>(var)] = value;
            for (int v : topological_order(cut, sig))
                if (cut.has(v)) {
                    bool pinned = false;
                    for (const auto& [var, value] : resolved) {
                        (void)value;
                        if (var == v) pinned = true;
                    }
                    if (!pinned)
                        next[static_cast<size_t>(v)] = cut.functions.at(v).apply_full(next, sig);
                }
            return eval_single(next, cut, sig, alpha->body);
        }
        case CoKind::Bot:
            return false;
        case CoKind::Top:
            return true;
        case CoKind::Not:
            return !eval_single(row, laws, sig, alpha->left);
    }
    return false;
}

bool satisfies_co(const CausalMultiteam& m, const CoPtr& alpha) {
    for (const auto& [row, n] : m.team().counts) {
        (void)n;
        if (!eval_single(row, m.laws(), m.sig(), alpha)) return false;
    }
    return true;
}

CausalMultiteam restrict_by(const CausalMultiteam& m, const CoPtr& alpha) {
    Multiteam kept;
    for (const auto& [row, n] : m.team().counts)
        if (eval_single(row, m.laws(), m.sig(), alpha)) kept.counts.emplace(row, n);
    return CausalMultiteam::unchecked(m.sig_ptr(), std::move(kept), m.laws());
}

CausalMultiteam intervene(const CausalMultiteam& m, const std::vector<VarVal>& pairs) {
    const Signature& sig = m.sig();
    auto resolved = resolve_pairs(sig, pairs);
    for (size_t i = 0; i < resolved.size(); ++i)
        for (size_t j = i + 1; j < resolved.size(); ++j)
            if (resolved[i].first == resolved[j].first &&
                resolved[i].second != resolved[j].second)
                throw InconsistentIntervention(sig.var_name(resolved[i].first));

    FunctionComponent cut = m.laws();
    for (const auto& [var, value] : resolved) {
        (void)value;
        cut.functions.erase(var);
    }
    std::vector<int> order = topological_order(cut, sig);
    std::vector<bool> pinned(static_cast<size_t>(sig.var_count()), false);
    for (const auto& [var, value] : resolved) {
        (void)value;
        pinned[static_cast<size_t>(var)] = true;
    }

    Multiteam moved;
    for (const auto& [row, n] : m.team().counts) {
        Assignment next = row;
        for (const auto& [var, value] : resolved) next[static_cast<size_t>(var)] = value;
        for (int v : order)
            if (!pinned[static_cast<size_t>(v)] && cut.has(v))
                next[static_cast<size_t>(v)] = cut.functions.at(v).apply_full(next, sig);
        moved.counts[next] += n;
    }
    return CausalMultiteam::unchecked(m.sig_ptr(), std::move(moved), std::move(cut));
}

Rational prob(const CausalMultiteam& m, const CoPtr& alpha) {
    if (m.empty()) throw EmptyModel();
    Count hit = 0;
    for (const auto& [row, n] : m.team().counts)
        if (eval_single(row, m.laws(), m.sig(), alpha)) hit += n;
    return Rational(hit, m.cardinality());
}

std::optional<Rational> cond_prob(const CausalMultiteam& m, const CoPtr& alpha,
                                  const CoPtr& gamma) {
    if (m.empty()) throw EmptyModel();
    Count cond_hit = 0, both_hit = 0;
    for (const auto& [row, n] : m.team().counts) {
        if (!eval_single(row, m.laws(), m.sig(), gamma)) continue;
        cond_hit += n;
        if (eval_single(row, m.laws(), m.sig(), alpha)) both_hit += n;
    }
    if (cond_hit == 0) return std::nullopt;
    return Rational(both_hit, cond_hit);
}

namespace {

bool compare(const Rational& a, Rel rel, const Rational& b) {
    switch (rel) {
        case Rel::Ge: return a >= b;
        case Rel::Gt: return a > b;
        case Rel::Le: return a <= b;
        case Rel::Lt: return a < b;
        case Rel::Eq: return a == b;
        case Rel::Ne: return a != b;
    }
    return false;
}

Rational raw_prob(const CausalMultiteam& m, const CoPtr& alpha) {
    Count hit = 0;
    for (const auto& [row, n] : m.team().counts)
        if (eval_single(row, m.laws(), m.sig(), alpha)) hit += n;
    return Rational(hit, m.cardinality());
}

class Evaluator {
public:
    Evaluator(bool with_trace) : with_trace_(with_trace) {}

    bool eval(const CausalMultiteam& m, const PcoPtr& f, TracePtr* trace_out) {
        switch (f->kind) {
            case PcoKind::Lit: {
                CoPtr lit = f->positive ? co_eq(f->var, f->value) : co_neq(f->var, f->value);
                return leaf(trace_out, "literal", print(f), satisfies_co(m, lit));
            }
            case PcoKind::And: {
                TracePtr lt, rt;
                bool l = eval(m, f->left, child(trace_out, &lt));
                bool r = eval(m, f->right, child(trace_out, &rt));
                return node(trace_out, "and", l && r, {lt, rt});
            }
            case PcoKind::Gdisj: {
                std::vector<TracePtr> kids;
                bool any = false;
                for (const auto& item : f->items) {
                    TracePtr t;
                    bool v = eval(m, item, child(trace_out, &t));
                    kids.push_back(t);
                    if (v) {
                        any = true;
                        if (!with_trace_) break;
                    }
                }
                return node(trace_out, "global disjunction", any, kids);
            }
            case PcoKind::Sup: {
                TracePtr t;
                bool v = eval(restrict_by(m, f->co1), f->body, child(trace_out, &t));
                return node(trace_out, "observe " + print(f->co1), v, {t});
            }
            case PcoKind::Cf: {
                if (!is_consistent_antecedent(f->antecedent))
                    return leaf(trace_out, "counterfactual", "inconsistent antecedent", true);
                TracePtr t;
                bool v = eval(intervene(m, f->antecedent), f->body, child(trace_out, &t));
                return node(trace_out, "intervene", v, {t});
            }
            case PcoKind::PrConst: {
                if (m.empty()) return leaf(trace_out, "probability atom", "empty model", true);
                Rational p = raw_prob(m, f->co1);
                return leaf(trace_out, "probability atom",
                            p.str() + " " + rel_text(f->rel) + " " + f->eps.str(),
                            compare(p, f->rel, f->eps));
            }
            case PcoKind::PrCmp: {
                if (m.empty()) return leaf(trace_out, "probability comparison", "empty model", true);
                Rational a = raw_prob(m, f->co1), b = raw_prob(m, f->co2);
                return leaf(trace_out, "probability comparison",
                            a.str() + " " + rel_text(f->rel) + " " + b.str(),
                            compare(a, f->rel, b));
            }
            case PcoKind::CondPrConst: {
                if (m.empty()) return leaf(trace_out, "conditional atom", "empty model", true);
                auto p = cond_prob(m, f->co1, f->co2);
                if (!p) return leaf(trace_out, "conditional atom", "condition has probability 0", true);
                return leaf(trace_out, "conditional atom",
                            p->str() + " " + rel_text(f->rel) + " " + f->eps.str(),
                            compare(*p, f->rel, f->eps));
            }
            case PcoKind::CondPrCmp: {
                if (m.empty())
                    return leaf(trace_out, "conditional comparison", "empty model", true);
                auto a = cond_prob(m, f->co1, f->co2);
                auto b = cond_prob(m, f->co3, f->co4);
                if (!a || !b)
                    return leaf(trace_out, "conditional comparison",
                                "a condition has probability 0", true);
                return leaf(trace_out, "conditional comparison",
                            a->str() + " " + rel_text(f->rel) + " " + b->str(),
                            compare(*a, f->rel, *b));
            }
            case PcoKind::PrStar: {
                if (m.empty()) {
                    bool v = false;
                    switch (f->rel) {
                        case Rel::Ge: v = true; break;
                        case Rel::Le: v = f->eps == Rational(1); break;
                        case Rel::Gt: v = f->eps < Rational(1); break;
                        case Rel::Lt: v = false; break;
                        case Rel::Eq: v = f->eps == Rational(1); break;
                        case Rel::Ne: v = f->eps < Rational(1); break;
                    }
                    return leaf(trace_out, "liberal probability atom", "empty model", v);
                }
                Rational p = raw_prob(m, f->co1);
                return leaf(trace_out, "liberal probability atom",
                            p.str() + " " + rel_text(f->rel) + " " + f->eps.str(),
                            compare(p, f->rel, f->eps));
            }
            case PcoKind::NE:
                return leaf(trace_out, "nonemptiness", "", !m.empty());
            case PcoKind::StrictTensor:
                return strict_tensor(m, f, trace_out);
            default:
                throw UnsupportedNode("sugar in evaluation (expand first)");
        }
    }

private:
    bool with_trace_;
    std::map<std::string, bool> split_memo_;

    TracePtr* child(TracePtr* parent, TracePtr* slot) { return parent ? slot : nullptr; }

    bool leaf(TracePtr* out, std::string clause, std::string detail, bool verdict) {
        if (out) {
            auto t = std::make_shared<TraceNode>();
            t->clause = std::move(clause);
            t->detail = std::move(detail);
            t->verdict = verdict;
            *out = t;
        }
        return verdict;
    }

    bool node(TracePtr* out, std::string clause, bool verdict, std::vector<TracePtr> kids) {
        if (out) {
            auto t = std::make_shared<TraceNode>();
            t->clause = std::move(clause);
            t->verdict = verdict;
            for (auto& k : kids)
                if (k) t->children.push_back(std::move(k));
            *out = t;
        }
        return verdict;
    }

    std::string memo_key(const CausalMultiteam& m, const PcoFormula* f) {
        std::ostringstream key;
        key << f << '#';
        for (const auto& [target, fn] : m.laws().functions) {
            key << target << ':';
            for (int a : fn.args) key << a << ',';
            key << '=';
            for (int v : fn.table) key << v << ',';
            key << ';';
        }
        key << '#';
        for (const auto& [row, n] : m.team().counts) {
            for (int v : row) key << v << ',';
            key << 'x' << n << ';';
        }
        return key.str();
    }

    /// Splits the multiteam into two disjoint halves in every way: for each
    /// row, its count is cut into a left and a right share.
    bool strict_tensor(const CausalMultiteam& m, const PcoPtr& f, TracePtr* trace_out) {
        std::string key = memo_key(m, f.get());
        auto hit = split_memo_.find(key);
        if (hit != split_memo_.end() && !trace_out)
            return hit->second;

        std::vector<Assignment> rows;
        std::vector<Count> counts;
        for (const auto& [row, n] : m.team().counts) {
            rows.push_back(row);
            counts.push_back(n);
        }
        std::vector<Count> left_share(rows.size(), 0);
        bool found = false;
        TracePtr lt, rt;
        while (true) {
            Multiteam left, right;
            for (size_t i = 0; i < rows.size(); ++i) {
                if (left_share[i] > 0) left.counts.emplace(rows[i], left_share[i]);
                if (counts[i] - left_share[i] > 0)
                    right.counts.emplace(rows[i], counts[i] - left_share[i]);
            }
            auto m1 = CausalMultiteam::unchecked(m.sig_ptr(), std::move(left), m.laws());
            auto m2 = CausalMultiteam::unchecked(m.sig_ptr(), std::move(right), m.laws());
            if (eval(m1, f->left, nullptr) && eval(m2, f->right, nullptr)) {
                found = true;
                if (trace_out) {
                    eval(m1, f->left, &lt);
                    eval(m2, f->right, &rt);
                }
                break;
            }
            // odometer over the per-row shares
            size_t i = 0;
            while (i < rows.size() && left_share[i] == counts[i]) left_share[i++] = 0;
            if (i == rows.size()) break;
            ++left_share[i];
        }
        split_memo_[key] = found;
        return node(trace_out, "strict split", found, {lt, rt});
    }
};

} // namespace

EvalResult satisfies(const CausalMultiteam& m, const PcoPtr& phi, bool with_trace) {
    PcoPtr expanded = expand_sugar(phi, &m.sig());
    Evaluator ev(with_trace);
    EvalResult result;
    result.verdict = ev.eval(m, expanded, with_trace ? &result.trace : nullptr);
    return result;
}

bool holds(const CausalMultiteam& m, const PcoPtr& phi) { return satisfies(m, phi).verdict; }

bool holds(const CausalMultiteam& m, const Query& q) {
    if (auto* co = std::get_if<CoPtr>(&q))
        return satisfies_co(m, expand_co_sugar(*co, &m.sig()));
    return holds(m, std::get<PcoPtr>(q));
}

MixedReport satisfies_mixed(const CausalMultiteam& m, const CoPtr& gamma,
                            const std::vector<VarVal>& pairs, const CoPtr& alpha, Rel rel,
                            const std::variant<Rational, CoPtr>& threshold) {
    PcoPtr atom;
    if (auto* eps = std::get_if<Rational>(&threshold))
        atom = pco_pr_const(alpha, rel, *eps);
    else
        atom = pco_pr_cmp(alpha, rel, std::get<CoPtr>(threshold));

    MixedReport report;
    report.do_form = holds(m, pco_cf(pairs, pco_sup(gamma, atom)));
    report.pearl_form = holds(m, pco_sup(gamma, pco_cf(pairs, atom)));

    if (!m.empty()) {
        if (is_consistent_antecedent(pairs))
            report.prob_do = cond_prob(intervene(m, pairs), alpha, gamma);
        report.prob_pearl = cond_prob(m, co_cf(pairs, alpha), gamma);
    }
    return report;
}

} // namespace cmt
