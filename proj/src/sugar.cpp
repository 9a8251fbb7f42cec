#include "cmt/sugar.hpp"

#include "cmt/transforms.hpp"

namespace cmt {

namespace {

const Signature& need_sig(const Signature* sig, const char* what) {
    if (!sig) throw SignatureRequired(what);
    return *sig;
}

Rational one_minus(const Rational& eps) { return Rational(1) - eps; }

PcoPtr gdisj_of(std::vector<PcoPtr> items) {
    if (items.size() == 1) return items.front();
    return pco_gdisj(std::move(items));
}

/// Pr(arg) rel eps over already-expanded arg, rewriting <=, <, ==, != into
/// the two primitive relations.
PcoPtr expanded_pr_const(const CoPtr& arg, Rel rel, const Rational& eps, const Signature* sig) {
    switch (rel) {
        case Rel::Ge:
        case Rel::Gt:
            return pco_pr_const(arg, rel, eps);
        case Rel::Le:
            return pco_pr_const(co_negate(arg, need_sig(sig, "Pr(...) <= e")), Rel::Ge, one_minus(eps));
        case Rel::Lt:
            return pco_pr_const(co_negate(arg, need_sig(sig, "Pr(...) < e")), Rel::Gt, one_minus(eps));
        case Rel::Eq:
            return pco_and(expanded_pr_const(arg, Rel::Ge, eps, sig),
                           expanded_pr_const(arg, Rel::Le, eps, sig));
        case Rel::Ne:
            return gdisj_of({expanded_pr_const(arg, Rel::Gt, eps, sig),
                             expanded_pr_const(arg, Rel::Lt, eps, sig)});
    }
    return nullptr;
}

PcoPtr expanded_pr_cmp(const CoPtr& a, Rel rel, const CoPtr& b) {
    switch (rel) {
        case Rel::Ge:
        case Rel::Gt:
            return pco_pr_cmp(a, rel, b);
        case Rel::Le:
            return pco_pr_cmp(b, Rel::Ge, a);
        case Rel::Lt:
            return pco_pr_cmp(b, Rel::Gt, a);
        case Rel::Eq:
            return pco_and(pco_pr_cmp(a, Rel::Ge, b), pco_pr_cmp(b, Rel::Ge, a));
        case Rel::Ne:
            return pco_gdisj({pco_pr_cmp(a, Rel::Gt, b), pco_pr_cmp(b, Rel::Gt, a)});
    }
    return nullptr;
}

} // namespace

CoPtr co_bot_expanded(const Signature& sig) {
    const std::string& var = sig.var_name(0);
    const std::string& value = sig.value_name(0, 0);
    return co_cf({{var, value}}, co_neq(var, value));
}

CoPtr co_top_expanded(const Signature& sig) {
    const std::string& var = sig.var_name(0);
    const std::string& value = sig.value_name(0, 0);
    return co_cf({{var, value}}, co_eq(var, value));
}

CoPtr co_negate(const CoPtr& a, const Signature& sig) {
    return co_sup(a, co_bot_expanded(sig));
}

CoPtr expand_co_sugar(const CoPtr& a, const Signature* sig) {
    switch (a->kind) {
        case CoKind::Eq:
        case CoKind::Neq:
            return a;
        case CoKind::And:
            return co_and(expand_co_sugar(a->left, sig), expand_co_sugar(a->right, sig));
        case CoKind::Or:
            return co_or(expand_co_sugar(a->left, sig), expand_co_sugar(a->right, sig));
        case CoKind::Sup:
            return co_sup(expand_co_sugar(a->left, sig), expand_co_sugar(a->right, sig));
        case CoKind::Cf:
            return co_cf(a->antecedent, expand_co_sugar(a->body, sig));
        case CoKind::Bot:
            return co_bot_expanded(need_sig(sig, "bot"));
        case CoKind::Top:
            return co_top_expanded(need_sig(sig, "top"));
        case CoKind::Not:
            return co_negate(expand_co_sugar(a->left, sig), need_sig(sig, "!"));
    }
    return a;
}

PcoPtr expand_sugar(const PcoPtr& f, const Signature* sig) {
    auto co = [&](const CoPtr& a) { return expand_co_sugar(a, sig); };
    switch (f->kind) {
        case PcoKind::Lit:
            return f;
        case PcoKind::PrConst:
            return expanded_pr_const(co(f->co1), f->rel, f->eps, sig);
        case PcoKind::PrCmp:
            return expanded_pr_cmp(co(f->co1), f->rel, co(f->co2));
        case PcoKind::And:
            return pco_and(expand_sugar(f->left, sig), expand_sugar(f->right, sig));
        case PcoKind::Gdisj: {
            std::vector<PcoPtr> items;
            items.reserve(f->items.size());
            for (const auto& it : f->items) items.push_back(expand_sugar(it, sig));
            return pco_gdisj(std::move(items));
        }
        case PcoKind::Sup:
            return pco_sup(co(f->co1), expand_sugar(f->body, sig));
        case PcoKind::Cf:
            return pco_cf(f->antecedent, expand_sugar(f->body, sig));
        case PcoKind::CondPrConst:
            // same-condition atoms reduce to observing the condition first
            return pco_sup(co(f->co2), expanded_pr_const(co(f->co1), f->rel, f->eps, sig));
        case PcoKind::CondPrCmp: {
            CoPtr ga = co(f->co2), gb = co(f->co4);
            if (co_equal(ga, gb))
                return pco_sup(ga, expanded_pr_cmp(co(f->co1), f->rel, co(f->co3)));
            return pco_cond_pr_cmp(co(f->co1), ga, f->rel, co(f->co3), gb);
        }
        case PcoKind::PrStar:
            return pco_pr_star(co(f->co1), f->rel, f->eps);
        case PcoKind::NE:
            return f;
        case PcoKind::StrictTensor:
            return pco_strict_tensor(expand_sugar(f->left, sig), expand_sugar(f->right, sig));
        case PcoKind::MatImp:
            return gdisj_of({compile_cneg(expand_sugar(f->left, sig), need_sig(sig, "->")),
                             expand_sugar(f->right, sig)});
        case PcoKind::Cneg:
            return compile_cneg(expand_sugar(f->left, sig), need_sig(sig, "cneg"));
        case PcoKind::Dep: {
            const Signature& s = need_sig(sig, "dep");
            std::vector<int> arg_vars;
            for (const auto& name : f->dep_args) {
                auto idx = s.var_index(name);
                if (!idx) throw UnknownVariable(name, f->pos);
                arg_vars.push_back(*idx);
            }
            auto target = s.var_index(f->dep_target);
            if (!target) throw UnknownVariable(f->dep_target, f->pos);

            std::vector<PcoPtr> target_values;
            for (const std::string& y : s.range(*target))
                target_values.push_back(pco_lit(f->dep_target, y, true));
            PcoPtr any_value = gdisj_of(std::move(target_values));

            std::vector<int> radices;
            for (int v : arg_vars) radices.push_back(s.range_size(v));
            std::vector<int> tuple(arg_vars.size(), 0);
            std::vector<PcoPtr> conjuncts;
            do {
                std::vector<CoPtr> eqs;
                for (size_t i = 0; i < arg_vars.size(); ++i)
                    eqs.push_back(co_eq(f->dep_args[i], s.value_name(arg_vars[i], tuple[i])));
                conjuncts.push_back(pco_sup(co_and_all(eqs), any_value));
            } while (next_tuple(tuple, radices));
            return pco_and_all(conjuncts);
        }
        case PcoKind::Cindep: {
            CoPtr a = co(f->co1), b = co(f->co2), g = co(f->co3);
            CoPtr a_and_g = co_and(a, g);
            return pco_gdisj({expanded_pr_const(g, Rel::Eq, Rational(0), sig),
                              expanded_pr_const(a_and_g, Rel::Eq, Rational(0), sig),
                              pco_cond_pr_cmp(b, a_and_g, Rel::Eq, b, g)});
        }
        case PcoKind::Bot: {
            const Signature& s = need_sig(sig, "bot");
            const std::string& var = s.var_name(0);
            const std::string& value = s.value_name(0, 0);
            return pco_cf({{var, value}}, pco_lit(var, value, false));
        }
        case PcoKind::Top: {
            const Signature& s = need_sig(sig, "top");
            const std::string& var = s.var_name(0);
            const std::string& value = s.value_name(0, 0);
            return pco_cf({{var, value}}, pco_lit(var, value, true));
        }
    }
    return f;
}

} // namespace cmt
