#include "cmt/formula.hpp"

#include <stdexcept>

namespace cmt {

namespace {
std::shared_ptr<CoFormula> co_node(CoKind k) {
    auto n = std::make_shared<CoFormula>();
    n->kind = k;
    return n;
}
std::shared_ptr<PcoFormula> pco_node(PcoKind k) {
    auto n = std::make_shared<PcoFormula>();
    n->kind = k;
    return n;
}
} // namespace

CoPtr co_eq(std::string var, std::string value) {
    auto n = co_node(CoKind::Eq);
    n->var = std::move(var);
    n->value = std::move(value);
    return n;
}

CoPtr co_neq(std::string var, std::string value) {
    auto n = co_node(CoKind::Neq);
    n->var = std::move(var);
    n->value = std::move(value);
    return n;
}

CoPtr co_and(CoPtr a, CoPtr b) {
    auto n = co_node(CoKind::And);
    n->left = std::move(a);
    n->right = std::move(b);
    return n;
}

CoPtr co_or(CoPtr a, CoPtr b) {
    auto n = co_node(CoKind::Or);
    n->left = std::move(a);
    n->right = std::move(b);
    return n;
}

CoPtr co_sup(CoPtr a, CoPtr b) {
    auto n = co_node(CoKind::Sup);
    n->left = std::move(a);
    n->right = std::move(b);
    return n;
}

CoPtr co_cf(std::vector<VarVal> antecedent, CoPtr body) {
    if (antecedent.empty()) throw std::logic_error("counterfactual needs a nonempty antecedent");
    auto n = co_node(CoKind::Cf);
    n->antecedent = std::move(antecedent);
    n->body = std::move(body);
    return n;
}

CoPtr co_bot() { return co_node(CoKind::Bot); }
CoPtr co_top() { return co_node(CoKind::Top); }

CoPtr co_not(CoPtr a) {
    auto n = co_node(CoKind::Not);
    n->left = std::move(a);
    return n;
}

CoPtr co_and_all(const std::vector<CoPtr>& conjuncts) {
    if (conjuncts.empty()) throw std::logic_error("empty conjunction");
    CoPtr acc = conjuncts.front();
    for (size_t i = 1; i < conjuncts.size(); ++i) acc = co_and(acc, conjuncts[i]);
    return acc;
}

Rel flip_rel(Rel r) {
    switch (r) {
        case Rel::Ge: return Rel::Le;
        case Rel::Gt: return Rel::Lt;
        case Rel::Le: return Rel::Ge;
        case Rel::Lt: return Rel::Gt;
        case Rel::Eq: return Rel::Eq;
        case Rel::Ne: return Rel::Ne;
    }
    return Rel::Ge;
}

std::string rel_text(Rel r) {
    switch (r) {
        case Rel::Ge: return ">=";
        case Rel::Gt: return ">";
        case Rel::Le: return "<=";
        case Rel::Lt: return "<";
        case Rel::Eq: return "==";
        case Rel::Ne: return "!=";
    }
    return "?";
}

PcoPtr pco_lit(std::string var, std::string value, bool positive) {
    auto n = pco_node(PcoKind::Lit);
    n->var = std::move(var);
    n->value = std::move(value);
    n->positive = positive;
    return n;
}

PcoPtr pco_pr_const(CoPtr arg, Rel rel, Rational eps) {
    auto n = pco_node(PcoKind::PrConst);
    n->co1 = std::move(arg);
    n->rel = rel;
    n->eps = std::move(eps);
    return n;
}

PcoPtr pco_pr_cmp(CoPtr a, Rel rel, CoPtr b) {
    auto n = pco_node(PcoKind::PrCmp);
    n->co1 = std::move(a);
    n->rel = rel;
    n->co2 = std::move(b);
    return n;
}

PcoPtr pco_and(PcoPtr a, PcoPtr b) {
    auto n = pco_node(PcoKind::And);
    n->left = std::move(a);
    n->right = std::move(b);
    return n;
}

PcoPtr pco_and_all(const std::vector<PcoPtr>& conjuncts) {
    if (conjuncts.empty()) throw std::logic_error("empty conjunction");
    PcoPtr acc = conjuncts.front();
    for (size_t i = 1; i < conjuncts.size(); ++i) acc = pco_and(acc, conjuncts[i]);
    return acc;
}

PcoPtr pco_gdisj(std::vector<PcoPtr> items) {
    if (items.size() < 2) throw std::logic_error("global disjunction needs at least two disjuncts");
    auto n = pco_node(PcoKind::Gdisj);
    n->items = std::move(items);
    return n;
}

PcoPtr pco_sup(CoPtr antecedent, PcoPtr body) {
    auto n = pco_node(PcoKind::Sup);
    n->co1 = std::move(antecedent);
    n->body = std::move(body);
    return n;
}

PcoPtr pco_cf(std::vector<VarVal> antecedent, PcoPtr body) {
    if (antecedent.empty()) throw std::logic_error("counterfactual needs a nonempty antecedent");
    auto n = pco_node(PcoKind::Cf);
    n->antecedent = std::move(antecedent);
    n->body = std::move(body);
    return n;
}

PcoPtr pco_cond_pr_const(CoPtr arg, CoPtr cond, Rel rel, Rational eps) {
    auto n = pco_node(PcoKind::CondPrConst);
    n->co1 = std::move(arg);
    n->co2 = std::move(cond);
    n->rel = rel;
    n->eps = std::move(eps);
    return n;
}

PcoPtr pco_cond_pr_cmp(CoPtr a, CoPtr ga, Rel rel, CoPtr b, CoPtr gb) {
    auto n = pco_node(PcoKind::CondPrCmp);
    n->co1 = std::move(a);
    n->co2 = std::move(ga);
    n->rel = rel;
    n->co3 = std::move(b);
    n->co4 = std::move(gb);
    return n;
}

PcoPtr pco_pr_star(CoPtr arg, Rel rel, Rational eps) {
    auto n = pco_node(PcoKind::PrStar);
    n->co1 = std::move(arg);
    n->rel = rel;
    n->eps = std::move(eps);
    return n;
}

PcoPtr pco_ne() { return pco_node(PcoKind::NE); }

PcoPtr pco_strict_tensor(PcoPtr a, PcoPtr b) {
    auto n = pco_node(PcoKind::StrictTensor);
    n->left = std::move(a);
    n->right = std::move(b);
    return n;
}

PcoPtr pco_mat_imp(PcoPtr a, PcoPtr b) {
    auto n = pco_node(PcoKind::MatImp);
    n->left = std::move(a);
    n->right = std::move(b);
    return n;
}

PcoPtr pco_cneg(PcoPtr a) {
    auto n = pco_node(PcoKind::Cneg);
    n->left = std::move(a);
    return n;
}

PcoPtr pco_dep(std::vector<std::string> args, std::string target) {
    auto n = pco_node(PcoKind::Dep);
    n->dep_args = std::move(args);
    n->dep_target = std::move(target);
    return n;
}

PcoPtr pco_cindep(CoPtr a, CoPtr b, CoPtr cond) {
    auto n = pco_node(PcoKind::Cindep);
    n->co1 = std::move(a);
    n->co2 = std::move(b);
    n->co3 = std::move(cond);
    return n;
}

PcoPtr pco_bot() { return pco_node(PcoKind::Bot); }
PcoPtr pco_top() { return pco_node(PcoKind::Top); }

bool co_equal(const CoPtr& a, const CoPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case CoKind::Eq:
        case CoKind::Neq:
            return a->var == b->var && a->value == b->value;
        case CoKind::And:
        case CoKind::Or:
        case CoKind::Sup:
            return co_equal(a->left, b->left) && co_equal(a->right, b->right);
        case CoKind::Cf:
            return a->antecedent == b->antecedent && co_equal(a->body, b->body);
        case CoKind::Bot:
        case CoKind::Top:
            return true;
        case CoKind::Not:
            return co_equal(a->left, b->left);
    }
    return false;
}

bool pco_equal(const PcoPtr& a, const PcoPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case PcoKind::Lit:
            return a->var == b->var && a->value == b->value && a->positive == b->positive;
        case PcoKind::PrConst:
        case PcoKind::PrStar:
            return a->rel == b->rel && a->eps == b->eps && co_equal(a->co1, b->co1);
        case PcoKind::PrCmp:
            return a->rel == b->rel && co_equal(a->co1, b->co1) && co_equal(a->co2, b->co2);
        case PcoKind::And:
        case PcoKind::StrictTensor:
        case PcoKind::MatImp:
            return pco_equal(a->left, b->left) && pco_equal(a->right, b->right);
        case PcoKind::Cneg:
            return pco_equal(a->left, b->left);
        case PcoKind::Gdisj: {
            if (a->items.size() != b->items.size()) return false;
            for (size_t i = 0; i < a->items.size(); ++i)
                if (!pco_equal(a->items[i], b->items[i])) return false;
            return true;
        }
        case PcoKind::Sup:
            return co_equal(a->co1, b->co1) && pco_equal(a->body, b->body);
        case PcoKind::Cf:
            return a->antecedent == b->antecedent && pco_equal(a->body, b->body);
        case PcoKind::CondPrConst:
            return a->rel == b->rel && a->eps == b->eps && co_equal(a->co1, b->co1) &&
                   co_equal(a->co2, b->co2);
        case PcoKind::CondPrCmp:
            return a->rel == b->rel && co_equal(a->co1, b->co1) && co_equal(a->co2, b->co2) &&
                   co_equal(a->co3, b->co3) && co_equal(a->co4, b->co4);
        case PcoKind::NE:
        case PcoKind::Bot:
        case PcoKind::Top:
            return true;
        case PcoKind::Dep:
            return a->dep_args == b->dep_args && a->dep_target == b->dep_target;
        case PcoKind::Cindep:
            return co_equal(a->co1, b->co1) && co_equal(a->co2, b->co2) && co_equal(a->co3, b->co3);
    }
    return false;
}

bool is_consistent_antecedent(const std::vector<VarVal>& pairs) {
    for (size_t i = 0; i < pairs.size(); ++i)
        for (size_t j = i + 1; j < pairs.size(); ++j)
            if (pairs[i].var == pairs[j].var && pairs[i].value != pairs[j].value) return false;
    return true;
}

std::optional<PcoPtr> co_to_pco(const CoPtr& a) {
    switch (a->kind) {
        case CoKind::Eq:
            return pco_lit(a->var, a->value, true);
        case CoKind::Neq:
            return pco_lit(a->var, a->value, false);
        case CoKind::And: {
            auto l = co_to_pco(a->left);
            auto r = co_to_pco(a->right);
            if (!l || !r) return std::nullopt;
            return pco_and(*l, *r);
        }
        case CoKind::Or:
            return std::nullopt;
        case CoKind::Sup: {
            auto r = co_to_pco(a->right);
            if (!r) return std::nullopt;
            return pco_sup(a->left, *r);
        }
        case CoKind::Cf: {
            auto r = co_to_pco(a->body);
            if (!r) return std::nullopt;
            return pco_cf(a->antecedent, *r);
        }
        case CoKind::Bot:
            return pco_bot();
        case CoKind::Top:
            return pco_top();
        case CoKind::Not:
            return pco_sup(a->left, pco_bot());
    }
    return std::nullopt;
}

} // namespace cmt
