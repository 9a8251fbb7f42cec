#include "cmt/transforms.hpp"

#include "cmt/printer.hpp"
#include "cmt/sugar.hpp"

#include <set>

namespace cmt {

namespace {

CoPtr lit_co(const PcoPtr& lit) {
    return lit->positive ? co_eq(lit->var, lit->value) : co_neq(lit->var, lit->value);
}

[[noreturn]] void reject(const PcoPtr& f) {
    throw UnsupportedNode(print(f));
}

} // namespace

PcoPtr compile_cneg(const PcoPtr& f, const Signature& sig) {
    switch (f->kind) {
        case PcoKind::Lit:
            // (X=x)^C is Pr(X=x) < 1, i.e. the negated event has positive weight
            return pco_pr_const(co_negate(lit_co(f), sig), Rel::Gt, Rational(0));
        case PcoKind::PrConst: {
            Rational flipped = Rational(1) - f->eps;
            if (f->rel == Rel::Ge)
                return pco_pr_const(co_negate(f->co1, sig), Rel::Gt, flipped);
            if (f->rel == Rel::Gt)
                return pco_pr_const(co_negate(f->co1, sig), Rel::Ge, flipped);
            reject(f);
        }
        case PcoKind::PrCmp: {
            if (f->rel == Rel::Ge) return pco_pr_cmp(f->co2, Rel::Gt, f->co1);
            if (f->rel == Rel::Gt) return pco_pr_cmp(f->co2, Rel::Ge, f->co1);
            reject(f);
        }
        case PcoKind::And:
            return pco_gdisj({compile_cneg(f->left, sig), compile_cneg(f->right, sig)});
        case PcoKind::Gdisj: {
            std::vector<PcoPtr> parts;
            parts.reserve(f->items.size());
            for (const auto& item : f->items) parts.push_back(compile_cneg(item, sig));
            return pco_and_all(parts);
        }
        case PcoKind::Sup:
            // the guard keeps the negation false when the observation wipes
            // out a nonempty model
            return pco_and(pco_pr_const(f->co1, Rel::Gt, Rational(0)),
                           pco_sup(f->co1, compile_cneg(f->body, sig)));
        case PcoKind::Cf:
            return pco_cf(f->antecedent, compile_cneg(f->body, sig));
        default:
            reject(f);
    }
}

namespace {

std::vector<VarVal> merge_antecedents(const std::vector<VarVal>& outer,
                                      const std::vector<VarVal>& inner) {
    std::set<std::string> overridden;
    for (const auto& p : inner) overridden.insert(p.var);
    std::vector<VarVal> merged;
    for (const auto& p : outer)
        if (!overridden.count(p.var)) merged.push_back(p);
    for (const auto& p : inner) merged.push_back(p);
    return merged;
}

PcoPtr flatten(const PcoPtr& f) {
    switch (f->kind) {
        case PcoKind::And:
            return pco_and(flatten(f->left), flatten(f->right));
        case PcoKind::Gdisj: {
            std::vector<PcoPtr> items;
            for (const auto& item : f->items) items.push_back(flatten(item));
            return pco_gdisj(std::move(items));
        }
        case PcoKind::Sup:
            return pco_sup(f->co1, flatten(f->body));
        case PcoKind::StrictTensor:
            return pco_strict_tensor(flatten(f->left), flatten(f->right));
        case PcoKind::MatImp:
            return pco_mat_imp(flatten(f->left), flatten(f->right));
        case PcoKind::Cneg:
            return pco_cneg(flatten(f->left));
        case PcoKind::Cf: {
            PcoPtr body = flatten(f->body);
            std::vector<VarVal> pairs = f->antecedent;
            while (body->kind == PcoKind::Cf && is_consistent_antecedent(pairs) &&
                   is_consistent_antecedent(body->antecedent)) {
                pairs = merge_antecedents(pairs, body->antecedent);
                body = body->body;
            }
            return pco_cf(std::move(pairs), body);
        }
        default:
            return f;
    }
}

} // namespace

PcoPtr flatten_counterfactuals(const PcoPtr& f) { return flatten(f); }

namespace {

bool is_atom(const PcoPtr& f) {
    return f->kind == PcoKind::PrConst || f->kind == PcoKind::PrCmp;
}

void require_core(const PcoPtr& f) {
    switch (f->kind) {
        case PcoKind::Lit:
        case PcoKind::PrConst:
        case PcoKind::PrCmp:
            return;
        case PcoKind::And:
            require_core(f->left);
            require_core(f->right);
            return;
        case PcoKind::Gdisj:
            for (const auto& item : f->items) require_core(item);
            return;
        case PcoKind::Sup:
        case PcoKind::Cf:
            require_core(f->body);
            return;
        default:
            reject(f);
    }
}

PcoPtr apply_cf(const std::vector<VarVal>& pairs, const PcoPtr& body);

/// Pass 1: push counterfactuals inwards until their consequents are atoms
/// or literals; inconsistent antecedents get a vacuous literal consequent.
PcoPtr push_cf(const PcoPtr& f) {
    switch (f->kind) {
        case PcoKind::Lit:
        case PcoKind::PrConst:
        case PcoKind::PrCmp:
            return f;
        case PcoKind::And:
            return pco_and(push_cf(f->left), push_cf(f->right));
        case PcoKind::Gdisj: {
            std::vector<PcoPtr> items;
            for (const auto& item : f->items) items.push_back(push_cf(item));
            return pco_gdisj(std::move(items));
        }
        case PcoKind::Sup:
            return pco_sup(f->co1, push_cf(f->body));
        case PcoKind::Cf: {
            if (!is_consistent_antecedent(f->antecedent)) {
                const VarVal& last = f->antecedent.back();
                return pco_cf(f->antecedent, pco_lit(last.var, last.value, true));
            }
            return apply_cf(f->antecedent, push_cf(f->body));
        }
        default:
            reject(f);
    }
}

PcoPtr apply_cf(const std::vector<VarVal>& pairs, const PcoPtr& body) {
    switch (body->kind) {
        case PcoKind::And:
            return pco_and(apply_cf(pairs, body->left), apply_cf(pairs, body->right));
        case PcoKind::Gdisj: {
            std::vector<PcoPtr> items;
            for (const auto& item : body->items) items.push_back(apply_cf(pairs, item));
            return pco_gdisj(std::move(items));
        }
        case PcoKind::Sup:
            // intervening distributes over observation
            return pco_sup(co_cf(pairs, body->co1), apply_cf(pairs, body->body));
        case PcoKind::Cf: {
            if (!is_consistent_antecedent(body->antecedent))
                return body;  // the inner counterfactual is vacuously true on its own
            return apply_cf(merge_antecedents(pairs, body->antecedent), body->body);
        }
        default:
            return pco_cf(pairs, body);
    }
}

PcoPtr literals_to_atoms(const PcoPtr& f) {
    switch (f->kind) {
        case PcoKind::Lit:
            return pco_pr_const(lit_co(f), Rel::Ge, Rational(1));
        case PcoKind::And:
            return pco_and(literals_to_atoms(f->left), literals_to_atoms(f->right));
        case PcoKind::Gdisj: {
            std::vector<PcoPtr> items;
            for (const auto& item : f->items) items.push_back(literals_to_atoms(item));
            return pco_gdisj(std::move(items));
        }
        case PcoKind::Sup:
            return pco_sup(f->co1, literals_to_atoms(f->body));
        case PcoKind::Cf:
            return pco_cf(f->antecedent, literals_to_atoms(f->body));
        default:
            return f;
    }
}

PcoPtr apply_sup(const CoPtr& antecedent, const PcoPtr& body);

/// Pass 3: push observations inwards until their consequents are
/// counterfactuals or atoms.
PcoPtr push_sup(const PcoPtr& f) {
    switch (f->kind) {
        case PcoKind::And:
            return pco_and(push_sup(f->left), push_sup(f->right));
        case PcoKind::Gdisj: {
            std::vector<PcoPtr> items;
            for (const auto& item : f->items) items.push_back(push_sup(item));
            return pco_gdisj(std::move(items));
        }
        case PcoKind::Sup:
            return apply_sup(f->co1, push_sup(f->body));
        default:
            return f;
    }
}

PcoPtr apply_sup(const CoPtr& antecedent, const PcoPtr& body) {
    switch (body->kind) {
        case PcoKind::And:
            return pco_and(apply_sup(antecedent, body->left), apply_sup(antecedent, body->right));
        case PcoKind::Gdisj: {
            std::vector<PcoPtr> items;
            for (const auto& item : body->items) items.push_back(apply_sup(antecedent, item));
            return pco_gdisj(std::move(items));
        }
        case PcoKind::Sup:
            return apply_sup(co_and(antecedent, body->co1), body->body);
        default:
            return pco_sup(antecedent, body);
    }
}

std::optional<Rung> leaf_rung(const PcoPtr& f) {
    if (is_atom(f)) return Rung::BareAtom;
    if (f->kind == PcoKind::Cf && is_atom(f->body)) return Rung::Rung2;
    if (f->kind == PcoKind::Sup) {
        if (is_atom(f->body)) return Rung::Rung1;
        if (f->body->kind == PcoKind::Cf && is_atom(f->body->body)) return Rung::Rung3;
    }
    return std::nullopt;
}

void collect_leaves(const PcoPtr& f, std::vector<NormalFormLeaf>& out, std::string& problem) {
    if (f->kind == PcoKind::And) {
        collect_leaves(f->left, out, problem);
        collect_leaves(f->right, out, problem);
        return;
    }
    if (f->kind == PcoKind::Gdisj) {
        for (const auto& item : f->items) collect_leaves(item, out, problem);
        return;
    }
    auto rung = leaf_rung(f);
    if (!rung) {
        if (problem.empty()) problem = "leaf outside the three shapes: " + print(f);
        return;
    }
    out.push_back({f, *rung});
}

} // namespace

NormalForm normal_form(const PcoPtr& f, const Signature& sig) {
    PcoPtr expanded = expand_sugar(f, &sig);
    require_core(expanded);
    PcoPtr result = push_sup(literals_to_atoms(push_cf(expanded)));
    NormalForm nf{result};
    std::string problem = check_normal_form_shape(nf);
    if (!problem.empty()) throw Error("normal form pass left a bad shape: " + problem);
    return nf;
}

std::vector<NormalFormLeaf> normal_form_leaves(const NormalForm& nf) {
    std::vector<NormalFormLeaf> leaves;
    std::string problem;
    collect_leaves(nf.root, leaves, problem);
    return leaves;
}

RungReport classify_rung(const NormalForm& nf) {
    RungReport report;
    report.leaves = normal_form_leaves(nf);
    for (const auto& leaf : report.leaves) {
        int rung = leaf.rung == Rung::BareAtom ? 1 : static_cast<int>(leaf.rung);
        if (rung > report.max_rung) report.max_rung = rung;
    }
    return report;
}

std::string check_normal_form_shape(const NormalForm& nf) {
    std::vector<NormalFormLeaf> leaves;
    std::string problem;
    collect_leaves(nf.root, leaves, problem);
    return problem;
}

} // namespace cmt
