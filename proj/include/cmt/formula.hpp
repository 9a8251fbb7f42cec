#pragma once

#include "cmt/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cmt {

// Two formula families share the grammar but not the connectives. Event
// formulas (Co*) describe rows and may use the tensor disjunction `|`;
// statement formulas (Pco*) talk about the multiteam as a whole and may
// use probability atoms and the global disjunction `\/`. Antecedents of
// `=>` and arguments of Pr(...) are always event formulas.

struct VarVal {
    std::string var;
    std::string value;
    bool operator==(const VarVal& o) const { return var == o.var && value == o.value; }
};

enum class CoKind {
    Eq,    // X=v
    Neq,   // X!=v
    And,   // a & b
    Or,    // a | b (tensor)
    Sup,   // a => b (selective implication)
    Cf,    // X=x & ... ~> a (interventionist counterfactual)
    Bot,   // sugar
    Top,   // sugar
    Not,   // !a, sugar for a => bot
};

struct CoFormula;
using CoPtr = std::shared_ptr<const CoFormula>;

struct CoFormula {
    CoKind kind;
    std::string var, value;          // Eq / Neq
    CoPtr left, right;               // And / Or / Sup (Not: left only)
    std::vector<VarVal> antecedent;  // Cf
    CoPtr body;                      // Cf
    size_t pos = 0;                  // offset into the source text, 0 if built
};

CoPtr co_eq(std::string var, std::string value);
CoPtr co_neq(std::string var, std::string value);
CoPtr co_and(CoPtr a, CoPtr b);
CoPtr co_or(CoPtr a, CoPtr b);
CoPtr co_sup(CoPtr a, CoPtr b);
CoPtr co_cf(std::vector<VarVal> antecedent, CoPtr body);
CoPtr co_bot();
CoPtr co_top();
CoPtr co_not(CoPtr a);

/// Left-nested conjunction of one or more conjuncts.
CoPtr co_and_all(const std::vector<CoPtr>& conjuncts);

enum class Rel { Ge, Gt, Le, Lt, Eq, Ne };

Rel flip_rel(Rel r);  // swaps the sides: a R b  <->  b flip(R) a
std::string rel_text(Rel r);

enum class PcoKind {
    Lit,           // X=v or X!=v as a statement
    PrConst,       // Pr(a) rel e      (core for >= and >)
    PrCmp,         // Pr(a) rel Pr(b)  (core for >= and >)
    And,           // f & g
    Gdisj,         // f1 \/ f2 \/ ... (n-ary global disjunction)
    Sup,           // a => f
    Cf,            // X=x ~> f
    CondPrConst,   // Pr(a | g) rel e           (extension atom)
    CondPrCmp,     // Pr(a | g) rel Pr(b | d)   (extension atom)
    PrStar,        // Pr*(a) rel e              (extension atom)
    NE,            // nonemptiness atom         (extension atom)
    StrictTensor,  // f <|> g                   (extension atom)
    MatImp,        // f -> g                sugar
    Cneg,          // cneg(f)               sugar
    Dep,           // dep(X1,...,Xn; Y)     sugar
    Cindep,        // cindep(a; b | g)      sugar
    Bot,           // sugar
    Top,           // sugar
};

struct PcoFormula;
using PcoPtr = std::shared_ptr<const PcoFormula>;

struct PcoFormula {
    PcoKind kind;
    std::string var, value;  // Lit
    bool positive = true;    // Lit
    CoPtr co1, co2, co3, co4;  // event arguments: Pr args, conditions, antecedents
    Rel rel = Rel::Ge;
    Rational eps;
    PcoPtr left, right;              // And / MatImp / StrictTensor (Cneg: left)
    PcoPtr body;                     // Sup / Cf
    std::vector<PcoPtr> items;       // Gdisj
    std::vector<VarVal> antecedent;  // Cf
    std::vector<std::string> dep_args;
    std::string dep_target;
    size_t pos = 0;
};

PcoPtr pco_lit(std::string var, std::string value, bool positive);
PcoPtr pco_pr_const(CoPtr arg, Rel rel, Rational eps);
PcoPtr pco_pr_cmp(CoPtr a, Rel rel, CoPtr b);
PcoPtr pco_and(PcoPtr a, PcoPtr b);
PcoPtr pco_and_all(const std::vector<PcoPtr>& conjuncts);
PcoPtr pco_gdisj(std::vector<PcoPtr> items);  // items.size() >= 2
PcoPtr pco_sup(CoPtr antecedent, PcoPtr body);
PcoPtr pco_cf(std::vector<VarVal> antecedent, PcoPtr body);
PcoPtr pco_cond_pr_const(CoPtr arg, CoPtr cond, Rel rel, Rational eps);
PcoPtr pco_cond_pr_cmp(CoPtr a, CoPtr ga, Rel rel, CoPtr b, CoPtr gb);
PcoPtr pco_pr_star(CoPtr arg, Rel rel, Rational eps);
PcoPtr pco_ne();
PcoPtr pco_strict_tensor(PcoPtr a, PcoPtr b);
PcoPtr pco_mat_imp(PcoPtr a, PcoPtr b);
PcoPtr pco_cneg(PcoPtr a);
PcoPtr pco_dep(std::vector<std::string> args, std::string target);
PcoPtr pco_cindep(CoPtr a, CoPtr b, CoPtr cond);
PcoPtr pco_bot();
PcoPtr pco_top();

/// Either family, as returned by the parser.
using Query = std::variant<CoPtr, PcoPtr>;

bool co_equal(const CoPtr& a, const CoPtr& b);
bool pco_equal(const PcoPtr& a, const PcoPtr& b);

/// False iff some variable is paired with two distinct values.
bool is_consistent_antecedent(const std::vector<VarVal>& pairs);

/// Event formulas embed into the statement language when they avoid `|`
/// outside antecedent positions. Returns nullopt otherwise.
std::optional<PcoPtr> co_to_pco(const CoPtr& a);

} // namespace cmt
