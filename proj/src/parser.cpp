#include "cmt/parser.hpp"

#include <cctype>
#include <memory>

namespace cmt {

namespace {

enum class Tok {
    Atom,    // identifier or value or number chunk
    Amp,     // &
    Bar,     // |
    Gdisj,   // \/
    SupArr,  // =>
    CfArr,   // ~>
    ImpArr,  // ->
    Bang,    // !
    Stens,   // <|>
    LParen,
    RParen,
    Comma,
    Semi,
    Slash,   // / (inside rationals)
    Star,    // * (after Pr)
    EqTok,   // =
    NeqTok,  // !=
    EqEq,    // ==
    Ge,      // >=
    Gt,      // >
    Le,      // <=
    Lt,      // <
    End,
};

struct Token {
    Tok kind;
    std::string text;
    size_t pos;
};

bool atom_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    size_t i = 0;
    auto push = [&](Tok k, size_t pos, std::string t = "") { out.push_back({k, std::move(t), pos}); };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        size_t start = i;
        auto two = [&](char a, char b) {
            return c == a && i + 1 < text.size() && text[i + 1] == b;
        };
        if (two('\\', '/')) { push(Tok::Gdisj, start); i += 2; continue; }
        if (two('=', '>')) { push(Tok::SupArr, start); i += 2; continue; }
        if (two('~', '>')) { push(Tok::CfArr, start); i += 2; continue; }
        if (two('-', '>')) { push(Tok::ImpArr, start); i += 2; continue; }
        if (two('=', '=')) { push(Tok::EqEq, start); i += 2; continue; }
        if (two('!', '=')) { push(Tok::NeqTok, start); i += 2; continue; }
        if (two('>', '=')) { push(Tok::Ge, start); i += 2; continue; }
        if (two('<', '|')) {
            if (i + 2 < text.size() && text[i + 2] == '>') { push(Tok::Stens, start); i += 3; continue; }
            throw SyntaxError("stray '<|'", start);
        }
        if (two('<', '=')) { push(Tok::Le, start); i += 2; continue; }
        switch (c) {
            case '&': push(Tok::Amp, start); ++i; continue;
            case '|': push(Tok::Bar, start); ++i; continue;
            case '!': push(Tok::Bang, start); ++i; continue;
            case '(': push(Tok::LParen, start); ++i; continue;
            case ')': push(Tok::RParen, start); ++i; continue;
            case ',': push(Tok::Comma, start); ++i; continue;
            case ';': push(Tok::Semi, start); ++i; continue;
            case '/': push(Tok::Slash, start); ++i; continue;
            case '*': push(Tok::Star, start); ++i; continue;
            case '=': push(Tok::EqTok, start); ++i; continue;
            case '>': push(Tok::Gt, start); ++i; continue;
            case '<': push(Tok::Lt, start); ++i; continue;
            default: break;
        }
        if (atom_char(c)) {
            size_t j = i;
            while (j < text.size() && atom_char(text[j])) ++j;
            push(Tok::Atom, start, text.substr(i, j - i));
            i = j;
            continue;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }
    push(Tok::End, text.size());
    return out;
}

// Parser-internal tree; lowered into the two formula families afterwards.
struct PExpr {
    enum Kind {
        Lit, And, Or, Gdisj, Sup, Cf, MatImp, Stens, Not,
        Bot, Top, NE, Pr, PrStar, Dep, Cindep, Cneg,
    } kind;
    size_t pos = 0;
    std::string var, value;           // Lit
    bool positive = true;             // Lit
    std::vector<std::unique_ptr<PExpr>> kids;
    Rel rel = Rel::Ge;                // Pr / PrStar
    Rational eps;                     // Pr / PrStar with constant right side
    bool rhs_is_pr = false;           // Pr(a) rel Pr(b)
    bool has_cond = false, rhs_has_cond = false;
    std::vector<std::string> names;   // Dep
    // kid layout for Pr: arg [, cond] [, arg2 [, cond2]] in this order, with
    // has_cond / rhs_is_pr / rhs_has_cond telling which slots are present.
};

using PExprPtr = std::unique_ptr<PExpr>;

PExprPtr mk(PExpr::Kind k, size_t pos) {
    auto e = std::make_unique<PExpr>();
    e->kind = k;
    e->pos = pos;
    return e;
}

class Parser {
public:
    Parser(const std::string& text, const Signature* sig) : sig_(sig), toks_(lex(text)) {}

    PExprPtr parse_all() {
        auto e = parse_cond(false);
        expect(Tok::End, "end of formula");
        return e;
    }

private:
    const Signature* sig_;
    std::vector<Token> toks_;
    size_t at_ = 0;

    const Token& peek() const { return toks_[at_]; }
    const Token& get() { return toks_[at_++]; }
    bool accept(Tok k) {
        if (peek().kind == k) { ++at_; return true; }
        return false;
    }
    void expect(Tok k, const std::string& what) {
        if (!accept(k)) throw SyntaxError("expected " + what, peek().pos);
    }

    // Loosest level: ~> / => / -> , right-associative.
    PExprPtr parse_cond(bool no_bar) {
        auto lhs = parse_gdisj(no_bar);
        if (peek().kind == Tok::SupArr) {
            size_t pos = get().pos;
            auto rhs = parse_cond(no_bar);
            auto e = mk(PExpr::Sup, pos);
            e->kids.push_back(std::move(lhs));
            e->kids.push_back(std::move(rhs));
            return e;
        }
        if (peek().kind == Tok::CfArr) {
            size_t pos = get().pos;
            auto rhs = parse_cond(no_bar);
            auto e = mk(PExpr::Cf, pos);
            e->kids.push_back(std::move(lhs));
            e->kids.push_back(std::move(rhs));
            return e;
        }
        if (peek().kind == Tok::ImpArr) {
            size_t pos = get().pos;
            auto rhs = parse_cond(no_bar);
            auto e = mk(PExpr::MatImp, pos);
            e->kids.push_back(std::move(lhs));
            e->kids.push_back(std::move(rhs));
            return e;
        }
        return lhs;
    }

    PExprPtr parse_gdisj(bool no_bar) {
        auto first = parse_stens(no_bar);
        if (peek().kind != Tok::Gdisj) return first;
        auto e = mk(PExpr::Gdisj, peek().pos);
        e->kids.push_back(std::move(first));
        while (accept(Tok::Gdisj)) e->kids.push_back(parse_stens(no_bar));
        return e;
    }

    PExprPtr parse_stens(bool no_bar) {
        auto lhs = parse_tensor(no_bar);
        while (peek().kind == Tok::Stens) {
            size_t pos = get().pos;
            auto rhs = parse_tensor(no_bar);
            auto e = mk(PExpr::Stens, pos);
            e->kids.push_back(std::move(lhs));
            e->kids.push_back(std::move(rhs));
            lhs = std::move(e);
        }
        return lhs;
    }

    PExprPtr parse_tensor(bool no_bar) {
        auto lhs = parse_and(no_bar);
        while (!no_bar && peek().kind == Tok::Bar) {
            size_t pos = get().pos;
            auto rhs = parse_and(no_bar);
            auto e = mk(PExpr::Or, pos);
            e->kids.push_back(std::move(lhs));
            e->kids.push_back(std::move(rhs));
            lhs = std::move(e);
        }
        return lhs;
    }

    PExprPtr parse_and(bool no_bar) {
        auto lhs = parse_unary(no_bar);
        while (peek().kind == Tok::Amp) {
            size_t pos = get().pos;
            auto rhs = parse_unary(no_bar);
            auto e = mk(PExpr::And, pos);
            e->kids.push_back(std::move(lhs));
            e->kids.push_back(std::move(rhs));
            lhs = std::move(e);
        }
        return lhs;
    }

    PExprPtr parse_unary(bool no_bar) {
        if (peek().kind == Tok::Bang) {
            size_t pos = get().pos;
            auto e = mk(PExpr::Not, pos);
            e->kids.push_back(parse_unary(no_bar));
            return e;
        }
        return parse_primary();
    }

    PExprPtr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::LParen: {
                get();
                auto e = parse_cond(false);
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Atom:
                break;
            default:
                throw SyntaxError("expected a formula", t.pos);
        }
        const Token atom = get();
        if (atom.text == "bot") return mk(PExpr::Bot, atom.pos);
        if (atom.text == "top") return mk(PExpr::Top, atom.pos);
        if (atom.text == "NE") return mk(PExpr::NE, atom.pos);
        if (atom.text == "Pr") return parse_pr(atom.pos);
        if (atom.text == "dep") return parse_dep(atom.pos);
        if (atom.text == "cindep") return parse_cindep(atom.pos);
        if (atom.text == "cneg") {
            expect(Tok::LParen, "'(' after cneg");
            auto e = mk(PExpr::Cneg, atom.pos);
            e->kids.push_back(parse_cond(false));
            expect(Tok::RParen, "')'");
            return e;
        }
        // literal: VAR = value  /  VAR != value
        bool positive;
        if (accept(Tok::EqTok)) positive = true;
        else if (accept(Tok::NeqTok)) positive = false;
        else throw SyntaxError("expected '=' or '!=' after variable '" + atom.text + "'", peek().pos);
        if (peek().kind != Tok::Atom) throw SyntaxError("expected a value", peek().pos);
        const Token value = get();
        auto e = mk(PExpr::Lit, atom.pos);
        e->var = atom.text;
        e->value = value.text;
        e->positive = positive;
        check_literal(e->var, e->value, atom.pos, value.pos);
        return e;
    }

    void check_literal(const std::string& var, const std::string& value, size_t vpos, size_t valpos) {
        if (!sig_) return;
        auto vi = sig_->var_index(var);
        if (!vi) throw UnknownVariable(var, vpos);
        if (!sig_->value_index(*vi, value)) throw ValueNotInRange(var, value, valpos);
    }

    Rational parse_rational() {
        if (peek().kind != Tok::Atom) throw SyntaxError("expected a rational constant", peek().pos);
        const Token first = get();
        std::string text = first.text;
        if (accept(Tok::Slash)) {
            if (peek().kind != Tok::Atom) throw SyntaxError("expected a denominator", peek().pos);
            text += "/" + get().text;
        }
        auto r = Rational::parse(text);
        if (!r) throw SyntaxError("cannot read '" + text + "' as a rational", first.pos);
        if (*r < Rational(0) || *r > Rational(1))
            throw SyntaxError("probability threshold " + r->str() + " outside [0,1]", first.pos);
        return *r;
    }

    Rel parse_rel() {
        switch (get().kind) {
            case Tok::Ge: return Rel::Ge;
            case Tok::Gt: return Rel::Gt;
            case Tok::Le: return Rel::Le;
            case Tok::Lt: return Rel::Lt;
            case Tok::EqEq: return Rel::Eq;
            case Tok::NeqTok: return Rel::Ne;
            default:
                throw SyntaxError("expected a comparison operator", toks_[at_ - 1].pos);
        }
    }

    PExprPtr parse_pr(size_t pos) {
        bool star = accept(Tok::Star);
        expect(Tok::LParen, "'(' after Pr");
        auto e = mk(star ? PExpr::PrStar : PExpr::Pr, pos);
        e->kids.push_back(parse_cond(true));
        if (accept(Tok::Bar)) {
            if (star) throw SyntaxError("Pr* takes no conditioning bar", peek().pos);
            e->has_cond = true;
            e->kids.push_back(parse_cond(true));
        }
        expect(Tok::RParen, "')'");
        e->rel = parse_rel();
        if (peek().kind == Tok::Atom && peek().text == "Pr") {
            if (star) throw SyntaxError("Pr* compares against a constant", peek().pos);
            get();
            e->rhs_is_pr = true;
            expect(Tok::LParen, "'(' after Pr");
            e->kids.push_back(parse_cond(true));
            if (accept(Tok::Bar)) {
                e->rhs_has_cond = true;
                e->kids.push_back(parse_cond(true));
            }
            expect(Tok::RParen, "')'");
        } else {
            e->eps = parse_rational();
        }
        return e;
    }

    PExprPtr parse_dep(size_t pos) {
        expect(Tok::LParen, "'(' after dep");
        auto e = mk(PExpr::Dep, pos);
        auto read_name = [&]() {
            if (peek().kind != Tok::Atom) throw SyntaxError("expected a variable name", peek().pos);
            const Token t = get();
            if (sig_ && !sig_->var_index(t.text)) throw UnknownVariable(t.text, t.pos);
            return t.text;
        };
        e->names.push_back(read_name());
        while (accept(Tok::Comma)) e->names.push_back(read_name());
        expect(Tok::Semi, "';'");
        e->names.push_back(read_name());  // target goes last
        expect(Tok::RParen, "')'");
        return e;
    }

    PExprPtr parse_cindep(size_t pos) {
        expect(Tok::LParen, "'(' after cindep");
        auto e = mk(PExpr::Cindep, pos);
        e->kids.push_back(parse_cond(true));
        expect(Tok::Semi, "';'");
        e->kids.push_back(parse_cond(true));
        expect(Tok::Bar, "'|'");
        e->kids.push_back(parse_cond(true));
        expect(Tok::RParen, "')'");
        return e;
    }
};

bool is_co_shaped(const PExpr& e) {
    switch (e.kind) {
        case PExpr::Lit:
        case PExpr::Bot:
        case PExpr::Top:
            return true;
        case PExpr::And:
        case PExpr::Or:
        case PExpr::Sup:
            return is_co_shaped(*e.kids[0]) && is_co_shaped(*e.kids[1]);
        case PExpr::Cf:
            return is_co_shaped(*e.kids[0]) && is_co_shaped(*e.kids[1]);
        case PExpr::Not:
            return is_co_shaped(*e.kids[0]);
        default:
            return false;
    }
}

std::vector<VarVal> antecedent_pairs(const PExpr& e) {
    // A counterfactual antecedent is a &-conjunction of equalities.
    std::vector<VarVal> pairs;
    const PExpr* cur = &e;
    std::vector<const PExpr*> stack;
    stack.push_back(cur);
    std::vector<const PExpr*> order;
    while (!stack.empty()) {
        const PExpr* x = stack.back();
        stack.pop_back();
        if (x->kind == PExpr::And) {
            stack.push_back(x->kids[1].get());
            stack.push_back(x->kids[0].get());
        } else if (x->kind == PExpr::Lit && x->positive) {
            order.push_back(x);
        } else {
            throw SyntaxError("counterfactual antecedent must be a conjunction of equalities", x->pos);
        }
    }
    for (const PExpr* x : order) pairs.push_back({x->var, x->value});
    return pairs;
}

CoPtr lower_co(const PExpr& e);

CoPtr lower_co(const PExpr& e) {
    switch (e.kind) {
        case PExpr::Lit:
            return e.positive ? co_eq(e.var, e.value) : co_neq(e.var, e.value);
        case PExpr::And:
            return co_and(lower_co(*e.kids[0]), lower_co(*e.kids[1]));
        case PExpr::Or:
            return co_or(lower_co(*e.kids[0]), lower_co(*e.kids[1]));
        case PExpr::Sup:
            return co_sup(lower_co(*e.kids[0]), lower_co(*e.kids[1]));
        case PExpr::Cf:
            return co_cf(antecedent_pairs(*e.kids[0]), lower_co(*e.kids[1]));
        case PExpr::Not:
            return co_not(lower_co(*e.kids[0]));
        case PExpr::Bot:
            return co_bot();
        case PExpr::Top:
            return co_top();
        default:
            throw SyntaxError("expected an event formula here", e.pos);
    }
}

PcoPtr lower_pco(const PExpr& e) {
    switch (e.kind) {
        case PExpr::Lit:
            return pco_lit(e.var, e.value, e.positive);
        case PExpr::And:
            return pco_and(lower_pco(*e.kids[0]), lower_pco(*e.kids[1]));
        case PExpr::Or:
            throw SyntaxError("tensor '|' only occurs inside event formulas", e.pos);
        case PExpr::Gdisj: {
            std::vector<PcoPtr> items;
            items.reserve(e.kids.size());
            for (const auto& k : e.kids) items.push_back(lower_pco(*k));
            return pco_gdisj(std::move(items));
        }
        case PExpr::Sup:
            return pco_sup(lower_co(*e.kids[0]), lower_pco(*e.kids[1]));
        case PExpr::Cf:
            return pco_cf(antecedent_pairs(*e.kids[0]), lower_pco(*e.kids[1]));
        case PExpr::MatImp:
            return pco_mat_imp(lower_pco(*e.kids[0]), lower_pco(*e.kids[1]));
        case PExpr::Stens:
            return pco_strict_tensor(lower_pco(*e.kids[0]), lower_pco(*e.kids[1]));
        case PExpr::Not:
            throw SyntaxError("'!' only applies to event formulas; use cneg(...) for statements",
                              e.pos);
        case PExpr::Bot:
            return pco_bot();
        case PExpr::Top:
            return pco_top();
        case PExpr::NE:
            return pco_ne();
        case PExpr::Pr: {
            CoPtr arg = lower_co(*e.kids[0]);
            size_t next = 1;
            CoPtr cond = e.has_cond ? lower_co(*e.kids[next++]) : nullptr;
            if (!e.rhs_is_pr) {
                if (cond) return pco_cond_pr_const(arg, cond, e.rel, e.eps);
                return pco_pr_const(arg, e.rel, e.eps);
            }
            CoPtr arg2 = lower_co(*e.kids[next++]);
            CoPtr cond2 = e.rhs_has_cond ? lower_co(*e.kids[next++]) : nullptr;
            if (!cond && !cond2) return pco_pr_cmp(arg, e.rel, arg2);
            return pco_cond_pr_cmp(arg, cond ? cond : co_top(), e.rel, arg2, cond2 ? cond2 : co_top());
        }
        case PExpr::PrStar:
            return pco_pr_star(lower_co(*e.kids[0]), e.rel, e.eps);
        case PExpr::Dep: {
            std::vector<std::string> args(e.names.begin(), e.names.end() - 1);
            return pco_dep(std::move(args), e.names.back());
        }
        case PExpr::Cindep:
            return pco_cindep(lower_co(*e.kids[0]), lower_co(*e.kids[1]), lower_co(*e.kids[2]));
        case PExpr::Cneg:
            return pco_cneg(lower_pco(*e.kids[0]));
    }
    throw SyntaxError("malformed formula", e.pos);
}

} // namespace

Query parse(const std::string& text, const Signature* sig) {
    Parser p(text, sig);
    PExprPtr e = p.parse_all();
    if (is_co_shaped(*e)) {
        // A counterfactual antecedent must still have the right shape.
        return Query(lower_co(*e));
    }
    return Query(lower_pco(*e));
}

CoPtr parse_co(const std::string& text, const Signature* sig) {
    Query q = parse(text, sig);
    if (auto* co = std::get_if<CoPtr>(&q)) return *co;
    throw SyntaxError("expected an event formula", 0);
}

PcoPtr parse_pco(const std::string& text, const Signature* sig) {
    Query q = parse(text, sig);
    if (auto* pco = std::get_if<PcoPtr>(&q)) return *pco;
    auto converted = co_to_pco(std::get<CoPtr>(q));
    if (!converted)
        throw SyntaxError("this event formula uses '|' outside antecedent positions and has no "
                          "statement reading",
                          0);
    return *converted;
}

} // namespace cmt
