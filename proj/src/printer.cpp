#include "cmt/printer.hpp"

namespace cmt {

namespace {

// Binding strength: conditionals 0, \/ 1, <|> 2, | 3, & 4, atoms 5.
constexpr int kCond = 0, kGdisj = 1, kStens = 2, kTensor = 3, kAnd = 4, kAtom = 5;

bool has_toplevel_bar(const std::string& s) {
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (c == '|' && depth == 0) return true;
    }
    return false;
}

std::string bar_safe(const std::string& s) {
    return has_toplevel_bar(s) ? "(" + s + ")" : s;
}

std::string pairs_text(const std::vector<VarVal>& pairs) {
    std::string out;
    for (size_t i = 0; i < pairs.size(); ++i) {
        if (i) out += " & ";
        out += pairs[i].var + "=" + pairs[i].value;
    }
    return out;
}

std::string render(const CoPtr& f, int min_level);
std::string render(const PcoPtr& f, int min_level);

std::string wrap(std::string s, int level, int min_level) {
    if (level < min_level) return "(" + std::move(s) + ")";
    return s;
}

std::string render(const CoPtr& f, int min_level) {
    switch (f->kind) {
        case CoKind::Eq:
            return f->var + "=" + f->value;
        case CoKind::Neq:
            return f->var + "!=" + f->value;
        case CoKind::And:
            return wrap(render(f->left, kAnd) + " & " + render(f->right, kAnd + 1), kAnd, min_level);
        case CoKind::Or:
            return wrap(render(f->left, kTensor) + " | " + render(f->right, kTensor + 1), kTensor,
                        min_level);
        case CoKind::Sup:
            return wrap(render(f->left, kCond + 1) + " => " + render(f->right, kCond), kCond,
                        min_level);
        case CoKind::Cf:
            return wrap(pairs_text(f->antecedent) + " ~> " + render(f->body, kCond), kCond,
                        min_level);
        case CoKind::Bot:
            return "bot";
        case CoKind::Top:
            return "top";
        case CoKind::Not:
            return "!" + render(f->left, kAtom);
    }
    return "?";
}

std::string pr_side(const CoPtr& arg, const CoPtr& cond) {
    std::string out = "Pr(" + bar_safe(render(arg, kCond));
    if (cond) out += " | " + bar_safe(render(cond, kCond));
    return out + ")";
}

std::string render(const PcoPtr& f, int min_level) {
    switch (f->kind) {
        case PcoKind::Lit:
            return f->var + (f->positive ? "=" : "!=") + f->value;
        case PcoKind::PrConst:
            return pr_side(f->co1, nullptr) + " " + rel_text(f->rel) + " " + f->eps.str();
        case PcoKind::PrCmp:
            return pr_side(f->co1, nullptr) + " " + rel_text(f->rel) + " " + pr_side(f->co2, nullptr);
        case PcoKind::CondPrConst:
            return pr_side(f->co1, f->co2) + " " + rel_text(f->rel) + " " + f->eps.str();
        case PcoKind::CondPrCmp:
            return pr_side(f->co1, f->co2) + " " + rel_text(f->rel) + " " + pr_side(f->co3, f->co4);
        case PcoKind::PrStar:
            return "Pr*(" + bar_safe(render(f->co1, kCond)) + ") " + rel_text(f->rel) + " " +
                   f->eps.str();
        case PcoKind::And:
            return wrap(render(f->left, kAnd) + " & " + render(f->right, kAnd + 1), kAnd, min_level);
        case PcoKind::Gdisj: {
            std::string out;
            for (size_t i = 0; i < f->items.size(); ++i) {
                if (i) out += " \\/ ";
                out += render(f->items[i], kGdisj + 1);
            }
            return wrap(std::move(out), kGdisj, min_level);
        }
        case PcoKind::Sup:
            return wrap(render(f->co1, kCond + 1) + " => " + render(f->body, kCond), kCond,
                        min_level);
        case PcoKind::Cf:
            return wrap(pairs_text(f->antecedent) + " ~> " + render(f->body, kCond), kCond,
                        min_level);
        case PcoKind::NE:
            return "NE";
        case PcoKind::StrictTensor:
            return wrap(render(f->left, kStens) + " <|> " + render(f->right, kStens + 1), kStens,
                        min_level);
        case PcoKind::MatImp:
            return wrap(render(f->left, kCond + 1) + " -> " + render(f->right, kCond), kCond,
                        min_level);
        case PcoKind::Cneg:
            return "cneg(" + render(f->left, kCond) + ")";
        case PcoKind::Dep: {
            std::string out = "dep(";
            for (size_t i = 0; i < f->dep_args.size(); ++i) {
                if (i) out += ",";
                out += f->dep_args[i];
            }
            return out + "; " + f->dep_target + ")";
        }
        case PcoKind::Cindep:
            return "cindep(" + bar_safe(render(f->co1, kCond)) + "; " +
                   bar_safe(render(f->co2, kCond)) + " | " + bar_safe(render(f->co3, kCond)) + ")";
        case PcoKind::Bot:
            return "bot";
        case PcoKind::Top:
            return "top";
    }
    return "?";
}

} // namespace

std::string print(const CoPtr& f) { return render(f, kCond); }
std::string print(const PcoPtr& f) { return render(f, kCond); }

std::string print(const Query& q) {
    if (auto* co = std::get_if<CoPtr>(&q)) return print(*co);
    return print(std::get<PcoPtr>(q));
}

} // namespace cmt
