#include "cmt/cli.hpp"

#include "cmt/enumerate.hpp"
#include "cmt/io.hpp"
#include "cmt/parser.hpp"
#include "cmt/printer.hpp"
#include "cmt/rescaling.hpp"
#include "cmt/sem_bridge.hpp"
#include "cmt/semantics.hpp"
#include "cmt/sugar.hpp"
#include "cmt/suite.hpp"
#include "cmt/transforms.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace cmt::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kOk = 0, kFalse = 1, kUsage = 2, kInvalid = 3;

struct Options {
    std::string model_path;
    std::string formula;
    std::string sig_path;
    std::string laws_path;     // CSV sidecar
    std::string batch_path;    // --file
    std::string out_path;
    std::string class_path;
    std::string sem_path;
    std::string pairs;
    std::string check_name;
    bool as_json = false;
    bool with_trace = false;
    long long bound = 4;
    unsigned long long cap = 1'000'000;
    uint64_t seed = 17;
};

CausalMultiteam load_model_opt(const Options& opt) {
    if (!opt.laws_path.empty()) return load_csv_model(opt.model_path, opt.laws_path);
    return load_model(opt.model_path);
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty()) {
        out << text << "\n";
        return;
    }
    std::ofstream file(path);
    if (!file) throw Error("cannot write '" + path + "'");
    file << text << "\n";
}

std::vector<VarVal> parse_assignment_list(const std::string& text, const Signature& sig) {
    CoPtr parsed = parse_co(text, &sig);
    std::vector<VarVal> pairs;
    std::vector<const CoFormula*> work{parsed.get()};
    std::vector<const CoFormula*> order;
    while (!work.empty()) {
        const CoFormula* node = work.back();
        work.pop_back();
        if (node->kind == CoKind::And) {
            work.push_back(node->right.get());
            work.push_back(node->left.get());
        } else if (node->kind == CoKind::Eq) {
            order.push_back(node);
        } else {
            throw SyntaxError("expected a conjunction of equalities", node->pos);
        }
    }
    for (const CoFormula* node : order) pairs.push_back({node->var, node->value});
    return pairs;
}

void print_trace(std::ostream& out, const TracePtr& trace, int depth) {
    if (!trace) return;
    out << std::string(static_cast<size_t>(depth) * 2, ' ') << (trace->verdict ? "+ " : "- ")
        << trace->clause;
    if (!trace->detail.empty()) out << ": " << trace->detail;
    out << "\n";
    for (const auto& child : trace->children) print_trace(out, child, depth + 1);
}

int do_check(const Options& opt, std::ostream& out) {
    CausalMultiteam m = load_model_opt(opt);
    std::vector<std::string> formulas;
    if (!opt.batch_path.empty()) {
        std::ifstream in(opt.batch_path);
        if (!in) throw Error("cannot open '" + opt.batch_path + "'");
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) formulas.push_back(line);
    } else {
        formulas.push_back(opt.formula);
    }

    bool all_true = true;
    json results = json::array();
    for (const std::string& text : formulas) {
        Query q = parse(text, &m.sig());
        bool verdict;
        TracePtr trace;
        if (opt.with_trace && std::holds_alternative<PcoPtr>(q)) {
            EvalResult r = satisfies(m, std::get<PcoPtr>(q), true);
            verdict = r.verdict;
            trace = r.trace;
        } else {
            verdict = holds(m, q);
        }
        all_true = all_true && verdict;
        if (opt.as_json) {
            results.push_back({{"formula", text}, {"verdict", verdict}});
        } else {
            out << (verdict ? "true" : "false") << "\n";
            if (trace) print_trace(out, trace, 1);
        }
    }
    if (opt.as_json)
        out << (formulas.size() == 1 ? results[0].dump(2) : results.dump(2)) << "\n";
    return all_true ? kOk : kFalse;
}

int do_prob(const Options& opt, std::ostream& out) {
    CausalMultiteam m = load_model_opt(opt);
    Rational p = prob(m, parse_co(opt.formula, &m.sig()));
    if (opt.as_json)
        out << json{{"probability", p.str()}}.dump(2) << "\n";
    else
        out << p.str() << "\n";
    return kOk;
}

int do_restrict(const Options& opt, std::ostream& out) {
    CausalMultiteam m = load_model_opt(opt);
    CausalMultiteam restricted = restrict_by(m, parse_co(opt.formula, &m.sig()));
    emit(out, opt.out_path, model_to_json(restricted));
    return kOk;
}

int do_intervene(const Options& opt, std::ostream& out) {
    CausalMultiteam m = load_model_opt(opt);
    CausalMultiteam moved = intervene(m, parse_assignment_list(opt.pairs, m.sig()));
    emit(out, opt.out_path, model_to_json(moved));
    return kOk;
}

json leaves_json(const RungReport& report) {
    json leaves = json::array();
    for (const auto& leaf : report.leaves)
        leaves.push_back({{"formula", print(leaf.leaf)},
                          {"rung", leaf.rung == Rung::BareAtom ? 1 : static_cast<int>(leaf.rung)},
                          {"shape", leaf.rung == Rung::BareAtom  ? "atom"
                                    : leaf.rung == Rung::Rung1   ? "conditional probability"
                                    : leaf.rung == Rung::Rung2   ? "do expression"
                                                                 : "counterfactual"}});
    return leaves;
}

size_t formula_size(const PcoPtr& f);
size_t formula_size(const CoPtr& f) {
    size_t n = 1;
    if (f->left) n += formula_size(f->left);
    if (f->right) n += formula_size(f->right);
    if (f->body) n += formula_size(f->body);
    return n;
}
size_t formula_size(const PcoPtr& f) {
    size_t n = 1;
    if (f->co1) n += formula_size(f->co1);
    if (f->co2) n += formula_size(f->co2);
    if (f->co3) n += formula_size(f->co3);
    if (f->co4) n += formula_size(f->co4);
    if (f->left) n += formula_size(f->left);
    if (f->right) n += formula_size(f->right);
    if (f->body) n += formula_size(f->body);
    for (const auto& item : f->items) n += formula_size(item);
    return n;
}

int do_nf(const Options& opt, std::ostream& out, bool classify_only) {
    SigPtr sig = load_signature(opt.sig_path);
    PcoPtr phi = parse_pco(opt.formula, sig.get());
    NormalForm nf = normal_form(phi, *sig);
    RungReport report = classify_rung(nf);
    if (opt.as_json) {
        json j{{"max_rung", report.max_rung},
               {"leaves", leaves_json(report)},
               {"size", formula_size(nf.root)}};
        if (!classify_only) j["normal_form"] = print(nf.root);
        out << j.dump(2) << "\n";
        return kOk;
    }
    if (!classify_only) {
        out << print(nf.root) << "\n";
        out << "size: " << formula_size(nf.root) << " nodes, " << report.leaves.size()
            << " leaves\n";
    }
    for (const auto& leaf : report.leaves) {
        int rung = leaf.rung == Rung::BareAtom ? 1 : static_cast<int>(leaf.rung);
        out << "rung " << rung << ": " << print(leaf.leaf) << "\n";
    }
    out << "max rung: " << report.max_rung << "\n";
    return kOk;
}

int do_cneg(const Options& opt, std::ostream& out) {
    SigPtr sig = load_signature(opt.sig_path);
    PcoPtr phi = expand_sugar(parse_pco(opt.formula, sig.get()), sig.get());
    out << print(compile_cneg(phi, *sig)) << "\n";
    return kOk;
}

int do_from_sem(const Options& opt, std::ostream& out) {
    Sem sem = load_sem(opt.sem_path);
    emit(out, opt.out_path, model_to_json(sem_to_multiteam(sem)));
    return kOk;
}

int do_to_sem(const Options& opt, std::ostream& out) {
    CausalMultiteam m = load_model_opt(opt);
    emit(out, opt.out_path, sem_to_json(multiteam_to_sem(m)));
    return kOk;
}

int do_markov(const Options& opt, std::ostream& out) {
    CausalMultiteam m = load_model_opt(opt);
    MarkovReport report = markov_check(m);
    if (opt.as_json) {
        json witnesses = json::array();
        for (const auto& w : report.witnesses)
            witnesses.push_back({{"var_a", m.sig().var_name(w.var_a)},
                                 {"val_a", m.sig().value_name(w.var_a, w.val_a)},
                                 {"var_b", m.sig().var_name(w.var_b)},
                                 {"val_b", m.sig().value_name(w.var_b, w.val_b)},
                                 {"joint", w.joint.str()},
                                 {"product", w.product.str()}});
        out << json{{"markovian", report.markovian}, {"witnesses", witnesses}}.dump(2) << "\n";
    } else {
        out << (report.markovian ? "markovian: true" : "markovian: false") << "\n";
        for (const auto& w : report.witnesses)
            out << "  P(" << m.sig().var_name(w.var_a) << "=" << m.sig().value_name(w.var_a, w.val_a)
                << ", " << m.sig().var_name(w.var_b) << "=" << m.sig().value_name(w.var_b, w.val_b)
                << ") = " << w.joint.str() << " but the product of margins is " << w.product.str()
                << "\n";
    }
    return report.markovian ? kOk : kFalse;
}

int do_rescale_canon(const Options& opt, std::ostream& out) {
    CausalMultiteam m = load_model_opt(opt);
    emit(out, opt.out_path, model_to_json(canonical(m)));
    return kOk;
}

int do_psi(const Options& opt, std::ostream& out) {
    FiniteClass k = load_class(opt.class_path);
    out << print(psi_formula(k)) << "\n";
    return kOk;
}

int do_define_check(const Options& opt, std::ostream& out) {
    FiniteClass k = load_class(opt.class_path);
    DefinabilityReport report = check_definability(k, opt.bound, opt.cap);
    if (opt.as_json) {
        out << json{{"exact_match", report.exact_match},
                    {"models_checked", report.models_checked},
                    {"mismatches", report.mismatches}}
                   .dump(2)
            << "\n";
    } else {
        out << "models checked: " << report.models_checked << "\n";
        out << (report.exact_match
                    ? "the class formula defines exactly the rescaling closure plus empty models"
                    : "MISMATCH between the class formula and the rescaling closure")
            << "\n";
        for (const auto& line : report.mismatches) out << "  " << line << "\n";
    }
    return report.exact_match ? kOk : kFalse;
}

int do_suite(const Options& opt, std::ostream& out) {
    SuiteConfig config;
    config.seed = opt.seed;
    std::vector<CheckResult> results;
    if (!opt.check_name.empty())
        results.push_back(run_check(opt.check_name, config));
    else
        results = run_suite(config);

    bool all_passed = true;
    json lines = json::array();
    for (const auto& r : results) {
        all_passed = all_passed && r.passed;
        if (opt.as_json) {
            lines.push_back({{"check", r.name},
                             {"passed", r.passed},
                             {"cases", r.cases},
                             {"seconds", r.seconds},
                             {"detail", r.detail}});
        } else {
            char buffer[160];
            std::snprintf(buffer, sizeof(buffer), "[%s] %-28s %9lld cases  %7.2f s",
                          r.passed ? "PASS" : "FAIL", r.name.c_str(), r.cases, r.seconds);
            out << buffer;
            if (!r.detail.empty()) out << "  " << r.detail;
            out << "\n";
        }
    }
    if (opt.as_json) out << lines.dump(2) << "\n";
    return all_passed ? kOk : kFalse;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact model checker for probabilistic causal multiteams"};
    app.require_subcommand(1);
    Options opt;

    auto add_model_arg = [&](CLI::App* cmd) {
        cmd->add_option("model", opt.model_path, "model file (.json or .csv)")->required();
        cmd->add_option("--laws", opt.laws_path, "sidecar with signature and laws for CSV input");
    };

    CLI::App* check = app.add_subcommand("check", "evaluate a formula against a model");
    add_model_arg(check);
    check->add_option("formula", opt.formula, "formula text");
    check->add_option("--file", opt.batch_path, "read one formula per line instead");
    check->add_flag("--json", opt.as_json, "machine-readable output");
    check->add_flag("--trace", opt.with_trace, "print the clause-by-clause evaluation");

    CLI::App* probc = app.add_subcommand("prob", "exact probability of an event formula");
    add_model_arg(probc);
    probc->add_option("formula", opt.formula, "event formula")->required();
    probc->add_flag("--json", opt.as_json, "machine-readable output");

    CLI::App* restrictc = app.add_subcommand("restrict", "keep the rows satisfying an event");
    add_model_arg(restrictc);
    restrictc->add_option("formula", opt.formula, "event formula")->required();
    restrictc->add_option("--out", opt.out_path, "write the model here instead of stdout");

    CLI::App* intervenec = app.add_subcommand("intervene", "force variables and recompute");
    add_model_arg(intervenec);
    intervenec->add_option("pairs", opt.pairs, "conjunction such as \"X=1 & Y=0\"")->required();
    intervenec->add_option("--out", opt.out_path, "write the model here instead of stdout");

    CLI::App* nfc = app.add_subcommand("nf", "rewrite a statement to normal form");
    nfc->add_option("formula", opt.formula, "statement")->required();
    nfc->add_option("--sig", opt.sig_path, "signature file")->required();
    nfc->add_flag("--json", opt.as_json, "machine-readable output");

    CLI::App* classifyc = app.add_subcommand("classify", "rung classification of a statement");
    classifyc->add_option("formula", opt.formula, "statement")->required();
    classifyc->add_option("--sig", opt.sig_path, "signature file")->required();
    classifyc->add_flag("--json", opt.as_json, "machine-readable output");

    CLI::App* cnegc = app.add_subcommand("cneg", "contradictory negation of a statement");
    cnegc->add_option("formula", opt.formula, "statement")->required();
    cnegc->add_option("--sig", opt.sig_path, "signature file")->required();

    CLI::App* fromsem = app.add_subcommand("from-sem", "realize a SEM as a counting model");
    fromsem->add_option("sem", opt.sem_path, "SEM file")->required();
    fromsem->add_option("--out", opt.out_path, "write the model here instead of stdout");

    CLI::App* tosem = app.add_subcommand("to-sem", "read off the SEM of a model");
    add_model_arg(tosem);
    tosem->add_option("--out", opt.out_path, "write the SEM here instead of stdout");

    CLI::App* markovc = app.add_subcommand("markov", "check exogenous pairwise independence");
    add_model_arg(markovc);
    markovc->add_flag("--json", opt.as_json, "machine-readable output");

    CLI::App* canonc = app.add_subcommand("rescale-canon", "reduce counts by their gcd");
    add_model_arg(canonc);
    canonc->add_option("--out", opt.out_path, "write the model here instead of stdout");

    CLI::App* psic = app.add_subcommand("psi", "defining statement of a class of models");
    psic->add_option("class", opt.class_path, "class file")->required();

    CLI::App* definec = app.add_subcommand("define-check",
                                           "verify the class statement against enumeration");
    definec->add_option("class", opt.class_path, "class file")->required();
    definec->add_option("--bound", opt.bound, "largest multiteam cardinality to enumerate");
    definec->add_option("--cap", opt.cap, "abort if the enumeration would exceed this");
    definec->add_flag("--json", opt.as_json, "machine-readable output");

    CLI::App* suitec = app.add_subcommand("suite", "run the property suite");
    suitec->add_option("--seed", opt.seed, "random seed for the generated cases");
    suitec->add_option("--check", opt.check_name, "run a single named check");
    suitec->add_flag("--json", opt.as_json, "machine-readable output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help
            out << app.help() << "\n";
            return kOk;
        }
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (check->parsed()) {
            if (opt.formula.empty() && opt.batch_path.empty())
                throw Error("check needs a formula or --file");
            return do_check(opt, out);
        }
        if (probc->parsed()) return do_prob(opt, out);
        if (restrictc->parsed()) return do_restrict(opt, out);
        if (intervenec->parsed()) return do_intervene(opt, out);
        if (nfc->parsed()) return do_nf(opt, out, false);
        if (classifyc->parsed()) return do_nf(opt, out, true);
        if (cnegc->parsed()) return do_cneg(opt, out);
        if (fromsem->parsed()) return do_from_sem(opt, out);
        if (tosem->parsed()) return do_to_sem(opt, out);
        if (markovc->parsed()) return do_markov(opt, out);
        if (canonc->parsed()) return do_rescale_canon(opt, out);
        if (psic->parsed()) return do_psi(opt, out);
        if (definec->parsed()) return do_define_check(opt, out);
        if (suitec->parsed()) return do_suite(opt, out);
        err << "usage error: no subcommand\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "parse error at offset " << e.position << ": " << e.what() << "\n";
        return kUsage;
    } catch (const SignatureRequired& e) {
        err << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const UnsupportedNode& e) {
        err << "unsupported formula: " << e.what() << "\n";
        return kUsage;
    } catch (const ModelError& e) {
        err << "invalid model: " << e.what() << "\n";
        return kInvalid;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

} // namespace cmt::cli
