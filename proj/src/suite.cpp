#include "cmt/suite.hpp"

#include "cmt/enumerate.hpp"
#include "cmt/generators.hpp"
#include "cmt/parser.hpp"
#include "cmt/printer.hpp"
#include "cmt/rescaling.hpp"
#include "cmt/sem_bridge.hpp"
#include "cmt/semantics.hpp"
#include "cmt/sugar.hpp"
#include "cmt/transforms.hpp"

#include <array>
#include <chrono>
#include <functional>

namespace cmt {

namespace {

using Clock = std::chrono::steady_clock;

struct Failure {
    bool any = false;
    std::string first;
    void note(const std::string& what) {
        if (!any) first = what;
        any = true;
    }
};

SigPtr suite_bin_sig() {
    return std::make_shared<Signature>(std::vector<std::string>{"X", "Y"},
                                       std::vector<std::vector<std::string>>{{"0", "1"},
                                                                             {"0", "1"}});
}

CausalMultiteam suite_coin() {
    auto sig = std::make_shared<Signature>(
        std::vector<std::string>{"X", "Y"},
        std::vector<std::vector<std::string>>{{"heads", "tails"}, {"heads", "tails"}});
    Multiteam team;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) team.add({x, y}, 1);
    return CausalMultiteam::create(sig, std::move(team), FunctionComponent{});
}

CausalMultiteam suite_s3() {
    SigPtr sig = suite_bin_sig();
    Multiteam team;
    team.add({0, 0}, 2);
    team.add({0, 1}, 1);
    return CausalMultiteam::create(sig, std::move(team), FunctionComponent{});
}

// ---------------------------------------------------------------------------
// Brute-force satisfaction over two binary variables. Evaluates the split
// clause for the tensor disjunction literally, so the flatness theorem can
// be checked against it instead of being assumed.
// ---------------------------------------------------------------------------

namespace brute {

// components: 0 lawless; 1 X:=Y; 2 X:=1-Y; 3 Y:=X; 4 Y:=1-X
constexpr int kComponents = 5;
constexpr int kMaxRows = 4;
constexpr int kPacks = 625;  // counts over at most 4 slots, radix kMaxRows+1

inline int assignment_of(int x, int y) { return x * 2 + y; }

struct Layout {
    std::vector<std::array<int, 4>> rows;      // per component: assignment per slot (-1 unused)
    std::vector<int> slots;                    // slot count per component
    std::vector<std::array<int, 4>> slot_for;  // per component: assignment -> slot or -1
};

Layout make_layout() {
    Layout layout;
    layout.rows.resize(kComponents);
    layout.slots.resize(kComponents);
    layout.slot_for.resize(kComponents);
    auto fill = [&](int comp, std::vector<int> assignments) {
        layout.rows[comp] = {-1, -1, -1, -1};
        layout.slot_for[comp] = {-1, -1, -1, -1};
        layout.slots[comp] = static_cast<int>(assignments.size());
        for (size_t s = 0; s < assignments.size(); ++s) {
            layout.rows[comp][s] = assignments[s];
            layout.slot_for[comp][assignments[s]] = static_cast<int>(s);
        }
    };
    fill(0, {0, 1, 2, 3});
    fill(1, {assignment_of(0, 0), assignment_of(1, 1)});  // X:=Y
    fill(2, {assignment_of(1, 0), assignment_of(0, 1)});  // X:=1-Y
    fill(3, {assignment_of(0, 0), assignment_of(1, 1)});  // Y:=X
    fill(4, {assignment_of(0, 1), assignment_of(1, 0)});  // Y:=1-X
    return layout;
}

const Layout& layout() {
    static Layout l = make_layout();
    return l;
}

// interventions: forcing X drops any law for X; Y analogously
inline int comp_after(int comp, int var) {
    if (var == 0 && (comp == 1 || comp == 2)) return 0;
    if (var == 1 && (comp == 3 || comp == 4)) return 0;
    return comp;
}

inline int move_assignment(int comp, int var, int val, int a) {
    int x = a >> 1, y = a & 1;
    if (var == 0) {
        x = val;
        int after = comp_after(comp, 0);
        if (after == 3) y = x;
        if (after == 4) y = 1 - x;
    } else {
        y = val;
        int after = comp_after(comp, 1);
        if (after == 1) x = y;
        if (after == 2) x = 1 - y;
    }
    return assignment_of(x, y);
}

// Antecedent forms for counterfactual nodes: 0..3 force one variable,
// 4..7 force both, 8 is inconsistent (vacuous truth).
struct Antecedent {
    int var1, val1;
    int var2 = -1, val2 = -1;
    bool inconsistent = false;
};

const std::vector<Antecedent>& antecedents() {
    static std::vector<Antecedent> forms = [] {
        std::vector<Antecedent> out;
        for (int var = 0; var < 2; ++var)
            for (int val = 0; val < 2; ++val) out.push_back({var, val});
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) out.push_back({0, x, 1, y});
        Antecedent clash{0, 0, 0, 1};
        clash.inconsistent = true;
        out.push_back(clash);
        return out;
    }();
    return forms;
}

enum Kind : uint8_t { LIT, AND, OR, SUP, CF };

struct Node {
    Kind kind;
    int8_t var = 0, val = 0;
    bool positive = true;
    int a = -1, b = -1;  // children
    int8_t ant = -1;     // antecedent form for CF
};

struct Arena {
    std::vector<Node> nodes;
    int depth2_end = 0;

    int add(Node n) {
        nodes.push_back(n);
        return static_cast<int>(nodes.size()) - 1;
    }
};

Arena enumerate_formulas() {
    Arena arena;
    for (int var = 0; var < 2; ++var)
        for (int val = 0; val < 2; ++val)
            for (bool positive : {true, false}) {
                Node n;
                n.kind = LIT;
                n.var = static_cast<int8_t>(var);
                n.val = static_cast<int8_t>(val);
                n.positive = positive;
                arena.add(n);
            }
    int lits_end = static_cast<int>(arena.nodes.size());

    auto combine = [&](int begin, int end) {
        for (Kind kind : {AND, OR, SUP})
            for (int i = begin; i < end; ++i)
                for (int j = begin; j < end; ++j) {
                    Node n;
                    n.kind = kind;
                    n.a = i;
                    n.b = j;
                    arena.add(n);
                }
        for (size_t ant = 0; ant < antecedents().size(); ++ant)
            for (int i = begin; i < end; ++i) {
                Node n;
                n.kind = CF;
                n.ant = static_cast<int8_t>(ant);
                n.a = i;
                arena.add(n);
            }
    };

    combine(0, lits_end);
    arena.depth2_end = static_cast<int>(arena.nodes.size());
    combine(0, arena.depth2_end);
    return arena;
}

/// Row-by-row truth of every node, per component: the base of restriction
/// and of the flatness right-hand side.
std::vector<std::array<uint8_t, kComponents>> singleton_truth(const Arena& arena) {
    std::vector<std::array<uint8_t, kComponents>> bits(arena.nodes.size());
    for (size_t id = 0; id < arena.nodes.size(); ++id) {
        const Node& n = arena.nodes[id];
        for (int comp = 0; comp < kComponents; ++comp) {
            uint8_t mask = 0;
            switch (n.kind) {
                case LIT:
                    for (int a = 0; a < 4; ++a) {
                        int held = n.var == 0 ? (a >> 1) : (a & 1);
                        bool truth = n.positive ? held == n.val : held != n.val;
                        if (truth) mask |= static_cast<uint8_t>(1 << a);
                    }
                    break;
                case AND:
                    mask = bits[n.a][comp] & bits[n.b][comp];
                    break;
                case OR:
                    mask = bits[n.a][comp] | bits[n.b][comp];
                    break;
                case SUP:
                    mask = static_cast<uint8_t>((~bits[n.a][comp] | bits[n.b][comp]) & 0xF);
                    break;
                case CF: {
                    const Antecedent& ant = antecedents()[n.ant];
                    if (ant.inconsistent) {
                        mask = 0xF;
                        break;
                    }
                    for (int a = 0; a < 4; ++a) {
                        int moved = move_assignment(comp, ant.var1, ant.val1, a);
                        int comp2 = comp_after(comp, ant.var1);
                        if (ant.var2 >= 0) {
                            moved = move_assignment(comp2, ant.var2, ant.val2, moved);
                            comp2 = comp_after(comp2, ant.var2);
                        }
                        if (bits[n.a][comp2] & (1 << moved)) mask |= static_cast<uint8_t>(1 << a);
                    }
                    break;
                }
            }
            bits[id][comp] = mask;
        }
    }
    return bits;
}

struct StateSpace {
    // reachable packs (count vectors with sum <= kMaxRows) per component
    std::vector<std::vector<int>> reachable;
    // cover splits: for every pack, the (left, right) pack pairs whose
    // slotwise shares are <= the count and sum to >= it (set union)
    std::vector<std::vector<std::vector<std::pair<int, int>>>> covers;

    static int slot_count(int comp) { return layout().slots[comp]; }

    static int pack_of(const std::array<int, 4>& counts, int slots) {
        int pack = 0;
        for (int s = slots - 1; s >= 0; --s) pack = pack * 5 + counts[s];
        return pack;
    }

    static std::array<int, 4> unpack(int pack, int slots) {
        std::array<int, 4> counts{0, 0, 0, 0};
        for (int s = 0; s < slots; ++s) {
            counts[s] = pack % 5;
            pack /= 5;
        }
        return counts;
    }
};

StateSpace make_states() {
    StateSpace space;
    space.reachable.resize(kComponents);
    space.covers.resize(kComponents);
    for (int comp = 0; comp < kComponents; ++comp) {
        int slots = layout().slots[comp];
        space.covers[comp].resize(kPacks);
        std::array<int, 4> counts{0, 0, 0, 0};
        while (true) {
            int total = counts[0] + counts[1] + counts[2] + counts[3];
            if (total <= kMaxRows) {
                int pack = StateSpace::pack_of(counts, slots);
                space.reachable[comp].push_back(pack);
                // covers may overlap: shares bounded by the count, sum at least it
                std::array<int, 4> l{0, 0, 0, 0}, r{0, 0, 0, 0};
                std::function<void(int)> cover = [&](int slot) {
                    if (slot == slots) {
                        space.covers[comp][pack].emplace_back(StateSpace::pack_of(l, slots),
                                                              StateSpace::pack_of(r, slots));
                        return;
                    }
                    for (l[slot] = 0; l[slot] <= counts[slot]; ++l[slot])
                        for (r[slot] = counts[slot] - l[slot]; r[slot] <= counts[slot]; ++r[slot])
                            cover(slot + 1);
                };
                cover(0);
            }
            // odometer over 4-slot counts bounded by kMaxRows each
            int s = 0;
            while (s < slots && counts[s] == kMaxRows) counts[s++] = 0;
            if (s == slots) break;
            ++counts[s];
        }
    }
    return space;
}

struct Evaluator {
    const Arena& arena;
    const std::vector<std::array<uint8_t, kComponents>>& bits;
    const StateSpace& space;
    // cached truth for depth <= 2 nodes: [node][comp * kPacks + pack]
    std::vector<std::vector<uint8_t>> cache;

    Evaluator(const Arena& arena_, const std::vector<std::array<uint8_t, kComponents>>& bits_,
              const StateSpace& space_)
        : arena(arena_), bits(bits_), space(space_) {
        cache.resize(arena.depth2_end);
        for (int id = 0; id < arena.depth2_end; ++id) {
            cache[id].assign(kComponents * kPacks, 0);
            for (int comp = 0; comp < kComponents; ++comp)
                for (int pack : space.reachable[comp])
                    cache[id][comp * kPacks + pack] =
                        static_cast<uint8_t>(evaluate(id, comp, pack) ? 1 : 0);
        }
    }

    uint8_t support_mask(int comp, int pack) const {
        std::array<int, 4> counts = StateSpace::unpack(pack, layout().slots[comp]);
        uint8_t mask = 0;
        for (int s = 0; s < layout().slots[comp]; ++s)
            if (counts[s] > 0) mask |= static_cast<uint8_t>(1 << layout().rows[comp][s]);
        return mask;
    }

    int restrict_pack(int comp, int pack, uint8_t keep_mask) const {
        std::array<int, 4> counts = StateSpace::unpack(pack, layout().slots[comp]);
        for (int s = 0; s < layout().slots[comp]; ++s)
            if (!(keep_mask & (1 << layout().rows[comp][s]))) counts[s] = 0;
        return StateSpace::pack_of(counts, layout().slots[comp]);
    }

    std::pair<int, int> intervene_state(int comp, int pack, const Antecedent& ant) const {
        std::array<int, 4> counts = StateSpace::unpack(pack, layout().slots[comp]);
        std::array<int, 4> moved{0, 0, 0, 0};
        int comp2 = comp_after(comp, ant.var1);
        if (ant.var2 >= 0) comp2 = comp_after(comp2, ant.var2);
        for (int s = 0; s < layout().slots[comp]; ++s) {
            if (counts[s] == 0) continue;
            int a = layout().rows[comp][s];
            int target = move_assignment(comp, ant.var1, ant.val1, a);
            if (ant.var2 >= 0)
                target = move_assignment(comp_after(comp, ant.var1), ant.var2, ant.val2, target);
            moved[layout().slot_for[comp2][target]] += counts[s];
        }
        return {comp2, StateSpace::pack_of(moved, layout().slots[comp2])};
    }

    bool lookup(int id, int comp, int pack) const {
        return cache[id][comp * kPacks + pack] != 0;
    }

    /// The literal clauses: every row satisfies the node.
    bool universal(int id, int comp, int pack) const {
        return (support_mask(comp, pack) & ~bits[id][comp]) == 0;
    }

    bool evaluate(int id, int comp, int pack) const {
        const Node& n = arena.nodes[id];
        switch (n.kind) {
            case LIT:
                return universal(id, comp, pack);
            case AND:
                return child(n.a, comp, pack) && child(n.b, comp, pack);
            case OR: {
                for (const auto& [lp, rp] : space.covers[comp][pack])
                    if (child(n.a, comp, lp) && child(n.b, comp, rp)) return true;
                return false;
            }
            case SUP: {
                int restricted = restrict_pack(comp, pack, bits[n.a][comp]);
                return child(n.b, comp, restricted);
            }
            case CF: {
                const Antecedent& ant = antecedents()[n.ant];
                if (ant.inconsistent) return true;
                auto [comp2, pack2] = intervene_state(comp, pack, ant);
                return child(n.a, comp2, pack2);
            }
        }
        return false;
    }

    bool child(int id, int comp, int pack) const {
        if (id < arena.depth2_end) return lookup(id, comp, pack);
        return evaluate(id, comp, pack);
    }
};

CausalMultiteam materialize(const SigPtr& sig, int comp, int pack) {
    FunctionComponent laws;
    auto law = [&](int target, int arg, bool negated) {
        CausalFunction f;
        f.target = target;
        f.args = {arg};
        f.table = negated ? std::vector<int>{1, 0} : std::vector<int>{0, 1};
        laws.functions.emplace(target, std::move(f));
    };
    if (comp == 1) law(0, 1, false);
    if (comp == 2) law(0, 1, true);
    if (comp == 3) law(1, 0, false);
    if (comp == 4) law(1, 0, true);
    Multiteam team;
    std::array<int, 4> counts = StateSpace::unpack(pack, layout().slots[comp]);
    for (int s = 0; s < layout().slots[comp]; ++s)
        if (counts[s] > 0) {
            int a = layout().rows[comp][s];
            team.add({a >> 1, a & 1}, counts[s]);
        }
    return CausalMultiteam::unchecked(sig, std::move(team), std::move(laws));
}

CoPtr materialize_formula(const Arena& arena, int id, const Signature& sig) {
    const Node& n = arena.nodes[id];
    auto var_name = [&](int var) { return sig.var_name(var); };
    auto val_name = [&](int var, int val) { return sig.value_name(var, val); };
    switch (n.kind) {
        case LIT:
            return n.positive ? co_eq(var_name(n.var), val_name(n.var, n.val))
                              : co_neq(var_name(n.var), val_name(n.var, n.val));
        case AND:
            return co_and(materialize_formula(arena, n.a, sig),
                          materialize_formula(arena, n.b, sig));
        case OR:
            return co_or(materialize_formula(arena, n.a, sig),
                         materialize_formula(arena, n.b, sig));
        case SUP:
            return co_sup(materialize_formula(arena, n.a, sig),
                          materialize_formula(arena, n.b, sig));
        case CF: {
            const Antecedent& ant = antecedents()[n.ant];
            std::vector<VarVal> pairs{{var_name(ant.var1), val_name(ant.var1, ant.val1)}};
            if (ant.var2 >= 0)
                pairs.push_back({var_name(ant.var2), val_name(ant.var2, ant.val2)});
            return co_cf(std::move(pairs), materialize_formula(arena, n.a, sig));
        }
    }
    return co_top();
}

} // namespace brute

// ---------------------------------------------------------------------------
// The individual checks
// ---------------------------------------------------------------------------

CheckResult check_worked_examples(const SuiteConfig&) {
    CheckResult result;
    result.name = "worked-examples";
    Failure fail;

    CausalMultiteam s3 = suite_s3();
    const Signature* s3sig = &s3.sig();
    if (prob(s3, parse_co("Y=0", s3sig)) != Rational(2, 3))
        fail.note("prob(S3, Y=0) is not 2/3");

    CausalMultiteam coin = suite_coin();
    const Signature* csig = &coin.sig();
    if (prob(coin, parse_co("X=heads | Y=tails", csig)) != Rational(3, 4))
        fail.note("prob(coin, X=heads or Y=tails) is not 3/4");
    if (!holds(coin, parse_pco("Pr(X=heads) == 1/2 \\/ Pr(Y=tails) == 1/2", csig)))
        fail.note("global disjunction about the fair coins failed");
    CausalMultiteam tails = restrict_by(coin, parse_co("X=tails", csig));
    if (holds(tails, parse_pco("Pr(X=tails) <= 1/2", csig)))
        fail.note("downward closure unexpectedly holds");
    if (!holds(coin, parse_pco("Pr(X=tails) <= 1/2", csig)))
        fail.note("Pr(X=tails) <= 1/2 should hold on the full table");

    result.cases = 5;
    result.passed = !fail.any;
    result.detail = fail.first;
    return result;
}

CheckResult check_flatness_exhaustive(const SuiteConfig&) {
    CheckResult result;
    result.name = "flatness-exhaustive";
    Failure fail;

    brute::Arena arena = brute::enumerate_formulas();
    auto bits = brute::singleton_truth(arena);
    brute::StateSpace space = brute::make_states();
    brute::Evaluator oracle(arena, bits, space);

    SigPtr sig = suite_bin_sig();
    long long cases = 0;
    for (size_t id = 0; id < arena.nodes.size() && !fail.any; ++id) {
        for (int comp = 0; comp < brute::kComponents; ++comp) {
            for (int pack : space.reachable[comp]) {
                bool naive = oracle.child(static_cast<int>(id), comp, pack);
                bool rowwise = oracle.universal(static_cast<int>(id), comp, pack);
                ++cases;
                if (naive != rowwise) {
                    fail.note("flatness fails for formula " +
                              print(brute::materialize_formula(arena, static_cast<int>(id), *sig)));
                    break;
                }
            }
        }
    }

    // spot-check the production evaluator against the brute-force one
    for (size_t id = 0; id < arena.nodes.size() && !fail.any; id += 97) {
        CoPtr alpha = brute::materialize_formula(arena, static_cast<int>(id), *sig);
        for (int comp = 0; comp < brute::kComponents; ++comp) {
            for (int pack : space.reachable[comp]) {
                CausalMultiteam m = brute::materialize(sig, comp, pack);
                ++cases;
                if (satisfies_co(m, alpha) != oracle.child(static_cast<int>(id), comp, pack)) {
                    fail.note("library disagrees with brute force on " + print(alpha));
                    break;
                }
            }
        }
    }

    result.cases = cases;
    result.passed = !fail.any;
    result.detail = fail.first;
    return result;
}

CheckResult check_empty_team_random(const SuiteConfig& config) {
    CheckResult result;
    result.name = "empty-team-random";
    Failure fail;
    Rng rng(config.seed ^ 0xe3);
    SigPtr sig = suite_bin_sig();
    std::vector<FunctionComponent> components = enumerate_components(*sig);
    FormulaOptions options;
    options.max_depth = 4;
    options.sugar_rels = true;
    for (int i = 0; i < 200; ++i) {
        PcoPtr phi = random_pco(rng, *sig, options);
        const FunctionComponent& laws = components[static_cast<size_t>(
            rng.below(static_cast<int>(components.size())))];
        CausalMultiteam none = CausalMultiteam::unchecked(sig, Multiteam{}, laws);
        ++result.cases;
        if (!holds(none, phi)) {
            fail.note("empty model falsifies " + print(phi));
            break;
        }
    }
    result.passed = !fail.any;
    result.detail = fail.first;
    return result;
}

CheckResult check_normal_form_equivalence(const SuiteConfig& config) {
    CheckResult result;
    result.name = "normal-form-equivalence";
    Failure fail;
    Rng rng(config.seed ^ 0x9f);
    SigPtr sig = suite_bin_sig();
    std::vector<CausalMultiteam> all = enumerate_models(sig, 4);
    // thirty models spread over the family
    std::vector<CausalMultiteam> sample;
    for (size_t i = 0; i < all.size() && sample.size() < 30; i += all.size() / 30)
        sample.push_back(all[i]);

    FormulaOptions options;
    options.max_depth = 4;
    options.sugar_rels = true;
    for (int i = 0; i < 300 && !fail.any; ++i) {
        PcoPtr phi = random_pco(rng, *sig, options);
        NormalForm nf = normal_form(phi, *sig);
        std::string shape = check_normal_form_shape(nf);
        if (!shape.empty()) {
            fail.note("bad shape for " + print(phi) + ": " + shape);
            break;
        }
        for (const auto& m : sample) {
            ++result.cases;
            if (holds(m, phi) != holds(m, nf.root)) {
                fail.note("normal form changes the verdict of " + print(phi));
                break;
            }
        }
    }
    result.passed = !fail.any;
    result.detail = fail.first;
    return result;
}

CheckResult check_cneg_contradictoriness(const SuiteConfig& config) {
    CheckResult result;
    result.name = "cneg-contradictoriness";
    Failure fail;
    Rng rng(config.seed ^ 0xc1);
    SigPtr sig = suite_bin_sig();
    std::vector<CausalMultiteam> all = enumerate_models(sig, 4);
    FormulaOptions options;
    options.max_depth = 4;
    options.sugar_rels = true;
    for (int i = 0; i < 300 && !fail.any; ++i) {
        PcoPtr phi = expand_sugar(random_pco(rng, *sig, options), sig.get());
        PcoPtr negated = compile_cneg(phi, *sig);
        for (size_t j = 0; j < all.size(); j += 7) {
            const CausalMultiteam& m = all[j];
            if (m.empty()) continue;
            ++result.cases;
            bool value = holds(m, phi);
            bool opposite = holds(m, negated);
            if (value == opposite) {
                fail.note("negation does not flip " + print(phi));
                break;
            }
        }
    }
    result.passed = !fail.any;
    result.detail = fail.first;
    return result;
}

CheckResult check_mixed_statements(const SuiteConfig& config) {
    CheckResult result;
    result.name = "mixed-statements";
    Failure fail;
    Rng rng(config.seed ^ 0x6b);
    SigPtr sig = suite_bin_sig();
    std::vector<CausalMultiteam> all = enumerate_models(sig, 4);

    auto direct_prob = [](const CausalMultiteam& m, const CoPtr& alpha) {
        Count hit = 0, total = 0;
        for (const auto& [row, n] : m.team().counts) {
            total += n;
            if (eval_single(row, m.laws(), m.sig(), alpha)) hit += n;
        }
        return std::pair<Count, Count>(hit, total);
    };

    for (int i = 0; i < 100; ++i) {
        const CausalMultiteam& m = all[static_cast<size_t>(rng.below(static_cast<int>(all.size())))];
        CoPtr gamma = random_co(rng, *sig, 2);
        CoPtr alpha = random_co(rng, *sig, 2);
        std::vector<VarVal> pairs = random_pairs(rng, *sig, 2);
        Rational eps = Rational(rng.below(5), 4);

        PcoPtr atom = pco_pr_const(alpha, Rel::Ge, eps);
        bool do_verdict = holds(m, pco_cf(pairs, pco_sup(gamma, atom)));
        bool pearl_verdict = holds(m, pco_sup(gamma, pco_cf(pairs, atom)));

        // direct counting for the do-expression reading
        CausalMultiteam intervened = intervene(m, pairs);
        CausalMultiteam observed = restrict_by(intervened, gamma);
        bool do_direct = true;
        if (!observed.empty()) {
            auto [hit, total] = direct_prob(observed, alpha);
            do_direct = Rational(hit, total) >= eps;
        }

        // direct counting for the counterfactual reading: count rows whose
        // forced copy satisfies alpha among the gamma rows
        bool pearl_direct = true;
        {
            Count gamma_rows = 0, both = 0;
            CoPtr forced = co_cf(pairs, alpha);
            for (const auto& [row, n] : m.team().counts) {
                if (!eval_single(row, m.laws(), m.sig(), gamma)) continue;
                gamma_rows += n;
                if (eval_single(row, m.laws(), m.sig(), forced)) both += n;
            }
            if (gamma_rows > 0) pearl_direct = Rational(both, gamma_rows) >= eps;
        }

        result.cases += 2;
        if (do_verdict != do_direct) {
            fail.note("do-expression verdict mismatch on " + print(pco_cf(pairs, pco_sup(gamma, atom))));
            break;
        }
        if (pearl_verdict != pearl_direct) {
            fail.note("counterfactual verdict mismatch on " + print(pco_sup(gamma, pco_cf(pairs, atom))));
            break;
        }
    }
    result.passed = !fail.any;
    result.detail = fail.first;
    return result;
}

CheckResult check_sem_bridge_roundtrip(const SuiteConfig& config) {
    CheckResult result;
    result.name = "sem-bridge-roundtrip";
    Failure fail;
    Rng rng(config.seed ^ 0x5e);
    for (int i = 0; i < 50 && !fail.any; ++i) {
        SigPtr sig = random_signature(rng, 3, 3);
        FunctionComponent laws = random_laws(rng, *sig);
        CausalMultiteam m = random_model(rng, sig, laws, 1 + rng.below(5));
        if (m.empty()) continue;

        Sem sem = multiteam_to_sem(m);
        CausalMultiteam back = sem_to_multiteam(sem);
        ++result.cases;
        if (canonical(back) != canonical(m)) {
            fail.note("round trip through the SEM changed the model");
            break;
        }
        for (int v = 0; v < sig->var_count() && !fail.any; ++v)
            for (int val = 0; val < sig->range_size(v) && !fail.any; ++val) {
                VarVal single{sig->var_name(v), sig->value_name(v, val)};
                ++result.cases;
                if (joint_prob(sem, {single}) != prob(m, co_eq(single.var, single.value))) {
                    fail.note("joint distribution disagrees on a single event");
                    break;
                }
                for (int w = v + 1; w < sig->var_count() && !fail.any; ++w)
                    for (int val2 = 0; val2 < sig->range_size(w); ++val2) {
                        VarVal other{sig->var_name(w), sig->value_name(w, val2)};
                        ++result.cases;
                        Rational lhs = joint_prob(sem, {single, other});
                        Rational rhs = prob(m, co_and(co_eq(single.var, single.value),
                                                      co_eq(other.var, other.value)));
                        if (lhs != rhs) {
                            fail.note("joint distribution disagrees on a pair event");
                            break;
                        }
                    }
            }
    }
    result.passed = !fail.any;
    result.detail = fail.first;
    return result;
}

CheckResult check_rescaling_invariance(const SuiteConfig& config) {
    CheckResult result;
    result.name = "rescaling-invariance";
    Failure fail;
    Rng rng(config.seed ^ 0x11);
    SigPtr sig = suite_bin_sig();
    std::vector<CausalMultiteam> all = enumerate_models(sig, 4);
    FormulaOptions options;
    options.max_depth = 4;
    options.sugar_rels = true;
    for (int i = 0; i < 200 && !fail.any; ++i) {
        PcoPtr phi = random_pco(rng, *sig, options);
        const CausalMultiteam& m =
            all[static_cast<size_t>(rng.below(static_cast<int>(all.size())))];
        bool base = holds(m, phi);
        for (Count n : {2, 3, 5}) {
            ++result.cases;
            if (holds(scale(m, n), phi) != base) {
                fail.note("rescaling by " + std::to_string(n) + " flips " + print(phi));
                break;
            }
        }
    }
    result.passed = !fail.any;
    result.detail = fail.first;
    return result;
}

CheckResult check_rescaling_commutation(const SuiteConfig& config) {
    CheckResult result;
    result.name = "rescaling-commutation";
    Failure fail;
    Rng rng(config.seed ^ 0x37);
    SigPtr sig = suite_bin_sig();
    std::vector<CausalMultiteam> all = enumerate_models(sig, 4);
    for (int i = 0; i < 100 && !fail.any; ++i) {
        const CausalMultiteam& m =
            all[static_cast<size_t>(rng.below(static_cast<int>(all.size())))];
        std::vector<VarVal> pairs = random_pairs(rng, *sig, 2);
        CoPtr alpha = random_co(rng, *sig, 2);
        for (Count n : {2, 3, 5}) {
            CausalMultiteam scaled = scale(m, n);
            ++result.cases;
            if (canonical(intervene(m, pairs)) != canonical(intervene(scaled, pairs))) {
                fail.note("intervention does not commute with rescaling");
                break;
            }
            CausalMultiteam r1 = restrict_by(m, alpha);
            CausalMultiteam r2 = restrict_by(scaled, alpha);
            ++result.cases;
            bool ok = (r1.empty() && r2.empty()) || (!r1.empty() && !r2.empty() && is_rescaling(r1, r2));
            if (!ok) {
                fail.note("restriction does not commute with rescaling on " + print(alpha));
                break;
            }
        }
    }
    result.passed = !fail.any;
    result.detail = fail.first;
    return result;
}

CheckResult check_capture_lemmas(const SuiteConfig&) {
    CheckResult result;
    result.name = "capture-lemmas";
    Failure fail;
    SigPtr sig = suite_bin_sig();
    std::vector<CausalMultiteam> all = enumerate_models(sig, 4);
    std::vector<FunctionComponent> components = enumerate_components(*sig);

    for (size_t i = 0; i < all.size() && !fail.any; i += 3) {
        PcoPtr theta = theta_formula(all[i].team(), *sig);
        for (size_t j = 0; j < all.size(); j += 2) {
            ++result.cases;
            bool expectation = all[j].empty()
                                   ? true
                                   : multiteam_rescaling(all[i].team(), all[j].team());
            if (holds(all[j], theta) != expectation) {
                fail.note("distribution capture failed between two enumerated models");
                break;
            }
        }
    }

    for (const auto& comp : components) {
        if (fail.any) break;
        CoPtr phi = phi_formula(comp, *sig);
        for (size_t j = 0; j < all.size(); j += 2) {
            ++result.cases;
            bool expectation = all[j].empty() ? true : (all[j].laws() == comp);
            if (satisfies_co(all[j], phi) != expectation) {
                fail.note("law capture failed for a component");
                break;
            }
        }
    }

    result.passed = !fail.any;
    result.detail = fail.first;
    return result;
}

CheckResult check_theta_k_counterexample(const SuiteConfig&) {
    CheckResult result;
    result.name = "theta-k-counterexample";
    Failure fail;
    SigPtr sig = suite_bin_sig();
    Multiteam single;
    single.add({0, 0}, 1);
    CausalMultiteam one = CausalMultiteam::create(sig, std::move(single), FunctionComponent{});
    PcoPtr three = theta_k_formula(3);
    if (holds(one, three)) fail.note("a single row should not split three ways");
    if (!holds(scale(one, 3), three))
        fail.note("the threefold rescaling should split three ways");
    if (holds(CausalMultiteam::unchecked(sig, Multiteam{}, FunctionComponent{}), pco_ne()))
        fail.note("the empty model should falsify the nonemptiness atom");
    result.cases = 3;
    result.passed = !fail.any;
    result.detail = fail.first;
    return result;
}

CheckResult check_definability_random_classes(const SuiteConfig& config) {
    CheckResult result;
    result.name = "definability-random-classes";
    Failure fail;
    Rng rng(config.seed ^ 0xd2);
    SigPtr sig = suite_bin_sig();
    std::vector<CausalMultiteam> all = enumerate_models(sig, 4);
    for (int i = 0; i < 10 && !fail.any; ++i) {
        std::vector<CausalMultiteam> members;
        int want = 1 + rng.below(3);
        while (static_cast<int>(members.size()) < want) {
            const CausalMultiteam& candidate =
                all[static_cast<size_t>(rng.below(static_cast<int>(all.size())))];
            members.push_back(candidate);
        }
        FiniteClass k(std::move(members));
        DefinabilityReport report = check_definability(k, 6);
        result.cases += static_cast<long long>(report.models_checked);
        if (!report.exact_match)
            fail.note("class " + std::to_string(i) + ": " +
                      (report.mismatches.empty() ? "mismatch" : report.mismatches.front()));
    }
    result.passed = !fail.any;
    result.detail = fail.first;
    return result;
}

CheckResult check_transfer_support(const SuiteConfig& config) {
    CheckResult result;
    result.name = "transfer-support";
    Failure fail;
    Rng rng(config.seed ^ 0x71);
    SigPtr sig = suite_bin_sig();
    std::vector<CausalMultiteam> all = enumerate_models(sig, 4);
    FormulaOptions options;
    options.max_depth = 4;
    options.prob_atoms = false;  // probability-free fragment only
    for (int i = 0; i < 200 && !fail.any; ++i) {
        PcoPtr phi = random_pco(rng, *sig, options);
        const CausalMultiteam& m =
            all[static_cast<size_t>(rng.below(static_cast<int>(all.size())))];
        Multiteam flattened;
        for (const auto& [row, n] : m.team().counts) {
            (void)n;
            flattened.add(row, 1);
        }
        CausalMultiteam support_model =
            CausalMultiteam::unchecked(m.sig_ptr(), std::move(flattened), m.laws());
        ++result.cases;
        if (holds(m, phi) != holds(support_model, phi)) {
            fail.note("multiplicities changed a probability-free verdict: " + print(phi));
            break;
        }
    }
    result.passed = !fail.any;
    result.detail = fail.first;
    return result;
}

CheckResult check_probability_space(const SuiteConfig& config) {
    CheckResult result;
    result.name = "probability-space";
    Failure fail;
    Rng rng(config.seed ^ 0xa8);
    SigPtr sig = suite_bin_sig();
    std::vector<CausalMultiteam> all = enumerate_models(sig, 4);
    for (int i = 0; i < 200 && !fail.any; ++i) {
        const CausalMultiteam& m =
            all[static_cast<size_t>(rng.below(static_cast<int>(all.size())))];
        if (m.empty()) continue;
        CoPtr alpha = random_co(rng, *sig, 3);
        CoPtr beta = random_co(rng, *sig, 3);
        result.cases += 3;
        if (prob(m, co_top()) != Rational(1)) {
            fail.note("the sure event must have probability one");
            break;
        }
        Rational lhs = prob(m, co_sup(alpha, co_bot_expanded(*sig)));
        if (prob(m, alpha) + lhs != Rational(1)) {
            fail.note("complement rule failed for " + print(alpha));
            break;
        }
        if (restrict_by(restrict_by(m, alpha), beta).empty()) {
            if (prob(m, co_or(alpha, beta)) != prob(m, alpha) + prob(m, beta)) {
                fail.note("additivity failed for disjoint events");
                break;
            }
        }
    }
    result.passed = !fail.any;
    result.detail = fail.first;
    return result;
}

CheckResult check_material_implication(const SuiteConfig& config) {
    CheckResult result;
    result.name = "material-implication";
    Failure fail;
    Rng rng(config.seed ^ 0x44);
    SigPtr sig = suite_bin_sig();
    std::vector<CausalMultiteam> all = enumerate_models(sig, 4);
    FormulaOptions options;
    options.max_depth = 3;
    for (int i = 0; i < 200 && !fail.any; ++i) {
        PcoPtr psi = random_pco(rng, *sig, options);
        PcoPtr chi = random_pco(rng, *sig, options);
        PcoPtr imp = expand_sugar(pco_mat_imp(psi, chi), sig.get());
        const CausalMultiteam& m =
            all[static_cast<size_t>(rng.below(static_cast<int>(all.size())))];
        if (m.empty()) continue;
        ++result.cases;
        if (holds(m, imp) != (!holds(m, psi) || holds(m, chi))) {
            fail.note("material implication truth table failed");
            break;
        }
    }
    result.passed = !fail.any;
    result.detail = fail.first;
    return result;
}

using CheckFn = CheckResult (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
    static const std::vector<std::pair<std::string, CheckFn>> checks = {
        {"worked-examples", check_worked_examples},
        {"flatness-exhaustive", check_flatness_exhaustive},
        {"empty-team-random", check_empty_team_random},
        {"normal-form-equivalence", check_normal_form_equivalence},
        {"cneg-contradictoriness", check_cneg_contradictoriness},
        {"mixed-statements", check_mixed_statements},
        {"sem-bridge-roundtrip", check_sem_bridge_roundtrip},
        {"rescaling-invariance", check_rescaling_invariance},
        {"rescaling-commutation", check_rescaling_commutation},
        {"capture-lemmas", check_capture_lemmas},
        {"theta-k-counterexample", check_theta_k_counterexample},
        {"definability-random-classes", check_definability_random_classes},
        {"transfer-support", check_transfer_support},
        {"probability-space", check_probability_space},
        {"material-implication", check_material_implication},
    };
    return checks;
}

} // namespace

std::vector<std::string> suite_check_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) {
        (void)fn;
        names.push_back(name);
    }
    return names;
}

CheckResult run_check(const std::string& name, const SuiteConfig& config) {
    for (const auto& [known, fn] : registry()) {
        if (known != name) continue;
        auto start = Clock::now();
        CheckResult result = fn(config);
        result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return result;
    }
    throw Error("unknown check '" + name + "'");
}

std::vector<CheckResult> run_suite(const SuiteConfig& config) {
    std::vector<CheckResult> results;
    for (const auto& [name, fn] : registry()) {
        (void)fn;
        results.push_back(run_check(name, config));
    }
    return results;
}

} // namespace cmt
