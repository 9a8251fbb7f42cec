#include "cmt/semantics.hpp"

#include "cmt/generators.hpp"
#include "cmt/parser.hpp"
#include "cmt/sugar.hpp"
#include "fixtures.hpp"

#include <doctest.h>

using namespace cmt;
using namespace fixtures;

namespace {

CoPtr co(const CausalMultiteam& m, const std::string& text) {
    return parse_co(text, &m.sig());
}

PcoPtr pco(const CausalMultiteam& m, const std::string& text) {
    return parse_pco(text, &m.sig());
}

bool check(const CausalMultiteam& m, const std::string& text) {
    return holds(m, parse(text, &m.sig()));
}

} // namespace

TEST_CASE("restriction keeps exactly the satisfying rows") {
    CausalMultiteam coin = coin_model();
    CausalMultiteam two = restrict_by(coin, co(coin, "X=tails"));
    CHECK(two.cardinality() == 2);
    CHECK(support(two).size() == 2);

    CausalMultiteam same = restrict_by(coin, co(coin, "top"));
    CHECK(same.team() == coin.team());

    CausalMultiteam inc = inc_model();
    CausalMultiteam y2 = restrict_by(inc, co(inc, "Y=2"));
    REQUIRE(y2.team().counts.size() == 1);
    CHECK(y2.team().counts.begin()->second == 2);
    CHECK(y2.team().counts.begin()->first == row_of(inc.sig(), {{"X", "1"}, {"Y", "2"}}));
}

TEST_CASE("intervening forces a value and recomputes downstream laws") {
    CausalMultiteam inc = inc_model();
    CausalMultiteam forced = intervene(inc, {{"X", "0"}});
    CHECK(forced.cardinality() == 6);
    REQUIRE(forced.team().counts.size() == 1);
    CHECK(forced.team().counts.begin()->first == row_of(inc.sig(), {{"X", "0"}, {"Y", "1"}}));
    CHECK(forced.laws() == inc.laws());  // Y keeps its law

    // forcing an endogenous variable makes it exogenous
    CausalMultiteam freed = intervene(inc, {{"Y", "3"}});
    CHECK(freed.laws().functions.empty());
    CHECK(freed.cardinality() == 6);
    Multiteam expected;
    expected.add(row_of(inc.sig(), {{"X", "0"}, {"Y", "3"}}), 1);
    expected.add(row_of(inc.sig(), {{"X", "1"}, {"Y", "3"}}), 2);
    expected.add(row_of(inc.sig(), {{"X", "2"}, {"Y", "3"}}), 3);
    CHECK(freed.team() == expected);

    // forcing the value a constant column already has changes nothing
    CausalMultiteam coin = coin_model();
    CausalMultiteam heads = restrict_by(coin, co(coin, "X=heads"));
    CHECK(intervene(heads, {{"X", "heads"}}).team() == heads.team());

    CHECK_THROWS_AS(intervene(inc, {{"X", "0"}, {"X", "1"}}), InconsistentIntervention);
    CHECK_THROWS_AS(intervene(inc, {{"X", "9"}}), RangeError);
}

TEST_CASE("interventions preserve cardinality") {
    for (const auto& m : {inc_model(), coin_model(), s3_model(), mirror_model()}) {
        for (int v = 0; v < m.sig().var_count(); ++v) {
            for (const auto& value : m.sig().range(v)) {
                CausalMultiteam moved = intervene(m, {{m.sig().var_name(v), value}});
                CHECK(moved.cardinality() == m.cardinality());
            }
        }
    }
}

TEST_CASE("probabilities count rows") {
    CausalMultiteam s3 = s3_model();
    CHECK(prob(s3, co(s3, "Y=0")) == Rational(2, 3));

    CausalMultiteam coin = coin_model();
    CHECK(prob(coin, co(coin, "X=heads | Y=tails")) == Rational(3, 4));
    CHECK(prob(coin, co(coin, "top")) == Rational(1));
    CHECK(prob(inc_model(), co(inc_model(), "top")) == Rational(1));

    CHECK_THROWS_AS(prob(empty_model(bin_sig()), co_top()), EmptyModel);
}

TEST_CASE("conditional probabilities divide by the condition") {
    CausalMultiteam coin = coin_model();
    CHECK(*cond_prob(coin, co(coin, "Y=tails"), co(coin, "X=tails")) == Rational(1, 2));
    CHECK(*cond_prob(coin, co(coin, "Y=tails"), co(coin, "top")) ==
          prob(coin, co(coin, "Y=tails")));
    CHECK(!cond_prob(coin, co(coin, "Y=tails"), co(coin, "X=tails & X=heads")).has_value());
    CHECK_THROWS_AS(parse("Pr(Y=tails | X=1) >= 0", &coin.sig()), ValueNotInRange);
}

TEST_CASE("the two fair coins judge the running statements correctly") {
    CausalMultiteam coin = coin_model();
    CHECK(check(coin, "Pr(X=heads) == 1/2 \\/ Pr(Y=tails) == 1/2"));
    CHECK(check(coin, "Pr((X=heads | Y=tails)) == 3/4"));
    CHECK(check(coin, "Pr(X=tails) <= 1/2"));

    // not downward closed: the restriction makes X=tails certain
    CausalMultiteam tails = restrict_by(coin, co(coin, "X=tails"));
    CHECK_FALSE(check(tails, "Pr(X=tails) <= 1/2"));

    CHECK(check(coin, "Pr(X=heads | Y=tails) >= 1/2"));
    CHECK_FALSE(check(coin, "Pr(X=heads | Y=tails) >= 3/4"));
}

TEST_CASE("the empty model satisfies every statement") {
    CausalMultiteam none = empty_model(bin_sig());
    const char* statements[] = {
        "bot",
        "X=1",
        "Pr(X=1) > 1/2",
        "Pr(X=1) == 1/3 \\/ Pr(Y=0) != 0",
        "X=1 ~> Pr(Y=1) >= 1",
        "X=1 => Pr(Y=1) >= 1",
        "dep(X; Y)",
        "Pr(X=1 | Y=1) > 0",
        "cneg(Pr(X=1) >= 1/2)",
        "Pr(X=1) >= 1/2 -> Pr(Y=1) >= 1/2",
    };
    for (const char* text : statements) {
        CAPTURE(text);
        CHECK(check(none, text));
    }
    // the nonemptiness atom is the exception by design
    CHECK_FALSE(check(none, "NE"));
}

TEST_CASE("flatness: event truth is rowwise truth") {
    CausalMultiteam inc = inc_model();
    const char* events[] = {"X=1 | Y=2", "X=0 => Y=1", "X=2 ~> Y=3", "Y!=1 & X!=0"};
    for (const char* text : events) {
        CAPTURE(text);
        CoPtr alpha = co(inc, text);
        bool whole = satisfies_co(inc, alpha);
        bool rowwise = true;
        for (const auto& row : support(inc))
            rowwise = rowwise && eval_single(row, inc.laws(), inc.sig(), alpha);
        CHECK(whole == rowwise);
    }
}

TEST_CASE("dual negation on singletons flips the verdict") {
    // exhaustive over all rows of all lawless two-variable binary models
    SigPtr sig = bin_sig();
    const char* events[] = {"X=1", "X!=1", "X=1 & Y=0", "X=0 => Y=1", "X=1 ~> Y=1",
                            "Y=0 & (X=1 => Y=1)"};
    for (const char* text : events) {
        CoPtr alpha = parse_co(text, sig.get());
        CoPtr negated = co_sup(alpha, co_bot_expanded(*sig));
        for (int x = 0; x <= 1; ++x)
            for (int y = 0; y <= 1; ++y) {
                Multiteam team;
                team.add({x, y}, 1);
                CausalMultiteam single =
                    CausalMultiteam::create(sig, std::move(team), FunctionComponent{});
                CAPTURE(text); CAPTURE(x); CAPTURE(y);
                CHECK(satisfies_co(single, negated) == !satisfies_co(single, alpha));
            }
    }
}

TEST_CASE("probability atoms on restrictions and interventions") {
    CausalMultiteam inc = inc_model();
    CHECK(check(inc, "X=0 ~> Pr(Y=1) >= 1"));
    CHECK(check(inc, "Y=2 => Pr(X=1) >= 1"));
    CHECK(check(inc, "Pr(Y=3) == 1/2"));
    CHECK(check(inc, "X=1 & X=2 ~> Pr(Y=1) >= 1"));  // inconsistent antecedent
    CHECK_FALSE(check(inc, "Pr(Y=3) > 1/2"));
}

TEST_CASE("liberal probability atoms on the empty model") {
    CausalMultiteam none = empty_model(bin_sig());
    CHECK(check(none, "Pr*(X=1) >= 1/2"));
    CHECK(check(none, "Pr*(X=1) <= 1"));
    CHECK_FALSE(check(none, "Pr*(X=1) <= 1/2"));
    CHECK(check(none, "Pr*(X=1) > 1/2"));
    CHECK_FALSE(check(none, "Pr*(X=1) > 1"));
    CHECK_FALSE(check(none, "Pr*(X=1) < 1"));
    // on nonempty models they are plain probability atoms
    CausalMultiteam s3 = s3_model();
    CHECK(check(s3, "Pr*(Y=0) >= 2/3"));
    CHECK_FALSE(check(s3, "Pr*(Y=0) < 1/2"));
}

TEST_CASE("strict splitting needs genuinely disjoint parts") {
    CausalMultiteam s3 = s3_model();  // rows (0,0)x2, (0,1)x1
    CHECK(check(s3, "Pr(Y=0) == 1 <|> Pr(Y=1) == 1"));
    CHECK(check(s3, "NE <|> NE <|> NE"));
    CHECK_FALSE(check(s3, "NE <|> NE <|> NE <|> NE"));
    // no split of the coins makes both halves all-heads
    CausalMultiteam coin = coin_model();
    CHECK_FALSE(check(coin, "Pr(X=heads) == 1 <|> Pr(X=heads) == 1"));
    CHECK(check(coin, "Pr(X=heads) == 1 <|> Pr(X=tails) == 1"));
}

TEST_CASE("nonemptiness atom is satisfied exactly by nonempty models") {
    CHECK(check(s3_model(), "NE"));
    CHECK(check(coin_model(), "NE"));
    CHECK_FALSE(check(empty_model(bin_sig()), "NE"));
}

TEST_CASE("probability space laws on the definable events") {
    for (const auto& m : {coin_model(), s3_model(), mirror_model()}) {
        const Signature& sig = m.sig();
        CHECK(prob(m, co_top()) == Rational(1));
        CoPtr x_first = co_eq(sig.var_name(0), sig.range(0)[0]);
        CoPtr x_second = co_eq(sig.var_name(0), sig.range(0)[1]);
        CoPtr y_first = co_eq(sig.var_name(1), sig.range(1)[0]);
        CoPtr y_second = co_eq(sig.var_name(1), sig.range(1)[1]);
        // complement rule through the dual negation
        for (const CoPtr& alpha : {x_first, co_and(x_first, y_second), co_or(x_first, y_second)}) {
            CoPtr negated = co_sup(alpha, co_bot_expanded(sig));
            CHECK(prob(m, alpha) + prob(m, negated) == Rational(1));
        }
        // additivity over disjoint events
        CoPtr left = co_and(x_first, y_first);
        CoPtr right = co_and(x_second, y_second);
        CHECK(restrict_by(restrict_by(m, left), right).empty());
        CHECK(prob(m, co_or(left, right)) == prob(m, left) + prob(m, right));
    }
}

TEST_CASE("mixed statements distinguish observation order") {
    CausalMultiteam m = mirror_model();
    CoPtr gamma = parse_co("Y=0", &m.sig());
    CoPtr alpha = parse_co("Y=1", &m.sig());

    // intervening first wipes out the Y=0 rows, so the condition is void
    MixedReport at_one = satisfies_mixed(m, gamma, {{"X", "1"}}, alpha, Rel::Ge, Rational(1));
    CHECK(at_one.do_form);
    CHECK(at_one.pearl_form);
    CHECK(!at_one.prob_do.has_value());
    REQUIRE(at_one.prob_pearl.has_value());
    CHECK(*at_one.prob_pearl == Rational(1));

    // asking for probability exactly 0 separates the two readings
    MixedReport at_zero = satisfies_mixed(m, gamma, {{"X", "1"}}, alpha, Rel::Eq, Rational(0));
    CHECK(at_zero.do_form);
    CHECK_FALSE(at_zero.pearl_form);
}

TEST_CASE("mixed statements agree when the condition is vacuous") {
    CausalMultiteam m = mirror_model();
    CoPtr top = parse_co("top", &m.sig());
    CoPtr alpha = parse_co("Y=1", &m.sig());
    for (const auto& eps : {Rational(0), Rational(1, 2), Rational(1)}) {
        MixedReport r = satisfies_mixed(m, top, {{"X", "1"}}, alpha, Rel::Ge, eps);
        bool plain = holds(m, pco_cf({{"X", "1"}}, pco_pr_const(alpha, Rel::Ge, eps)));
        CHECK(r.do_form == plain);
        CHECK(r.pearl_form == plain);
    }
}

TEST_CASE("mixed statements agree on untouched exogenous conditions") {
    // two independent exogenous variables; intervening on X cannot move Y
    CausalMultiteam coin = coin_model();
    CoPtr gamma = parse_co("Y=tails", &coin.sig());
    CoPtr alpha = parse_co("Y=tails", &coin.sig());
    for (const auto& eps : {Rational(1, 2), Rational(1)}) {
        MixedReport r = satisfies_mixed(coin, gamma, {{"X", "heads"}}, alpha, Rel::Ge, eps);
        CHECK(r.do_form == r.pearl_form);
        REQUIRE(r.prob_do.has_value());
        REQUIRE(r.prob_pearl.has_value());
        CHECK(*r.prob_do == *r.prob_pearl);
    }
}

TEST_CASE("traces reproduce the verdict clause by clause") {
    CausalMultiteam coin = coin_model();
    PcoPtr f = pco(coin, "Pr(X=heads) == 1/2 \\/ Pr(Y=tails) == 1/2");
    EvalResult r = satisfies(coin, f, true);
    CHECK(r.verdict);
    REQUIRE(r.trace);
    // a disjunction trace is vouched for by some true child
    bool any_child = false;
    for (const auto& kid : r.trace->children) any_child = any_child || kid->verdict;
    CHECK(any_child == r.trace->verdict);

    PcoPtr g = pco(coin, "X=heads => Pr(X=heads) >= 1");
    EvalResult rg = satisfies(coin, g, true);
    CHECK(rg.verdict);
    REQUIRE(rg.trace);
    REQUIRE(rg.trace->children.size() == 1);
    CHECK(rg.trace->children[0]->verdict == rg.trace->verdict);
}

TEST_CASE("conditioning equals observing then measuring") {
    // two routes to a conditional probability statement: the native ratio
    // and the selective-implication rewriting
    std::vector<std::pair<const char*, const char*>> pairs = {
        {"Y=1", "X=0"}, {"X=1 | Y=0", "Y=1"}, {"Y=0", "X=0 & Y=0"}, {"X=0", "top"}};
    std::vector<CausalMultiteam> models = {s3_model(), mirror_model(), empty_model(bin_sig())};
    for (auto& pair : pairs) {
        const char* alpha_text = pair.first;
        const char* gamma_text = pair.second;
        for (const auto& m : models) {
            CoPtr alpha = parse_co(alpha_text, &m.sig());
            CoPtr gamma = parse_co(gamma_text, &m.sig());
            for (Rel rel : {Rel::Ge, Rel::Gt, Rel::Le, Rel::Lt, Rel::Eq, Rel::Ne}) {
                for (const auto& eps : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)}) {
                    bool native;
                    if (m.empty()) {
                        native = true;
                    } else {
                        auto ratio = cond_prob(m, alpha, gamma);
                        if (!ratio) {
                            native = true;
                        } else {
                            switch (rel) {
                                case Rel::Ge: native = *ratio >= eps; break;
                                case Rel::Gt: native = *ratio > eps; break;
                                case Rel::Le: native = *ratio <= eps; break;
                                case Rel::Lt: native = *ratio < eps; break;
                                case Rel::Eq: native = *ratio == eps; break;
                                case Rel::Ne: native = *ratio != eps; break;
                            }
                        }
                    }
                    CAPTURE(alpha_text); CAPTURE(gamma_text); CAPTURE(eps.str());
                    bool rewritten = holds(m, pco_cond_pr_const(alpha, gamma, rel, eps));
                    CHECK(native == rewritten);
                }
            }
        }
    }
}

TEST_CASE("flat evaluation agrees with the statement reading of events") {
    SigPtr sig = bin_sig();
    Rng rng(777);
    std::vector<CausalMultiteam> models = {s3_model(), mirror_model(), empty_model(bin_sig())};
    int embedded = 0;
    for (int i = 0; i < 400; ++i) {
        CoPtr alpha = random_co(rng, *sig, 4);
        auto as_statement = co_to_pco(alpha);
        if (!as_statement) continue;  // tensor outside antecedents: event-only
        ++embedded;
        for (const auto& m : models) {
            CAPTURE(i);
            CHECK(satisfies_co(m, alpha) == holds(m, *as_statement));
        }
    }
    CHECK(embedded > 50);
}
