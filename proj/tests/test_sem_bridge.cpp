#include "cmt/sem_bridge.hpp"

#include "cmt/parser.hpp"
#include "cmt/rescaling.hpp"
#include "cmt/semantics.hpp"
#include "fixtures.hpp"

#include <doctest.h>

using namespace cmt;
using namespace fixtures;

TEST_CASE("solving endogenous variables follows the laws") {
    Sem sem = multiteam_to_sem(inc_model());
    CHECK(solve_endogenous(sem, {2}) == Assignment{2, 2});  // X=2 gives Y=3

    Sem lawless = multiteam_to_sem(coin_model());
    CHECK(solve_endogenous(lawless, {0, 1}) == Assignment{0, 1});

    // identity chain X -> Y -> Z
    SigPtr sig = make_sig({{"X", {"0", "1"}}, {"Y", {"0", "1"}}, {"Z", {"0", "1"}}});
    FunctionComponent laws;
    laws.functions.emplace(1, table_fn(*sig, "Y", {"X"}, {"0", "1"}));
    laws.functions.emplace(2, table_fn(*sig, "Z", {"Y"}, {"0", "1"}));
    Sem chain = make_sem(sig, laws, {{{0}, Rational(1, 2)}, {{1}, Rational(1, 2)}});
    CHECK(solve_endogenous(chain, {1}) == Assignment{1, 1, 1});
}

TEST_CASE("the induced joint distribution marginalizes by summing weights") {
    Sem sem = multiteam_to_sem(inc_model());
    CHECK(joint_prob(sem, {{"Y", "3"}}) == Rational(1, 2));
    CHECK(joint_prob(sem, {}) == Rational(1));
    CHECK(joint_prob(sem, {{"X", "0"}, {"Y", "2"}}) == Rational(0));  // against the law
    CHECK_THROWS_AS(joint_prob(sem, {{"X", "0"}, {"X", "1"}}), ModelError);
}

TEST_CASE("a distribution realizes as the smallest counting multiteam") {
    SigPtr sig = inc_sig();
    FunctionComponent laws;
    laws.functions.emplace(1, table_fn(*sig, "Y", {"X"}, {"1", "2", "3"}));
    Sem sem = make_sem(sig, laws,
                       {{{0}, Rational(1, 6)}, {{1}, Rational(1, 3)}, {{2}, Rational(1, 2)}});
    CausalMultiteam m = sem_to_multiteam(sem);
    CHECK(m == inc_model());
    CHECK(m.cardinality() == 6);  // the lcm of the denominators

    Sem point = make_sem(bin_sig(), FunctionComponent{}, {{{1, 0}, Rational(1)}});
    CausalMultiteam single = sem_to_multiteam(point);
    CHECK(single.cardinality() == 1);
    CHECK(single.team().counts.begin()->first == Assignment{1, 0});

    Sem half = make_sem(bin_sig(), FunctionComponent{},
                        {{{0, 0}, Rational(1, 2)}, {{1, 1}, Rational(1, 2)}});
    CausalMultiteam two = sem_to_multiteam(half);
    CHECK(two.cardinality() == 2);
}

TEST_CASE("a multiteam induces its counting marginal as a distribution") {
    Sem sem = multiteam_to_sem(inc_model());
    REQUIRE(sem.exo_dist.size() == 3);
    CHECK(sem.exo_dist.at({0}) == Rational(1, 6));
    CHECK(sem.exo_dist.at({1}) == Rational(1, 3));
    CHECK(sem.exo_dist.at({2}) == Rational(1, 2));

    Sem coins = multiteam_to_sem(coin_model());
    REQUIRE(coins.exo_dist.size() == 4);
    for (const auto& [u, p] : coins.exo_dist) CHECK(p == Rational(1, 4));

    CHECK_THROWS_AS(multiteam_to_sem(empty_model(bin_sig())), EmptyModel);
}

TEST_CASE("round trip through the SEM view is a rescaling") {
    for (const auto& m : {inc_model(), coin_model(), s3_model(), mirror_model()}) {
        CausalMultiteam back = sem_to_multiteam(multiteam_to_sem(m));
        CHECK(is_rescaling(m, back));
        CHECK(canonical(back) == canonical(m));
    }
}

TEST_CASE("the joint distribution matches counting on every event") {
    for (const auto& m : {inc_model(), coin_model(), s3_model(), mirror_model()}) {
        Sem sem = multiteam_to_sem(m);
        const Signature& sig = m.sig();
        for (int v = 0; v < sig.var_count(); ++v) {
            for (const auto& value : sig.range(v)) {
                std::vector<VarVal> event{{sig.var_name(v), value}};
                CoPtr alpha = co_eq(sig.var_name(v), value);
                CHECK(joint_prob(sem, event) == prob(m, alpha));
                for (int w = v + 1; w < sig.var_count(); ++w) {
                    for (const auto& value2 : sig.range(w)) {
                        std::vector<VarVal> pair_event{{sig.var_name(v), value},
                                                       {sig.var_name(w), value2}};
                        CoPtr both =
                            co_and(alpha, co_eq(sig.var_name(w), value2));
                        CHECK(joint_prob(sem, pair_event) == prob(m, both));
                    }
                }
            }
        }
    }
}

TEST_CASE("distributions must be exact and total") {
    CHECK_THROWS_AS(make_sem(bin_sig(), FunctionComponent{}, {{{0, 0}, Rational(1, 2)}}),
                    ModelError);
    CHECK_THROWS_AS(make_sem(bin_sig(), FunctionComponent{},
                             {{{0, 0}, Rational(3, 2)}, {{1, 1}, Rational(-1, 2)}}),
                    ModelError);
}

TEST_CASE("pairwise exogenous independence is the Markov condition") {
    CHECK(markov_check(coin_model()).markovian);
    CHECK(markov_check(inc_model()).markovian);  // a single exogenous variable, no pairs

    CHECK_THROWS_AS(markov_check(empty_model(bin_sig())), EmptyModel);

    SigPtr sig = bin_sig();
    Multiteam team;
    team.add({0, 0}, 1);
    team.add({1, 1}, 1);
    CausalMultiteam coupled = CausalMultiteam::create(sig, std::move(team), FunctionComponent{});
    MarkovReport report = markov_check(coupled);
    CHECK_FALSE(report.markovian);
    REQUIRE(!report.witnesses.empty());
    // the cross pair (X=0, Y=1) never occurs yet both margins are 1/2
    bool cross_pair_listed = false;
    for (const MarkovWitness& w : report.witnesses)
        if (w.var_a == 0 && w.val_a == 0 && w.var_b == 1 && w.val_b == 1) {
            cross_pair_listed = true;
            CHECK(w.joint == Rational(0));
            CHECK(w.product == Rational(1, 4));
        }
    CHECK(cross_pair_listed);
}

TEST_CASE("realized distributions revalidate as models") {
    for (const auto& m : {inc_model(), coin_model(), s3_model(), mirror_model()}) {
        CausalMultiteam realized = sem_to_multiteam(multiteam_to_sem(m));
        CHECK_NOTHROW(
            CausalMultiteam::create(realized.sig_ptr(), realized.team(), realized.laws()));
    }
}
