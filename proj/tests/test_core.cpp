#include "cmt/core.hpp"

#include "fixtures.hpp"

#include <doctest.h>

using namespace cmt;
using namespace fixtures;

TEST_CASE("a compatible table with laws validates") {
    CausalMultiteam inc = inc_model();
    CHECK(inc.cardinality() == 6);
    CHECK(inc.endogenous() == std::vector<int>{1});
    CHECK(inc.exogenous() == std::vector<int>{0});
}

TEST_CASE("an incompatible row is rejected at the right variable") {
    SigPtr sig = inc_sig();
    Multiteam team;
    team.add(row_of(*sig, {{"X", "0"}, {"Y", "2"}}), 1);
    FunctionComponent laws;
    laws.functions.emplace(1, table_fn(*sig, "Y", {"X"}, {"1", "2", "3"}));
    CHECK_THROWS_AS(CausalMultiteam::create(sig, team, laws), CompatibilityViolation);
    try {
        CausalMultiteam::create(sig, team, laws);
    } catch (const CompatibilityViolation& e) {
        CHECK(e.variable == "Y");
    }
}

TEST_CASE("an empty row set validates against any laws") {
    SigPtr sig = inc_sig();
    FunctionComponent laws;
    laws.functions.emplace(1, table_fn(*sig, "Y", {"X"}, {"1", "2", "3"}));
    CausalMultiteam m = CausalMultiteam::create(sig, Multiteam{}, laws);
    CHECK(m.empty());
}

TEST_CASE("constant laws are rejected") {
    SigPtr sig = bin_sig();
    FunctionComponent laws;
    laws.functions.emplace(1, table_fn(*sig, "Y", {"X"}, {"0", "0"}));
    CHECK_THROWS_AS(CausalMultiteam::create(sig, Multiteam{}, laws), ConstantFunction);
}

TEST_CASE("cyclic laws are rejected") {
    SigPtr sig = bin_sig();
    FunctionComponent laws;
    laws.functions.emplace(0, table_fn(*sig, "X", {"Y"}, {"0", "1"}));
    laws.functions.emplace(1, table_fn(*sig, "Y", {"X"}, {"0", "1"}));
    CHECK_THROWS_AS(CausalMultiteam::create(sig, Multiteam{}, laws), CyclicGraph);
}

TEST_CASE("out-of-range rows are rejected") {
    SigPtr sig = bin_sig();
    Multiteam team;
    team.add({0, 7}, 1);
    CHECK_THROWS_AS(CausalMultiteam::create(sig, team, FunctionComponent{}), RangeError);
}

TEST_CASE("revalidating an accepted model is quiet") {
    CausalMultiteam inc = inc_model();
    CHECK_NOTHROW(CausalMultiteam::create(inc.sig_ptr(), inc.team(), inc.laws()));
}

TEST_CASE("dummy arguments are dropped") {
    SigPtr sig = make_sig({{"X", {"0", "1", "2"}}, {"Z", {"0", "1"}}, {"Y", {"1", "2", "3"}}});
    // Y listed as depending on X and Z, but the table ignores Z
    CausalFunction f = table_fn(*sig, "Y", {"X", "Z"}, {"1", "1", "2", "2", "3", "3"});
    CausalFunction min = minimize_parents(f, *sig);
    CHECK(min.args == std::vector<int>{0});
    CHECK(min.table == std::vector<int>{0, 1, 2});
}

TEST_CASE("minimizing a minimal law changes nothing") {
    SigPtr sig = inc_sig();
    CausalFunction f = table_fn(*sig, "Y", {"X"}, {"1", "2", "3"});
    CausalFunction min = minimize_parents(f, *sig);
    CHECK(min == f);
    CHECK(minimize_parents(min, *sig) == min);
}

TEST_CASE("both inputs of an exclusive-or law are kept") {
    SigPtr sig = make_sig({{"A", {"0", "1"}}, {"B", {"0", "1"}}, {"C", {"0", "1"}}});
    CausalFunction f = table_fn(*sig, "C", {"A", "B"}, {"0", "1", "1", "0"});
    CausalFunction min = minimize_parents(f, *sig);
    CHECK(min.args == std::vector<int>{0, 1});
    CHECK(min.table == f.table);
}

TEST_CASE("minimization preserves the computed value on every tuple") {
    SigPtr sig = make_sig({{"X", {"0", "1", "2"}}, {"Z", {"0", "1"}}, {"Y", {"1", "2", "3"}}});
    CausalFunction f = table_fn(*sig, "Y", {"X", "Z"}, {"1", "1", "2", "2", "3", "3"});
    CausalFunction min = minimize_parents(f, *sig);
    std::vector<int> radices{3, 2, 3};
    Assignment row{0, 0, 0};
    do {
        CHECK(f.apply_full(row, *sig) == min.apply_full(row, *sig));
    } while (next_tuple(row, radices));
}

TEST_CASE("the causal graph lists minimized parent edges in dom order") {
    CHECK(causal_graph(inc_model()).edges ==
          std::vector<std::pair<int, int>>{{0, 1}});
    CHECK(causal_graph(coin_model()).edges.empty());

    // chain: Y := X, Z := Y
    SigPtr sig = make_sig({{"X", {"0", "1"}}, {"Y", {"0", "1"}}, {"Z", {"0", "1"}}});
    FunctionComponent laws;
    laws.functions.emplace(1, table_fn(*sig, "Y", {"X"}, {"0", "1"}));
    laws.functions.emplace(2, table_fn(*sig, "Z", {"Y"}, {"0", "1"}));
    CausalMultiteam chain = CausalMultiteam::create(sig, Multiteam{}, laws);
    CHECK(causal_graph(chain).edges ==
          std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    CHECK_NOTHROW(topological_order(chain.laws(), *sig));
}

TEST_CASE("support lists distinct rows") {
    CausalMultiteam inc = inc_model();
    std::vector<Assignment> s = support(inc);
    CHECK(s.size() == 3);
    CHECK(s == std::vector<Assignment>{{0, 0}, {1, 1}, {2, 2}});
    CHECK(support(empty_model(bin_sig())).empty());
    CHECK(support(coin_model()).size() == 4);
    CHECK(static_cast<Count>(s.size()) <= inc.cardinality());
}

TEST_CASE("tolerant compatibility against measured values") {
    // measurements scatter around Y = X + 1 by at most 0.02
    SigPtr sig = make_sig({{"X", {"0", "1", "2"}},
                           {"Y", {"1", "2", "3", "1.02", "2.01", "2.02", "3.01", "3.02"}}});
    Multiteam team;
    team.add(row_of(*sig, {{"X", "0"}, {"Y", "1.02"}}), 1);
    team.add(row_of(*sig, {{"X", "1"}, {"Y", "2.01"}}), 1);
    team.add(row_of(*sig, {{"X", "1"}, {"Y", "2.02"}}), 1);
    team.add(row_of(*sig, {{"X", "2"}, {"Y", "3.01"}}), 1);
    team.add(row_of(*sig, {{"X", "2"}, {"Y", "3.02"}}), 2);
    FunctionComponent laws;
    laws.functions.emplace(1, table_fn(*sig, "Y", {"X"}, {"1", "2", "3"}));

    auto count_all = [](const std::vector<ToleranceViolation>& vs) {
        Count total = 0;
        for (const auto& v : vs) total += v.count;
        return total;
    };

    auto loose = check_compatibility_tolerant(*sig, team, laws, Rational(1, 20));
    CHECK(loose.empty());
    auto strict = check_compatibility_tolerant(*sig, team, laws, Rational(0));
    CHECK(count_all(strict) == 6);

    CausalMultiteam inc = inc_model();
    CHECK(check_compatibility_tolerant(inc.sig(), inc.team(), inc.laws(), Rational(0)).empty());
}

TEST_CASE("tolerant check requires numeric tokens only when the tolerance is positive") {
    CausalMultiteam coin = coin_model();
    CHECK(check_compatibility_tolerant(coin.sig(), coin.team(), coin.laws(), Rational(0)).empty());

    SigPtr sig = coin_sig();
    FunctionComponent laws;
    laws.functions.emplace(1, table_fn(*sig, "Y", {"X"}, {"heads", "tails"}));
    Multiteam team;
    team.add(row_of(*sig, {{"X", "heads"}, {"Y", "heads"}}), 1);
    CHECK_THROWS_AS(check_compatibility_tolerant(*sig, team, laws, Rational(1, 10)),
                    NonNumericValue);
}
