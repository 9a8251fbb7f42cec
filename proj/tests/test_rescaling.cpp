#include "cmt/rescaling.hpp"

#include "cmt/enumerate.hpp"
#include "cmt/parser.hpp"
#include "cmt/printer.hpp"
#include "cmt/semantics.hpp"
#include "cmt/sugar.hpp"
#include "fixtures.hpp"

#include <doctest.h>

using namespace cmt;
using namespace fixtures;

TEST_CASE("per-assignment probabilities") {
    CausalMultiteam inc = inc_model();
    CHECK(epsilon_of(inc, row_of(inc.sig(), {{"X", "2"}, {"Y", "3"}})) == Rational(1, 2));
    CHECK(epsilon_of(inc, row_of(inc.sig(), {{"X", "0"}, {"Y", "2"}})) == Rational(0));

    Multiteam one;
    one.add({0, 0}, 1);
    CausalMultiteam single = CausalMultiteam::create(bin_sig(), std::move(one), {});
    CHECK(epsilon_of(single, {0, 0}) == Rational(1));
    CHECK_THROWS_AS(epsilon_of(empty_model(bin_sig()), {0, 0}), EmptyModel);
}

TEST_CASE("rescaling relates proportional count maps with equal laws") {
    CausalMultiteam inc = inc_model();
    CHECK(is_rescaling(inc, scale(inc, 2)));
    CHECK(is_rescaling(scale(inc, 2), inc));
    CHECK(is_rescaling(inc, inc));

    // same support, different proportions
    SigPtr sig = bin_sig();
    Multiteam a, b;
    a.add({0, 0}, 1);
    a.add({0, 1}, 1);
    b.add({0, 0}, 1);
    b.add({0, 1}, 2);
    CHECK_FALSE(is_rescaling(CausalMultiteam::create(sig, a, {}),
                             CausalMultiteam::create(sig, b, {})));

    // same distribution, different laws
    CausalMultiteam mirror = mirror_model();
    CausalMultiteam lawless =
        CausalMultiteam::create(mirror.sig_ptr(), mirror.team(), FunctionComponent{});
    CHECK_FALSE(is_rescaling(mirror, lawless));

    CHECK_THROWS_AS(is_rescaling(inc, coin_model()), SignatureMismatch);

    // an equivalence relation on every enumerated family
    std::vector<CausalMultiteam> all = enumerate_models(bin_sig(), 3);
    for (size_t i = 0; i < all.size(); i += 7)
        for (size_t j = 0; j < all.size(); j += 11)
            for (size_t k = 0; k < all.size(); k += 13) {
                bool ij = is_rescaling(all[i], all[j]);
                bool jk = is_rescaling(all[j], all[k]);
                bool ik = is_rescaling(all[i], all[k]);
                CHECK(is_rescaling(all[i], all[i]));
                CHECK(ij == is_rescaling(all[j], all[i]));
                if (ij && jk) CHECK(ik);
            }
}

TEST_CASE("scaling multiplies every count") {
    CausalMultiteam inc = inc_model();
    CHECK(scale(inc, 1) == inc);
    CausalMultiteam doubled = scale(inc, 2);
    CHECK(doubled.cardinality() == 12);
    CHECK(doubled.team().counts.at({2, 2}) == 6);
    CHECK(is_rescaling(inc, doubled));
    CHECK(scale(empty_model(bin_sig()), 5).empty());
}

TEST_CASE("common multiples take the least common cardinality") {
    SigPtr sig = bin_sig();
    Multiteam two, three;
    two.add({0, 0}, 2);
    three.add({0, 0}, 3);
    CausalMultiteam a = CausalMultiteam::create(sig, two, {});
    CausalMultiteam b = CausalMultiteam::create(sig, three, {});
    CHECK(common_multiple(a, b).cardinality() == 6);
    CHECK(common_multiple(a, a) == a);
    CausalMultiteam inc = inc_model();
    CHECK(common_multiple(inc, scale(inc, 4)) == scale(inc, 4));

    CHECK_THROWS_AS(common_multiple(a, CausalMultiteam::create(bin_sig(), Multiteam{}, {})),
                    EmptyModel);
    Multiteam other;
    other.add({0, 1}, 1);
    CHECK_THROWS_AS(common_multiple(a, CausalMultiteam::create(sig, other, {})), NotRescalings);
}

TEST_CASE("canonical models divide counts by their gcd") {
    CausalMultiteam inc = inc_model();
    CHECK(canonical(scale(inc, 2)) == inc);
    CHECK(canonical(inc) == inc);
    Multiteam fives;
    fives.add({0, 0}, 5);
    fives.add({1, 1}, 5);
    CausalMultiteam m = CausalMultiteam::create(bin_sig(), fives, {});
    CausalMultiteam reduced = canonical(m);
    CHECK(reduced.cardinality() == 2);
    CHECK(is_rescaling(m, reduced));
    CHECK(canonical(empty_model(bin_sig())).empty());
}

TEST_CASE("the distribution capture formula holds exactly on rescalings") {
    CausalMultiteam s3 = s3_model();
    PcoPtr theta = theta_formula(s3.team(), s3.sig());
    CHECK(holds(s3, theta));
    CHECK(holds(scale(s3, 3), theta));

    // same laws, different distribution
    Multiteam other;
    other.add(row_of(s3.sig(), {{"X", "0"}, {"Y", "0"}}), 1);
    other.add(row_of(s3.sig(), {{"X", "0"}, {"Y", "1"}}), 1);
    CHECK_FALSE(holds(CausalMultiteam::create(s3.sig_ptr(), other, {}), theta));

    // the empty team is captured by falsum
    PcoPtr empty_theta = theta_formula(Multiteam{}, s3.sig());
    CHECK_FALSE(holds(s3, empty_theta));
    CHECK(holds(empty_model(bin_sig()), empty_theta));

    // exhaustively: nonempty models satisfy theta exactly when team-rescaled
    // (empty models satisfy every capture formula)
    std::vector<CausalMultiteam> all = enumerate_models(bin_sig(), 3);
    for (size_t i = 0; i < all.size(); i += 5) {
        PcoPtr capture = theta_formula(all[i].team(), all[i].sig());
        for (size_t j = 0; j < all.size(); j += 3) {
            CAPTURE(i); CAPTURE(j);
            if (all[j].empty()) {
                CHECK(holds(all[j], capture));
            } else {
                CHECK(holds(all[j], capture) ==
                      multiteam_rescaling(all[i].team(), all[j].team()));
            }
        }
    }
}

TEST_CASE("the law capture formula holds exactly on equal laws") {
    CausalMultiteam inc = inc_model();
    CoPtr phi = phi_formula(inc.laws(), inc.sig());
    CHECK(satisfies_co(inc, phi));

    // different law over the same signature: Y := X+1 with a twist at 2
    SigPtr sig = inc_sig();
    FunctionComponent twisted;
    twisted.functions.emplace(1, table_fn(*sig, "Y", {"X"}, {"1", "2", "1"}));
    Multiteam rows;
    rows.add(row_of(*sig, {{"X", "0"}, {"Y", "1"}}), 1);
    CausalMultiteam other = CausalMultiteam::create(sig, rows, twisted);
    CHECK_FALSE(satisfies_co(other, phi));
    CHECK(satisfies_co(CausalMultiteam::create(sig, Multiteam{}, twisted), phi));  // empty

    // exhaustively over the enumerated family
    std::vector<CausalMultiteam> all = enumerate_models(bin_sig(), 2);
    std::vector<FunctionComponent> components = enumerate_components(*bin_sig());
    for (const auto& comp : components) {
        CoPtr capture = phi_formula(comp, *bin_sig());
        for (const auto& m : all) {
            if (m.empty()) {
                CHECK(satisfies_co(m, capture));
            } else {
                CHECK(satisfies_co(m, capture) == (m.laws() == comp));
            }
        }
    }
}

TEST_CASE("the class formula defines the class up to rescaling") {
    CausalMultiteam inc = inc_model();
    FiniteClass k({inc});
    PcoPtr psi = psi_formula(k);
    CHECK(holds(inc, psi));
    CHECK(holds(scale(inc, 2), psi));
    CHECK(holds(scale(inc, 5), psi));
    CHECK(holds(empty_model(inc.sig_ptr()), psi));

    Multiteam other;
    other.add(row_of(inc.sig(), {{"X", "0"}, {"Y", "1"}}), 1);
    FunctionComponent laws = inc.laws();
    CHECK_FALSE(holds(CausalMultiteam::create(inc.sig_ptr(), other, laws), psi));

    CHECK_THROWS_AS(FiniteClass({}), EmptyClass);
    CHECK_THROWS_AS(FiniteClass({inc, coin_model()}), SignatureMismatch);
}

TEST_CASE("an empty member makes the class formula demand emptiness") {
    SigPtr sig = bin_sig();
    FiniteClass k({empty_model(sig)});
    PcoPtr psi = psi_formula(k);
    CHECK(holds(empty_model(sig), psi));
    CHECK_FALSE(holds(s3_model(), psi));
}

TEST_CASE("the row-count formula counts rows but breaks rescaling closure") {
    PcoPtr three = theta_k_formula(3);
    PcoPtr one = theta_k_formula(1);
    CHECK(pco_equal(one, pco_ne()));

    Multiteam single;
    single.add({0, 0}, 1);
    CausalMultiteam m = CausalMultiteam::create(bin_sig(), single, {});
    CHECK_FALSE(holds(m, three));
    CHECK(holds(scale(m, 3), three));  // the rescaling flips the verdict
    CHECK(holds(s3_model(), three));
    CHECK_FALSE(holds(s3_model(), theta_k_formula(4)));
    CHECK_FALSE(holds(empty_model(bin_sig()), pco_ne()));
}

TEST_CASE("definability check validates a class against enumeration") {
    // a one-member class over the binary signature
    Multiteam rows;
    rows.add({0, 0}, 1);
    rows.add({1, 1}, 2);
    FiniteClass k({CausalMultiteam::create(bin_sig(), rows, {})});
    DefinabilityReport report = check_definability(k, 6);
    CHECK(report.exact_match);
    CHECK(report.models_checked > 0);
    CHECK(report.mismatches.empty());

    CHECK_THROWS_AS(check_definability(k, 6, 10), BudgetExceeded);
}

TEST_CASE("statement verdicts are invariant under rescaling") {
    SigPtr sig = bin_sig();
    const char* statements[] = {
        "Pr(X=1) >= 1/2",
        "X=0 => Pr(Y=1) > 0",
        "X=1 ~> Pr(Y=1) == 1",
        "Pr(X=1) == 1/3 \\/ Pr(Y=1) > 1/2",
        "dep(X; Y)",
        "Pr(X=1 | Y=1) >= 1/2",
    };
    std::vector<CausalMultiteam> all = enumerate_models(sig, 3);
    for (const char* text : statements) {
        PcoPtr phi = expand_sugar(parse_pco(text, sig.get()), sig.get());
        for (size_t i = 0; i < all.size(); i += 3) {
            bool base = holds(all[i], phi);
            for (Count n : {2, 3, 5}) {
                CAPTURE(text); CAPTURE(i); CAPTURE(n);
                CHECK(holds(scale(all[i], n), phi) == base);
            }
        }
    }
}

TEST_CASE("rescaling commutes with interventions and restrictions") {
    std::vector<CausalMultiteam> all = enumerate_models(bin_sig(), 3);
    SigPtr sig = bin_sig();
    CoPtr alpha = parse_co("X=0 | Y=1", sig.get());
    for (size_t i = 0; i < all.size(); i += 4) {
        const CausalMultiteam& m = all[i];
        for (Count n : {2, 3, 5}) {
            CausalMultiteam scaled = scale(m, n);
            CHECK(canonical(intervene(m, {{"X", "1"}})) ==
                  canonical(intervene(scaled, {{"X", "1"}})));
            CausalMultiteam r1 = restrict_by(m, alpha);
            CausalMultiteam r2 = restrict_by(scaled, alpha);
            if (r1.empty() || r2.empty())
                CHECK(r1.empty() == r2.empty());
            else
                CHECK(is_rescaling(r1, r2));
        }
    }
}

TEST_CASE("verdicts of probability-free statements depend only on the support") {
    SigPtr sig = bin_sig();
    const char* statements[] = {
        "X=1",
        "X=0 => Y=1",
        "X=1 ~> Y=1",
        "X=1 \\/ (X=0 => Y=0)",
        "X=0 & Y!=1",
    };
    std::vector<CausalMultiteam> all = enumerate_models(sig, 4);
    for (const char* text : statements) {
        PcoPtr phi = expand_sugar(parse_pco(text, sig.get()), sig.get());
        for (size_t i = 0; i < all.size(); i += 5) {
            Multiteam flat;
            for (const auto& [row, n] : all[i].team().counts) flat.add(row, 1);
            CausalMultiteam support_model =
                CausalMultiteam::unchecked(all[i].sig_ptr(), std::move(flat), all[i].laws());
            CAPTURE(text); CAPTURE(i);
            CHECK(holds(all[i], phi) == holds(support_model, phi));
        }
    }
}
