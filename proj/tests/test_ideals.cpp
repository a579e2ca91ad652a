#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "varcap/groebner.hpp"
#include "varcap/parser.hpp"

using namespace varcap;

namespace {

const std::vector<std::string> Z3 = {"z1", "z2", "z3"};

NormalFormAlgebra sphere_algebra() {
    Ideal ideal({parse_polynomial("z1^2 + z2^2 + z3^2 - 1", Z3)});
    return NormalFormAlgebra::from_ideal(Z3, ideal, NoetherSplit{{0, 1}, {2}});
}

NormalFormAlgebra cubic_curve_algebra() {
    Ideal ideal({parse_polynomial("z2 - z1^2", Z3), parse_polynomial("z3 - z1^3", Z3)});
    return NormalFormAlgebra::from_ideal(Z3, ideal, NoetherSplit{{0}, {1, 2}});
}

Polynomial random_poly(std::mt19937& rng, const std::vector<std::string>& vars) {
    std::uniform_int_distribution<int> nterms(0, 5);
    std::uniform_int_distribution<int> expo(0, 3);
    std::uniform_int_distribution<long> num(-4, 4);
    Polynomial p(vars);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        ExponentVector a(vars.size());
        for (std::size_t i = 0; i < vars.size(); ++i) a[i] = expo(rng);
        p.add_term(a, GaussianRational(Rational(num(rng)), Rational(num(rng))));
    }
    return p;
}

}  // namespace

TEST_CASE("sphere basis is the generator itself, monic, led by z3^2") {
    auto alg = sphere_algebra();
    REQUIRE(alg.basis().elements().size() == 1);
    const Polynomial& g = alg.basis().elements()[0];
    CHECK(g == parse_polynomial("z1^2 + z2^2 + z3^2 - 1", Z3));
    CHECK(g.leading_term(alg.basis().order()).first == ExponentVector{0, 0, 2});
}

TEST_CASE("every S-polynomial of the computed basis reduces to zero") {
    for (const auto& alg : {sphere_algebra(), cubic_curve_algebra()}) {
        const auto& gb = alg.basis().elements();
        for (std::size_t i = 0; i < gb.size(); ++i)
            for (std::size_t j = i + 1; j < gb.size(); ++j) {
                Polynomial s = buchberger_s_pair(gb[i], gb[j], alg.basis().order());
                CHECK(division_remainder(s, gb, alg.basis().order()).is_zero());
            }
    }
}

TEST_CASE("normal form vanishes exactly on ideal members") {
    auto alg = cubic_curve_algebra();
    // Substituting z2 = z1^2, z3 = z1^3 gives an independent membership oracle.
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) {
            if (a == 0 && b == 0) continue;
            ExponentVector mono{0, a, b};
            ExponentVector pure{2 * a + 3 * b, 0, 0};
            Polynomial member = Polynomial::monomial(Z3, mono) - Polynomial::monomial(Z3, pure);
            CHECK(alg.normal_form(member).is_zero());
        }
    CHECK_FALSE(alg.normal_form(parse_polynomial("z2 - z1^3", Z3)).is_zero());
}

TEST_CASE("normal form is idempotent and respects evaluation on the variety") {
    auto alg = sphere_algebra();
    std::mt19937 rng(41);
    // Rational points on the sphere from Pythagorean pairs.
    std::vector<std::vector<GaussianRational>> pts = {
        {GaussianRational(Rational(3, 5)), GaussianRational(Rational(4, 5)),
         GaussianRational(0)},
        {GaussianRational(0), GaussianRational(Rational(5, 13)),
         GaussianRational(Rational(12, 13))},
        {GaussianRational(Rational(1)), GaussianRational(Rational(4, 3)),
         GaussianRational(Rational(0), Rational(4, 3))}};
    for (const auto& pt : pts)
        REQUIRE(alg.basis().elements()[0].eval_exact(pt).is_zero());
    for (int trial = 0; trial < 60; ++trial) {
        Polynomial p = random_poly(rng, Z3);
        Polynomial r = alg.normal_form(p);
        CHECK(alg.normal_form(r) == r);
        for (const auto& [e, c] : r.terms()) CHECK(alg.is_standard_monomial(e));
        for (const auto& pt : pts) CHECK(p.eval_exact(pt) == r.eval_exact(pt));
    }
}

TEST_CASE("nf_multiply agrees with reduce-after-multiply") {
    auto alg = sphere_algebra();
    std::mt19937 rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial p = random_poly(rng, Z3);
        Polynomial q = random_poly(rng, Z3);
        CHECK(alg.nf_multiply(alg.normal_form(p), alg.normal_form(q)) ==
              alg.normal_form(p * q));
    }
}

TEST_CASE("sphere standard monomial counts are (k+1)^2") {
    auto alg = sphere_algebra();
    for (int k = 0; k <= 8; ++k) {
        auto mk = standard_monomials(alg, k);
        CHECK(mk.count() == static_cast<std::size_t>((k + 1) * (k + 1)));
        // No standard monomial carries z3 to a power above 1.
        for (const auto& a : mk.monomials) CHECK(a[2] <= 1);
    }
}

TEST_CASE("empty ideal models the full polynomial ring") {
    std::vector<std::string> vars = {"z1", "z2"};
    NormalFormAlgebra alg =
        NormalFormAlgebra::from_ideal(vars, Ideal({}), NoetherSplit{{0, 1}, {}});
    std::mt19937 rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        Polynomial p = random_poly(rng, vars);
        CHECK(alg.normal_form(p) == p);
    }
    for (int k = 0; k <= 6; ++k) {
        // dim of degree <= k polynomials in two variables.
        CHECK(standard_monomials(alg, k).count() ==
              static_cast<std::size_t>((k + 1) * (k + 2) / 2));
    }
    CHECK(alg.check_noether_split().verified);
}

TEST_CASE("noether split diagnostics") {
    auto sphere = sphere_algebra();
    auto diag = sphere.check_noether_split();
    CHECK(diag.verified);
    REQUIRE(diag.witnesses.size() == 1);
    CHECK(diag.witnesses[0].value() == ExponentVector{0, 0, 2});

    // Declaring z3 a local coordinate leaves z1 without a pure-power witness.
    Ideal ideal({parse_polynomial("z1^2 + z2^2 + z3^2 - 1", Z3)});
    NormalFormAlgebra bad(Z3, buchberger(ideal), NoetherSplit{{1, 2}, {0}});
    auto bad_diag = bad.check_noether_split();
    CHECK_FALSE(bad_diag.verified);
    CHECK(bad_diag.offending == std::vector<std::size_t>{0});
}

TEST_CASE("buchberger is deterministic and order-of-generators independent") {
    std::vector<Polynomial> gens = {parse_polynomial("z2 - z1^2", Z3),
                                    parse_polynomial("z3 - z1^3", Z3)};
    auto gb1 = buchberger(Ideal(gens));
    auto gb2 = buchberger(Ideal({gens[1], gens[0]}));
    CHECK(gb1.elements() == gb2.elements());
    auto gb3 = buchberger(Ideal(gens));
    CHECK(gb1.elements() == gb3.elements());
}

TEST_CASE("basis elements are monic and mutually reduced") {
    for (const auto& alg : {sphere_algebra(), cubic_curve_algebra()}) {
        const auto& gb = alg.basis().elements();
        auto leads = alg.basis().leading_monomials();
        for (std::size_t i = 0; i < gb.size(); ++i) {
            CHECK(gb[i].leading_term(alg.basis().order()).second == GaussianRational(1));
            for (const auto& [e, c] : gb[i].terms())
                for (std::size_t j = 0; j < gb.size(); ++j)
                    if (j != i) CHECK_FALSE(leads[j].divides(e));
        }
    }
}

TEST_CASE("ideal construction validates input") {
    CHECK_THROWS_AS(Ideal({Polynomial(Z3)}), std::invalid_argument);
    CHECK_THROWS_AS(Ideal({parse_polynomial("z1", Z3),
                           parse_polynomial("w", {"w"})}),
                    std::invalid_argument);
}
