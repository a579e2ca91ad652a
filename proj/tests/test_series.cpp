#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "varcap/parser.hpp"
#include "varcap/series.hpp"

using namespace varcap;

namespace {

const std::vector<std::string> Z3 = {"z1", "z2", "z3"};

NormalFormAlgebra sphere_algebra() {
    Ideal ideal({parse_polynomial("z1^2 + z2^2 + z3^2 - 1", Z3)});
    return NormalFormAlgebra::from_ideal(Z3, ideal, NoetherSplit{{0, 1}, {2}});
}

ImplicitChart sphere_chart(int D) {
    return implicit_series(sphere_algebra(),
                           {GaussianRational(0), GaussianRational(0), GaussianRational(1)},
                           D);
}

// Coefficients of (1+t)^{1/2} = sum b_n t^n, exact.
std::vector<Rational> sqrt_binomial_coeffs(int N) {
    std::vector<Rational> b{Rational(1)};
    for (int n = 1; n <= N; ++n)
        b.push_back(b[n - 1] * (Rational(1, 2) - (n - 1)) / n);
    return b;
}

Rational binom(int n, int k) {
    Rational r(1);
    for (int i = 0; i < k; ++i) r *= Rational(n - i, i + 1);
    return r;
}

}  // namespace

TEST_CASE("truncated series arithmetic respects the degree bound") {
    TruncatedSeries a = TruncatedSeries::monomial(2, 3, ExponentVector{2, 0});
    TruncatedSeries b = TruncatedSeries::monomial(2, 3, ExponentVector{0, 2});
    TruncatedSeries p = a * b;  // degree 4 > bound
    CHECK(p.is_zero());
    TruncatedSeries s = a + b;
    CHECK(s.coefficient(ExponentVector{2, 0}) == GaussianRational(1));
    CHECK((s - s).is_zero());
    CHECK(s.coeffs.begin()->first == ExponentVector{2, 0});  // lex-least first
}

TEST_CASE("sphere implicit series matches the square-root binomial series") {
    const int D = 12;
    ImplicitChart chart = sphere_chart(D);
    const TruncatedSeries& Y = chart.y_series(0);
    CHECK(Y.coefficient(ExponentVector{1, 0}).is_zero());
    CHECK(Y.coefficient(ExponentVector{2, 0}) ==
          GaussianRational(Rational(-1, 2)));
    // Oracle: (1 - x1^2 - x2^2)^{1/2}; coefficient of x1^{2a} x2^{2b} is
    // b_{a+b} * (-1)^{a+b} * C(a+b, a), odd exponents vanish.
    auto b = sqrt_binomial_coeffs(D / 2);
    for (int d1 = 0; d1 <= D; ++d1)
        for (int d2 = 0; d1 + d2 <= D; ++d2) {
            GaussianRational got = Y.coefficient(ExponentVector{d1, d2});
            if (d1 % 2 || d2 % 2) {
                CHECK(got.is_zero());
            } else {
                int n = (d1 + d2) / 2;
                Rational expect = b[n] * binom(n, d1 / 2) * ((n % 2) ? -1 : 1);
                CHECK(got == GaussianRational(expect));
            }
        }
}

TEST_CASE("polynomial graph expands exactly") {
    Ideal ideal({parse_polynomial("z1 + z2 + z3 - 1", Z3)});
    auto alg = NormalFormAlgebra::from_ideal(Z3, ideal, NoetherSplit{{0, 1}, {2}});
    ImplicitChart chart(alg, {GaussianRational(0), GaussianRational(0), GaussianRational(1)},
                        10);
    const TruncatedSeries& Y = chart.y_series(0);
    CHECK(Y.coefficient(ExponentVector{0, 0}) == GaussianRational(1));
    CHECK(Y.coefficient(ExponentVector{1, 0}) == GaussianRational(-1));
    CHECK(Y.coefficient(ExponentVector{0, 1}) == GaussianRational(-1));
    CHECK(Y.coeffs.size() == 3);
}

TEST_CASE("chart-coordinate sphere branch picks i at the base point") {
    std::vector<std::string> V = {"v0", "v1", "v3"};
    Ideal ideal({parse_polynomial("v1^2 + 1 + v3^2 - v0^2", V)});
    auto alg = NormalFormAlgebra::from_ideal(V, ideal, NoetherSplit{{0, 1}, {2}});
    ImplicitChart chart(alg,
                        {GaussianRational(0), GaussianRational(0), GaussianRational::i()}, 8);
    const TruncatedSeries& Y = chart.y_series(0);
    CHECK(Y.coefficient(ExponentVector{0, 0}) == GaussianRational::i());
    CHECK(Y.coefficient(ExponentVector{0, 2}) ==
          GaussianRational(Rational(0), Rational(1, 2)));
    CHECK(Y.coefficient(ExponentVector{2, 0}) ==
          GaussianRational(Rational(0), Rational(-1, 2)));
    // Oracle: i * (1 + v1^2 - v0^2)^{1/2} with t = v1^2 - v0^2.
    auto b = sqrt_binomial_coeffs(4);
    for (int d0 = 0; d0 <= 8; d0 += 2)
        for (int d1 = 0; d0 + d1 <= 8; d1 += 2) {
            int n = (d0 + d1) / 2;
            Rational expect = b[n] * binom(n, d0 / 2) * ((d0 / 2) % 2 ? -1 : 1);
            CHECK(Y.coefficient(ExponentVector{d0, d1}) ==
                  GaussianRational(Rational(0), expect));
        }
}

TEST_CASE("expansion of coordinate monomials") {
    ImplicitChart chart = sphere_chart(8);
    Polynomial m = parse_polynomial("z1^2*z2", Z3);
    TruncatedSeries s = expand_on_chart(m, chart);
    CHECK(s.coeffs.size() == 1);
    CHECK(s.coefficient(ExponentVector{2, 1}) == GaussianRational(1));

    TruncatedSeries z3 = expand_on_chart(Polynomial::variable(Z3, 2), chart);
    CHECK(z3.coefficient(ExponentVector{0, 0}) == GaussianRational(1));
    CHECK(z3.coefficient(ExponentVector{2, 0}) == GaussianRational(Rational(-1, 2)));
    CHECK(z3.coefficient(ExponentVector{0, 2}) == GaussianRational(Rational(-1, 2)));
}

TEST_CASE("generators expand to zero through the precision") {
    ImplicitChart chart = sphere_chart(14);
    for (const auto& g : chart.algebra().basis().elements())
        CHECK(expand_on_chart(g, chart).is_zero());
}

TEST_CASE("trailing data on the sphere") {
    ImplicitChart chart = sphere_chart(10);
    Polynomial z3m1 = parse_polynomial("z3 - 1", Z3);
    TrailingData t = trailing(z3m1, chart);
    CHECK(t.nu == ExponentVector{2, 0});
    CHECK(t.tc == GaussianRational(Rational(-1, 2)));
    CHECK(t.certified);

    TrailingData tm = trailing(parse_polynomial("z1^3*z2^2", Z3), chart);
    CHECK(tm.nu == ExponentVector{3, 2});
    CHECK(tm.tc == GaussianRational(1));
    CHECK(tm.certified);

    TrailingData tf = trailing(parse_polynomial("z3 - 1 + 1/2*z1^2", Z3), chart);
    CHECK(tf.nu == ExponentVector{4, 0});
    CHECK(tf.tc == GaussianRational(Rational(-1, 8)));

    // A trailing exponent off the first axis cannot be certified by truncation.
    TrailingData tz = trailing(parse_polynomial("z2*z3 - z2", Z3), chart);
    CHECK(tz.nu == ExponentVector{2, 1});
    CHECK(tz.tc == GaussianRational(Rational(-1, 2)));
    CHECK_FALSE(tz.certified);
}

TEST_CASE("trailing re-derives the chart when the precision is too low") {
    ImplicitChart shallow = sphere_chart(1);
    TrailingData t = trailing(parse_polynomial("z3 - 1", Z3), shallow);
    CHECK(t.nu == ExponentVector{2, 0});
    CHECK_THROWS_AS(trailing(parse_polynomial("z3 - 1", Z3), shallow, 1), std::domain_error);
}

TEST_CASE("s-polynomial base cases") {
    ImplicitChart chart = sphere_chart(10);
    Polynomial one = Polynomial::constant(Z3, GaussianRational(1));
    Polynomial z3 = Polynomial::variable(Z3, 2);
    CHECK(s_polynomial(z3, one, chart) == parse_polynomial("z3 - 1", Z3));
    CHECK(s_polynomial(z3, z3, chart).is_zero());
    CHECK_THROWS_AS(s_polynomial(z3, Polynomial::variable(Z3, 0), chart),
                    std::invalid_argument);
}

TEST_CASE("s-polynomial chain reaching nu (0,2)") {
    ImplicitChart chart = sphere_chart(12);
    const auto& alg = chart.algebra();
    Polynomial z3m1 = parse_polynomial("z3 - 1", Z3);
    Polynomial z1sq = parse_polynomial("z1^2", Z3);

    Polynomial s1 = s_polynomial(z3m1, z1sq, chart);
    CHECK(s1 == parse_polynomial("z3 - 1 + 1/2*z1^2", Z3));
    CHECK(trailing(s1, chart).nu == ExponentVector{4, 0});

    Polynomial sq = alg.nf_multiply(z3m1, z3m1);
    CHECK(sq == parse_polynomial("2 - 2*z3 - z1^2 - z2^2", Z3));
    CHECK(trailing(sq, chart).nu == ExponentVector{4, 0});
    CHECK(trailing(sq, chart).tc == GaussianRational(Rational(1, 4)));

    Polynomial s2 = s_polynomial(s1, sq, chart);
    CHECK(s2 == parse_polynomial("-1/8*z2^2", Z3));
    TrailingData t2 = trailing(s2, chart);
    CHECK(t2.nu == ExponentVector{0, 2});
    CHECK(t2.tc == GaussianRational(Rational(-1, 8)));
}

TEST_CASE("product and sum rules for trailing data") {
    ImplicitChart chart = sphere_chart(16);
    const auto& alg = chart.algebra();
    std::mt19937 rng(61);
    std::uniform_int_distribution<int> nterms(1, 4);
    std::uniform_int_distribution<int> expo(0, 2);
    std::uniform_int_distribution<long> num(-3, 3);
    auto random_nf = [&]() {
        Polynomial p(Z3);
        int n = nterms(rng);
        for (int t = 0; t < n; ++t) {
            ExponentVector a(3);
            for (int i = 0; i < 3; ++i) a[i] = expo(rng);
            p.add_term(a, GaussianRational(Rational(num(rng)), Rational(num(rng))));
        }
        return alg.normal_form(p);
    };
    int done = 0;
    while (done < 40) {
        Polynomial p = random_nf();
        Polynomial q = random_nf();
        if (p.is_zero() || q.is_zero()) continue;
        ++done;
        TrailingData tp = trailing(p, chart);
        TrailingData tq = trailing(q, chart);
        TrailingData tpq = trailing(alg.nf_multiply(p, q), chart);
        CHECK(tpq.nu == tp.nu + tq.nu);
        CHECK(tpq.tc == tp.tc * tq.tc);
        Polynomial sum = alg.normal_form(p + q);
        if (!sum.is_zero()) {
            TrailingData ts = trailing(sum, chart);
            ExponentVector lo = LexLess{}(tp.nu, tq.nu) ? tp.nu : tq.nu;
            CHECK_FALSE(LexLess{}(ts.nu, lo));
            if (tp.nu != tq.nu) CHECK(ts.nu == lo);
        }
    }
}

TEST_CASE("chart construction validates its input") {
    auto alg = sphere_algebra();
    CHECK_THROWS_WITH_AS(
        ImplicitChart(alg, {GaussianRational(1), GaussianRational(0), GaussianRational(0)},
                      4),
        "base point has nonzero local coordinates; translate first", std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        ImplicitChart(alg, {GaussianRational(0), GaussianRational(0), GaussianRational(2)},
                      4),
        "point not on variety", std::invalid_argument);

    // Vertical tangent: the y-derivative vanishes at the base point.
    Ideal fold({parse_polynomial("z3^2 - z1", Z3)});
    auto fold_alg = NormalFormAlgebra::from_ideal(Z3, fold, NoetherSplit{{0, 1}, {2}});
    CHECK_THROWS_WITH_AS(
        ImplicitChart(fold_alg,
                      {GaussianRational(0), GaussianRational(0), GaussianRational(0)}, 4),
        "Jacobian singular at base point", std::domain_error);
}
