#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "varcap/okounkov.hpp"
#include "varcap/parser.hpp"

using namespace varcap;

namespace {

const std::vector<std::string> Z3 = {"z1", "z2", "z3"};

NormalFormAlgebra sphere_algebra() {
    Ideal ideal({parse_polynomial("z1^2 + z2^2 + z3^2 - 1", Z3)});
    return NormalFormAlgebra::from_ideal(Z3, ideal, NoetherSplit{{0, 1}, {2}});
}

ImplicitChart sphere_chart(int k_max) {
    return implicit_series(sphere_algebra(),
                           {GaussianRational(0), GaussianRational(0), GaussianRational(1)},
                           default_precision(k_max));
}

NormalFormAlgebra plane_algebra() {
    std::vector<std::string> vars = {"z1", "z2"};
    return NormalFormAlgebra::from_ideal(vars, Ideal({}), NoetherSplit{{0, 1}, {}});
}

}  // namespace

TEST_CASE("sphere N_1 is the four-point set") {
    ImplicitChart chart = sphere_chart(1);
    NuSet n1 = compute_Nk(chart.algebra(), chart, 1, NuSet{});
    std::vector<ExponentVector> expect = {
        ExponentVector{0, 0}, ExponentVector{1, 0}, ExponentVector{0, 1},
        ExponentVector{2, 0}};
    CHECK(n1.size() == 4);
    for (const auto& e : expect) CHECK(n1.representatives.count(e) == 1);
}

TEST_CASE("sphere N_2 fills a + 2b <= 4") {
    ImplicitChart chart = sphere_chart(2);
    NuSet n2 = compute_Nk(chart.algebra(), chart, 2);
    CHECK(n2.size() == 9);
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + 2 * b <= 4 && b <= 2; ++b)
            CHECK(n2.representatives.count(ExponentVector{a, b}) == 1);
}

TEST_CASE("sphere level sizes match the dimension oracle") {
    ImplicitChart chart = sphere_chart(5);
    NuSet prev;
    for (int k = 1; k <= 5; ++k) {
        prev = compute_Nk(chart.algebra(), chart, k, prev);
        CHECK(prev.size() == static_cast<std::size_t>((k + 1) * (k + 1)));
    }
}

TEST_CASE("representatives are monic with matching nu and bounded degree") {
    ImplicitChart chart = sphere_chart(3);
    NuSet prev;
    for (int k = 1; k <= 3; ++k) {
        prev = compute_Nk(chart.algebra(), chart, k, prev);
        for (const auto& [nu, rep] : prev.representatives) {
            TrailingData td = trailing(rep, chart);
            CHECK(td.nu == nu);
            CHECK(td.tc == GaussianRational(1));
            CHECK(rep.degree().value() <= k);
        }
    }
}

TEST_CASE("zero ideal on C^2 gives the standard simplex levels") {
    auto alg = plane_algebra();
    ImplicitChart chart(alg, {GaussianRational(0), GaussianRational(0)},
                        default_precision(4));
    NuSet n4 = compute_Nk(alg, chart, 4);
    CHECK(n4.size() == 15);
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 4; ++b)
            CHECK(n4.representatives.count(ExponentVector{a, b}) == 1);
}

TEST_CASE("sphere body stabilizes to the triangle of volume one") {
    ImplicitChart chart = sphere_chart(4);
    OkounkovResult res = okounkov_body(chart.algebra(), chart, 4);
    CHECK(res.stabilized);
    CHECK(res.volume == 1);
    REQUIRE(res.body.vertices.size() == 3);
    CHECK(res.body.vertices[0] == QVec{Rational(0), Rational(0)});
    CHECK(res.body.vertices[1] == QVec{Rational(2), Rational(0)});
    CHECK(res.body.vertices[2] == QVec{Rational(0), Rational(1)});
    // Delta_1 is already the full triangle.
    CHECK(res.deltas[0].vertices == res.body.vertices);
}

TEST_CASE("zero ideal body is the unit simplex") {
    auto alg = plane_algebra();
    ImplicitChart chart(alg, {GaussianRational(0), GaussianRational(0)},
                        default_precision(3));
    OkounkovResult res = okounkov_body(alg, chart, 3);
    CHECK(res.stabilized);
    CHECK(res.volume == Rational(1, 2));
    REQUIRE(res.body.vertices.size() == 3);
    CHECK(res.body.vertices[0] == QVec{Rational(0), Rational(0)});
    CHECK(res.body.vertices[1] == QVec{Rational(1), Rational(0)});
    CHECK(res.body.vertices[2] == QVec{Rational(0), Rational(1)});
}

TEST_CASE("scaled hulls are monotone under divisibility") {
    ImplicitChart chart = sphere_chart(4);
    OkounkovResult res = okounkov_body(chart.algebra(), chart, 4);
    auto contained = [&](int k, int rk) {
        for (const auto& v : res.deltas[k - 1].vertices)
            if (!res.deltas[rk - 1].contains(v)) return false;
        return true;
    };
    CHECK(contained(1, 2));
    CHECK(contained(1, 3));
    CHECK(contained(1, 4));
    CHECK(contained(2, 4));
}

TEST_CASE("lattice points of the scaled body recover N_k") {
    ImplicitChart chart = sphere_chart(4);
    OkounkovResult res = okounkov_body(chart.algebra(), chart, 4);
    for (int k = 1; k <= 4; ++k) {
        LatticeReport rep = lattice_check(res, k);
        CHECK(rep.equality);
        CHECK(rep.lattice_count == static_cast<std::size_t>((k + 1) * (k + 1)));
    }
    LatticeReport r3 = lattice_check(res, 3);
    CHECK(r3.nk_count == 16);
}

TEST_CASE("box density approaches the box volume") {
    ImplicitChart chart = sphere_chart(8);
    auto alg = chart.algebra();
    NuSet prev;
    OkounkovResult res;
    for (int k = 1; k <= 8; ++k) {
        prev = compute_Nk(alg, chart, k, prev);
        res.levels.push_back(prev);
        res.deltas.push_back(delta_hull(prev, 2));
    }
    std::vector<QVec> cloud;
    for (const auto& d : res.deltas)
        for (const auto& v : d.vertices) cloud.push_back(v);
    res.body = convex_hull(cloud, 2);

    RationalBox Q{{Rational(1, 4), Rational(1, 8)}, {Rational(1, 2), Rational(1, 4)}};
    CHECK(Q.volume() == Rational(1, 32));
    LatticeReport rep = lattice_check(res, 8, Q);
    double target = 1.0 / 32.0;
    CHECK(std::abs(rep.box_ratio - target) <= 1.0 / 8.0);
}

TEST_CASE("invalid inputs are rejected") {
    ImplicitChart chart = sphere_chart(2);
    CHECK_THROWS_AS(compute_Nk(chart.algebra(), chart, 0, NuSet{}), std::invalid_argument);
    CHECK_THROWS_AS(compute_Nk(chart.algebra(), chart, 2, NuSet{}), std::invalid_argument);
    CHECK_THROWS_AS(okounkov_body(chart.algebra(), chart, 1), std::invalid_argument);
}
