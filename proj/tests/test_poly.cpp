#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "ssekit/polymatrix.hpp"
#include "ssekit/realroots.hpp"

using namespace ssekit;

namespace {
QPoly qp(std::vector<long> coeffs) {
    std::vector<Rational> c(coeffs.begin(), coeffs.end());
    return QPoly::from_coeffs(std::move(c));
}
}  // namespace

TEST_CASE("polynomial arithmetic and division") {
    const QPoly a = qp({-1, 0, 1});  // x^2 - 1
    const QPoly b = qp({-1, 1});     // x - 1
    CHECK(a == b * qp({1, 1}));

    auto [q, r] = poly_divrem(a, b);
    CHECK(q == qp({1, 1}));
    CHECK(r.is_zero_poly());

    CHECK(exact_div(a, b) == qp({1, 1}));
    CHECK(poly_gcd(a, b) == b);
    CHECK(derivative(qp({5, 3, 2})) == qp({3, 4}));
    CHECK(a.eval(Rational(3)) == Rational(8));

    testgen::Rng rng(21);
    for (int i = 0; i < 60; ++i) {
        std::vector<Rational> ca, cb;
        for (int k = 0; k < 4; ++k) ca.push_back(testgen::rand_rational(rng, 4, 3));
        for (int k = 0; k < 3; ++k) cb.push_back(testgen::rand_rational(rng, 4, 3));
        QPoly pa = QPoly::from_coeffs(ca), pb = QPoly::from_coeffs(cb);
        if (pb.is_zero_poly()) continue;
        CHECK(exact_div(pa * pb, pb) == pa);
        auto [qq, rr] = poly_divrem(pa, pb);
        CHECK(qq * pb + rr == pa);
        CHECK(rr.degree() < pb.degree());
    }
}

TEST_CASE("squarefree part collapses multiplicity") {
    const QPoly p = qp({-1, 1}) * qp({-1, 1}) * qp({2, 1});  // (x-1)^2 (x+2)
    CHECK(squarefree_part(p) == make_monic(qp({-1, 1}) * qp({2, 1})));
    CHECK(squarefree_part(qp({-1, 1})) == qp({-1, 1}));
}

TEST_CASE("polynomial matrix degree and norm") {
    // M = s [[0,3],[0,0]] + s^2 [[-4,0],[0,0]]  ->  ||M|| = 4
    Matrix<Rational> c1(2, 2), c2(2, 2);
    c1.at(0, 1) = Rational(3);
    c2.at(0, 0) = Rational(-4);
    auto m = PolyMatrix<Rational>::from_coeffs(2, {Matrix<Rational>(2, 2), c1, c2});
    CHECK(poly_norm(m) == Rational(4));
    CHECK(m.degree() == 2);

    // constant-only matrix: norm ignores degree 0
    Matrix<Rational> c0(1, 1);
    c0.at(0, 0) = Rational(7);
    auto mc = PolyMatrix<Rational>::from_coeffs(1, {c0});
    CHECK(poly_norm(mc) == Rational(0));
    CHECK(mc.degree() == 0);

    Matrix<Rational> q(1, 1);
    q.at(0, 0) = Rational(1, 4);
    CHECK(poly_norm(PolyMatrix<Rational>::from_coeffs(1, {Matrix<Rational>(1, 1), q})) ==
          Rational(1, 4));

    // degree conventions
    CHECK(PolyMatrix<Rational>(3).degree() == 0);  // zero matrix
    Matrix<Rational> a1(2, 2), a3(2, 2);
    a1.at(0, 0) = Rational(1);
    a3.at(1, 1) = Rational(2);
    auto md = PolyMatrix<Rational>::from_coeffs(
        2, {Matrix<Rational>(2, 2), a1, Matrix<Rational>(2, 2), a3});
    CHECK(md.degree() == 3);
    CHECK(md.low_degree() == 1);
    CHECK(md.in_degree_ideal(1));
    CHECK_FALSE(md.in_degree_ideal(2));

    // norm subadditivity / scaling on the positive-degree part
    testgen::Rng rng(22);
    for (int i = 0; i < 40; ++i) {
        auto ca = testgen::rand_matrix(rng, 2, 2, 4, 3);
        auto cb = testgen::rand_matrix(rng, 2, 2, 4, 3);
        auto pa = PolyMatrix<Rational>::from_coeffs(2, {Matrix<Rational>(2, 2), ca});
        auto pb = PolyMatrix<Rational>::from_coeffs(2, {Matrix<Rational>(2, 2), cb});
        CHECK(poly_norm(pa + pb) <= poly_norm(pa) + poly_norm(pb));
        Rational s = testgen::rand_rational(rng, 3, 2);
        auto scaled = PolyMatrix<Rational>::from_coeffs(2, {Matrix<Rational>(2, 2), s * ca});
        CHECK(poly_norm(scaled) == s.abs() * poly_norm(pa));
    }
}

TEST_CASE("sturm isolation finds and separates real roots") {
    // (x^2 - 2)(x + 3): roots -3, -sqrt2, sqrt2
    const QPoly p = qp({-2, 0, 1}) * qp({3, 1});
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 3);
    // sorted ascending; refine and sanity-check the brackets
    QPoly sf = squarefree_part(p);
    for (auto& r : roots) refine_root_below(sf, r, Rational(1, 1000));
    CHECK(roots[0].abs_upper() <= Rational(31, 10));
    CHECK(roots[0].abs_lower() >= Rational(29, 10));
    CHECK(roots[2].lo > Rational(1));
    CHECK(roots[2].hi < Rational(3, 2));

    // exact rational roots are detected exactly
    auto r2 = isolate_real_roots(qp({-1, 0, 1}));  // x^2 - 1
    REQUIRE(r2.size() == 2);

    // multiple roots count once
    auto r3 = isolate_real_roots(qp({-1, 1}) * qp({-1, 1}));
    REQUIRE(r3.size() == 1);

    // no real roots
    CHECK(isolate_real_roots(qp({1, 0, 1})).empty());
}

TEST_CASE("sturm count matches randomized integer-root products") {
    testgen::Rng rng(23);
    std::uniform_int_distribution<long> root(-5, 5);
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<long> rs;
        QPoly p = QPoly(1);
        for (int k = 0; k < 4; ++k) {
            long r = root(rng);
            rs.push_back(r);
            p = p * qp({-r, 1});
        }
        std::sort(rs.begin(), rs.end());
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        CHECK(isolate_real_roots(p).size() == rs.size());
    }
}
