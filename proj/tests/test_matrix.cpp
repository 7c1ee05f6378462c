#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "ssekit/laurent.hpp"
#include "ssekit/matrix.hpp"
#include "ssekit/poly.hpp"

using namespace ssekit;
using testgen::rand_matrix;

namespace {
Matrix<Rational> mq(std::size_t r, std::size_t c, std::vector<long> v) {
    std::vector<Rational> e(v.begin(), v.end());
    return Matrix<Rational>(r, c, std::move(e));
}
}  // namespace

TEST_CASE("matrix arithmetic basics") {
    const auto nil = mq(2, 2, {0, 1, 0, 0});
    CHECK((nil * nil).is_zero_matrix());

    const auto fib = mq(2, 2, {1, 1, 1, 0});
    CHECK(Matrix<Rational>::identity(2) * fib == fib);
    CHECK(fib.pow(2) == mq(2, 2, {2, 1, 1, 1}));
    CHECK(fib.pow(0) == Matrix<Rational>::identity(2));

    CHECK_THROWS_AS(mq(2, 2, {1, 2, 3, 4}) * mq(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9}), error);
    CHECK_THROWS_AS(mq(1, 2, {1, 2}) + mq(2, 1, {1, 2}), error);
    CHECK(mq(2, 3, {1, 2, 3, 4, 5, 6}).transpose() == mq(3, 2, {1, 4, 2, 5, 3, 6}));
}

TEST_CASE("entrywise abs and sup norm") {
    CHECK(entrywise_abs(mq(2, 2, {-1, 2, 0, -3})) == mq(2, 2, {1, 2, 0, 3}));
    const auto nonneg = mq(2, 2, {1, 2, 0, 3});
    CHECK(entrywise_abs(nonneg) == nonneg);

    Matrix<Rational> m(2, 2);
    m.at(0, 0) = Rational(1, 2);
    m.at(0, 1) = Rational(-3, 4);
    m.at(1, 1) = Rational(1, 8);
    CHECK(sup_norm(m) == Rational(3, 4));
    CHECK(sup_norm(Matrix<Rational>(3, 3)) == Rational(0));
    CHECK(sup_norm(mq(1, 1, {-5})) == Rational(5));

    Matrix<Laurent> lm(1, 1);
    lm.at(0, 0) = Laurent::term(Rational(1), 2, 0);
    CHECK_THROWS_AS(sup_norm(lm), error);
    CHECK_THROWS_AS(entrywise_abs(lm), error);
}

TEST_CASE("exact determinants") {
    CHECK(det_exact(Matrix<Rational>::identity(4)) == Rational(1));
    CHECK(det_exact(mq(2, 2, {0, 1, 0, 0})) == Rational(0));

    // det(I - s N) = 1 for nilpotent N
    Matrix<Poly<Rational>> p(2, 2);
    p.at(0, 0) = Poly<Rational>(1);
    p.at(1, 1) = Poly<Rational>(1);
    p.at(0, 1) = -QPoly::term(Rational(1), 1);
    CHECK(det_exact(p) == Poly<Rational>(1));

    testgen::Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        auto u = rand_matrix(rng, 3, 3, 4, 3);
        auto v = rand_matrix(rng, 3, 3, 4, 3);
        CHECK(det_exact(u * v) == det_exact(u) * det_exact(v));
    }
}

TEST_CASE("characteristic polynomial") {
    auto cp = char_poly(mq(2, 2, {0, 1, 0, 0}));
    CHECK(cp == std::vector<Rational>{Rational(0), Rational(0), Rational(1)});  // x^2

    cp = char_poly(mq(2, 2, {1, 1, 1, 0}));
    CHECK(cp == std::vector<Rational>{Rational(-1), Rational(-1), Rational(1)});  // x^2 - x - 1

    cp = char_poly(mq(1, 1, {2}));
    CHECK(cp == std::vector<Rational>{Rational(-2), Rational(1)});  // x - 2

    // invariance under permutation similarity
    testgen::Rng rng(8);
    for (int i = 0; i < 30; ++i) {
        auto a = rand_matrix(rng, 4, 4, 3, 2);
        std::vector<std::size_t> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        Matrix<Rational> p(4, 4);
        for (std::size_t k = 0; k < 4; ++k) p.at(perm[k], k) = Rational(1);
        CHECK(char_poly(p.transpose() * a * p) == char_poly(a));
    }
}

TEST_CASE("power sums agree with traces of powers") {
    auto ps = power_sums(std::vector<Rational>{Rational(-1), Rational(-1), Rational(1)}, 2);
    CHECK(ps == std::vector<Rational>{Rational(1), Rational(3)});

    ps = power_sums(std::vector<Rational>{Rational(-2), Rational(1)}, 3);
    CHECK(ps == std::vector<Rational>{Rational(2), Rational(4), Rational(8)});

    ps = power_sums(std::vector<Rational>{Rational(0), Rational(0), Rational(1)}, 4);
    for (const auto& x : ps) CHECK(x.is_zero());

    testgen::Rng rng(9);
    for (int i = 0; i < 30; ++i) {
        std::uniform_int_distribution<std::size_t> dn(1, 4);
        const std::size_t n = dn(rng);
        Matrix<Rational> a(n, n);
        std::uniform_int_distribution<long> de(-3, 3);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) a.at(r, c) = Rational(de(rng));
        auto sums = power_sums(char_poly(a), 8);
        for (std::size_t k = 1; k <= 8; ++k) CHECK(sums[k - 1] == a.pow(k).trace());
    }

    CHECK_THROWS_AS(power_sums(std::vector<Rational>{Rational(1), Rational(2)}, 3), error);
}

TEST_CASE("nilpotency with witness index") {
    CHECK(is_nilpotent(mq(2, 2, {0, 1, 0, 0})) == std::pair{true, std::size_t{2}});
    CHECK_FALSE(is_nilpotent(Matrix<Rational>::identity(3)).first);
    CHECK(is_nilpotent(Matrix<Rational>(3, 3)) == std::pair{true, std::size_t{1}});

    // nilpotent iff char poly is x^n
    testgen::Rng rng(10);
    for (int i = 0; i < 60; ++i) {
        std::uniform_int_distribution<std::size_t> dn(1, 4);
        const std::size_t n = dn(rng);
        const bool make_nilpotent = i % 2 == 0;
        Matrix<Rational> a = make_nilpotent ? testgen::rand_nilpotent(rng, n)
                                            : rand_matrix(rng, n, n, 3, 2);
        const auto cp = char_poly(a);
        bool is_xn = true;
        for (std::size_t k = 0; k < n; ++k)
            if (!cp[k].is_zero()) is_xn = false;
        CHECK(is_nilpotent(a).first == is_xn);
    }
}

TEST_CASE("norm subadditivity and scalar scaling") {
    testgen::Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        auto a = rand_matrix(rng, 3, 3, 5, 4);
        auto b = rand_matrix(rng, 3, 3, 5, 4);
        CHECK(sup_norm(a + b) <= sup_norm(a) + sup_norm(b));
        Rational c = testgen::rand_rational(rng, 5, 3);
        CHECK(sup_norm(c * a) == c.abs() * sup_norm(a));
    }
}

TEST_CASE("certified spectral radius upper bound") {
    CHECK(spectral_radius_upper(mq(1, 1, {2}), Rational(1, 100)) >= Rational(2));
    CHECK(spectral_radius_upper(mq(1, 1, {2}), Rational(1, 100)) <= Rational(2) + Rational(1, 100));

    const auto perm = mq(2, 2, {0, 1, 1, 0});
    const auto u = spectral_radius_upper(perm, Rational(1, 100));
    CHECK(u >= Rational(1));
    CHECK(u <= Rational(1) + Rational(1, 100));

    CHECK(spectral_radius_upper(Matrix<Rational>(3, 3), Rational(1, 10)) == Rational(0));
    CHECK_THROWS_AS(spectral_radius_upper(perm, Rational(0)), error);
    CHECK_THROWS_AS(spectral_radius_upper(mq(1, 1, {-1}), Rational(1, 10)), error);

    // upper bound property against known Perron values
    const auto fib = mq(2, 2, {1, 1, 1, 0});  // golden ratio ~ 1.618
    const auto uf = spectral_radius_upper(fib, Rational(1, 50));
    CHECK(uf * uf >= uf + Rational(1));  // u >= phi  <=>  u^2 >= u + 1 for u > 0
    CHECK((uf - Rational(1, 50)) * (uf - Rational(1, 50)) <= (uf - Rational(1, 50)) + Rational(1));
}
