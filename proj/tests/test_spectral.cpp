#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "ssekit/spectral.hpp"

using namespace ssekit;

namespace {
SpectrumDescriptor spec_of(std::vector<long> coeffs) {
    SpectrumDescriptor d;
    for (long c : coeffs) d.coeffs.push_back(Rational(c));
    return d;
}
Matrix<Rational> mq(std::size_t r, std::size_t c, std::vector<long> v) {
    std::vector<Rational> e(v.begin(), v.end());
    return Matrix<Rational>(r, c, std::move(e));
}
const Rational kTol(1, 1000);
}  // namespace

TEST_CASE("moebius function") {
    CHECK(moebius(1) == 1);
    CHECK(moebius(4) == 0);
    CHECK(moebius(6) == 1);
    CHECK(moebius(2) == -1);
    CHECK(moebius(30) == -1);
    CHECK(moebius(12) == 0);
    CHECK_THROWS_AS(moebius(0), error);
}

TEST_CASE("net traces from newton identities and moebius inversion") {
    const auto d2 = spec_of({-2, 1});  // (2)
    CHECK(net_trace(d2, 1) == Rational(2));
    CHECK(net_trace(d2, 2) == Rational(2));
    CHECK(net_trace(d2, 3) == Rational(6));

    const auto d1 = spec_of({-1, 1});  // (1)
    CHECK(net_trace(d1, 1) == Rational(1));
    for (std::size_t n = 2; n <= 8; ++n) CHECK(net_trace(d1, n).is_zero());

    const auto d21 = spec_of({-2, -1, 1});  // (2, -1)
    CHECK(net_trace(d21, 1) == Rational(1));
    CHECK(net_trace(d21, 2) == Rational(4));
    CHECK(net_trace(d21, 3) == Rational(6));
}

TEST_CASE("least-period point counting by enumeration") {
    CHECK(count_least_period_points(mq(1, 1, {2}), 3) == Rational(6));
    CHECK(count_least_period_points(mq(1, 1, {1}), 2) == Rational(0));
    CHECK(count_least_period_points(mq(2, 2, {0, 1, 1, 0}), 2) == Rational(2));
    CHECK_THROWS_AS(count_least_period_points(mq(1, 1, {2}), 0), error);
    CHECK_THROWS_AS(count_least_period_points(mq(1, 1, {2}), 11), error);

    Matrix<Rational> half(1, 1);
    half.at(0, 0) = Rational(1, 2);
    CHECK_THROWS_AS(count_least_period_points(half, 1), error);
}

TEST_CASE("net trace equals the orbit count for integer matrices") {
    testgen::Rng rng(71);
    for (int iter = 0; iter < 25; ++iter) {
        std::uniform_int_distribution<std::size_t> dn(1, 4);
        const auto a = testgen::rand_nonneg_integer_matrix(rng, dn(rng), 2);
        const auto spec_coeffs = nonzero_spectrum_poly(char_poly(a));
        for (std::size_t n = 1; n <= 6; ++n) {
            const Rational counted = count_least_period_points(a, n);
            if (spec_coeffs.size() < 2) {
                CHECK(counted.is_zero());  // nilpotent: empty nonzero spectrum
            } else {
                CHECK(net_trace(SpectrumDescriptor{spec_coeffs}, n) == counted);
            }
        }
    }
}

TEST_CASE("perron verdicts") {
    CHECK(has_perron_value(spec_of({-2, 1}), kTol).verdict == Verdict::yes);       // t - 2
    CHECK(has_perron_value(spec_of({-1, 0, 1}), kTol).verdict == Verdict::no);     // t^2 - 1
    CHECK(has_perron_value(spec_of({-1, -1, 1}), kTol).verdict == Verdict::yes);   // t^2 - t - 1
    CHECK(has_perron_value(spec_of({1, 0, 1}), kTol).verdict == Verdict::no);      // t^2 + 1
    CHECK(has_perron_value(spec_of({1, -2, 1}), kTol).verdict == Verdict::no);     // (t-1)^2
    CHECK(has_perron_value(spec_of({-2, 1, 1}), kTol).verdict == Verdict::no);     // (t+2)(t-1)
    CHECK(has_perron_value(spec_of({-2, 1, -2, 1}), kTol).verdict == Verdict::yes);  // (t-2)(t^2+1)
    CHECK(has_perron_value(spec_of({-4, 4, -1, 1}), kTol).verdict == Verdict::no);   // (t-1)(t^2+4)
    CHECK(has_perron_value(spec_of({2, -3, 1}), kTol).verdict == Verdict::yes);    // (t-1)(t-2)

    // appending zero eigenvalues is not representable: zero constant term rejected
    CHECK_THROWS_AS(has_perron_value(spec_of({0, -2, 1}), kTol), error);
    CHECK_THROWS_AS(has_perron_value(spec_of({-2, 2}), kTol), error);  // non-monic
    CHECK_THROWS_AS(has_perron_value(spec_of({-2, 1}), Rational(0)), error);
}

TEST_CASE("perron holds for spectra of random primitive 0/1 matrices") {
    testgen::Rng rng(72);
    for (int iter = 0; iter < 15; ++iter) {
        std::uniform_int_distribution<std::size_t> dn(2, 4);
        const auto a = testgen::rand_primitive_01(rng, dn(rng));
        const auto coeffs = nonzero_spectrum_poly(char_poly(a));
        REQUIRE(coeffs.size() >= 2);
        CHECK(has_perron_value(SpectrumDescriptor{coeffs}, kTol).verdict == Verdict::yes);
        // the realized spectrum satisfies all three conditions in range
        const auto rep = check_spectral_conditions(SpectrumDescriptor{coeffs},
                                                   RingMode::integer_ring, 10, 10, kTol);
        CHECK(rep.all_ok());
    }
}

TEST_CASE("modulus tie with a complex pair is reported as indeterminate") {
    // (t - 2)(t^2 + 4): the real root 2 is exactly tied in modulus with the
    // complex pair, which no amount of refinement can separate. The honest
    // verdict is indeterminate, not a guess.
    const auto res = has_perron_value(spec_of({-8, 4, -2, 1}), kTol);
    CHECK(res.verdict == Verdict::indeterminate);
}

TEST_CASE("spectral condition reports") {
    const auto ok = check_spectral_conditions(spec_of({-2, -1, 1}), RingMode::integer_ring, 12, 12,
                                              kTol);
    CHECK(ok.all_ok());
    CHECK(ok.net_traces.size() == 12);
    for (const auto& t : ok.net_traces) CHECK(t.sign() >= 0);

    const auto no_perron =
        check_spectral_conditions(spec_of({1, -2, 1}), RingMode::integer_ring, 8, 8, kTol);
    CHECK(no_perron.perron == Verdict::no);
    CHECK_FALSE(no_perron.all_ok());

    // non-integer coefficient in integer mode
    SpectrumDescriptor frac;
    frac.coeffs = {Rational(-1, 2), Rational(1)};
    const auto not_in_ring = check_spectral_conditions(frac, RingMode::integer_ring, 4, 4, kTol);
    CHECK_FALSE(not_in_ring.coeffs_in_ring_ok);
    const auto dense_ok = check_spectral_conditions(frac, RingMode::dense_ring, 4, 4, kTol);
    CHECK(dense_ok.coeffs_in_ring_ok);
    CHECK(dense_ok.all_ok());  // single root 1/2 > 0

    // dense-mode implication (ii): spectrum (1, -1) has tr_1 = 0, tr_2 = 2 > 0:
    // (i) holds, (ii) holds vacuously at n = 1
    const auto pm1 = check_spectral_conditions(spec_of({-1, 0, 1}), RingMode::dense_ring, 6, 6, kTol);
    CHECK(pm1.trace_conditions_ok);
    CHECK(pm1.perron == Verdict::no);  // modulus tie

    // negative trace fails (i): spectrum (-2, 1)
    const auto neg = check_spectral_conditions(spec_of({-2, 1, 1}), RingMode::dense_ring, 6, 6, kTol);
    CHECK_FALSE(neg.trace_conditions_ok);
}

TEST_CASE("primitivity certificates") {
    const auto c1 = is_primitive(mq(2, 2, {0, 1, 1, 1}));
    CHECK(c1.primitive);
    CHECK(c1.witness_power == 2);

    const auto c2 = is_primitive(mq(2, 2, {0, 1, 1, 0}));
    CHECK_FALSE(c2.primitive);
    CHECK(c2.strongly_connected);
    CHECK(c2.period == 2);

    const auto c3 = is_primitive(mq(2, 2, {1, 0, 0, 1}));
    CHECK_FALSE(c3.primitive);
    CHECK_FALSE(c3.strongly_connected);

    CHECK_FALSE(is_primitive(mq(1, 1, {0})).primitive);
    CHECK(is_primitive(mq(1, 1, {3})).primitive);

    CHECK_THROWS_AS(is_primitive(mq(2, 2, {0, -1, 1, 0})), error);

    // cross-check against direct powers up to the Wielandt bound
    testgen::Rng rng(73);
    for (int iter = 0; iter < 40; ++iter) {
        std::uniform_int_distribution<std::size_t> dn(1, 4);
        const std::size_t n = dn(rng);
        std::bernoulli_distribution edge(0.4);
        Matrix<Rational> a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (edge(rng)) a.at(i, j) = Rational(1);
        bool power_positive = false;
        std::size_t found = 0;
        Matrix<Rational> p = Matrix<Rational>::identity(n);
        for (std::size_t k = 1; k <= wielandt_bound(n) && !power_positive; ++k) {
            p = p * a;
            bool all = true;
            for (std::size_t i = 0; i < n && all; ++i)
                for (std::size_t j = 0; j < n && all; ++j)
                    if (!(p.at(i, j) > Rational(0))) all = false;
            if (all) {
                power_positive = true;
                found = k;
            }
        }
        const auto cert = is_primitive(a);
        CHECK(cert.primitive == power_positive);
        if (cert.primitive) CHECK(cert.witness_power == found);
    }
}

TEST_CASE("primitive assembly reproduces the block conjugation") {
    const auto res = primitive_assembly(mq(1, 1, {1}), mq(1, 1, {0}), Rational(1, 2));
    Matrix<Rational> expect(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) expect.at(i, j) = Rational(1, 2);
    CHECK(res.G == expect);
    CHECK(res.identities_ok);
    CHECK(res.g_cert.primitive);
    CHECK(res.upper_form.block(1, 0, 1, 1).is_zero_matrix());

    CHECK_THROWS_AS(primitive_assembly(mq(1, 1, {1}), mq(1, 1, {0}), Rational(3, 4)), error);
    CHECK_THROWS_AS(primitive_assembly(mq(1, 1, {1}), mq(1, 1, {0}), Rational(1, 3)), error);
    try {
        primitive_assembly(mq(1, 1, {1}), mq(1, 1, {1}), Rational(1, 2));  // m0 = c, c != 0
        FAIL("expected dominance failure");
    } catch (const error& e) {
        CHECK(e.code() == errc::nonnegativity_risk);
    }

    testgen::Rng rng(74);
    for (int iter = 0; iter < 20; ++iter) {
        std::uniform_int_distribution<std::size_t> dn(1, 3);
        std::uniform_int_distribution<long> dpos(1, 9), dnum(-3, 3);
        const std::size_t n = dn(rng);
        Matrix<Rational> c(n, n), m0(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                c.at(i, j) = Rational(dpos(rng));
                m0.at(i, j) = c.at(i, j) * Rational(dnum(rng), 9);  // |3 m0| <= c
            }
        const Rational eps = Rational(1, 3) + Rational(dpos(rng), 30);  // in (1/3, 2/3)
        const auto r = primitive_assembly(c, m0, eps);
        CHECK(r.identities_ok);
        CHECK(is_nonnegative(r.G));
        CHECK(r.g_cert.primitive);
    }
}
