#include <cmath>
#include <complex>

#include "doctest.h"
#include "test_support.hpp"

using namespace cfusion;
using namespace testsupport;
using C = std::complex<double>;

namespace {

bool same(const Quaternion &a, const Quaternion &b, double tol = 1e-14) { return (a - b).abs() <= tol; }

AlgebraElement reals(std::initializer_list<double> v, ScalarKind kind = ScalarKind::Complex) {
    std::vector<double> x(v);
    return AlgebraElement::from_real(kind, x);
}

} // namespace

TEST_CASE("quaternion products") {
    const auto i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
    CHECK(same(i * j, k));
    CHECK(same(i * i, Quaternion(-1.0)));
    CHECK(same(j * k, i));
    CHECK(same(k * i, j));
    CHECK(same(i * j * k, Quaternion(-1.0)));
    CHECK(same(j * i, -k));
    const Quaternion a(1, 1, 0, 0), b(1, 0, 1, 0);
    CHECK(same(a * b, table_product(a, b)));
    CHECK(same(a * b, Quaternion(1, 1, 1, 1)));
}

TEST_CASE("quaternion product matches the basis table and is multiplicative") {
    Rng rng(11);
    for (int t = 0; t < 2000; ++t) {
        const auto a = random_quaternion(rng), b = random_quaternion(rng), c = random_quaternion(rng);
        CHECK(same(a * b, table_product(a, b), 1e-14));
        CHECK(same((a * b) * c, a * (b * c), 1e-13));
        CHECK(std::abs((a * b).abs() - a.abs() * b.abs()) <= 1e-13);
        CHECK(same(a * a.conj(), Quaternion(a.norm2()), 1e-13));
    }
}

TEST_CASE("construction rules") {
    CHECK_THROWS_AS(AlgebraElement(ScalarKind::Complex, {}), Error);
    try {
        (void)AlgebraElement(ScalarKind::Complex, {Quaternion(0, 0, 1, 0)});
        FAIL("expected ShapeMismatch");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::ShapeMismatch);
    }
    try {
        (void)(reals({1, 2}) + reals({1, 2}, ScalarKind::Quaternion));
        FAIL("expected ShapeMismatch");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::ShapeMismatch);
    }
    CHECK_THROWS_AS((void)(reals({1, 2}) * reals({1, 2, 3})), Error);
    CHECK(parse_scalar_kind("quaternion") == ScalarKind::Quaternion);
    CHECK_THROWS_AS((void)parse_scalar_kind("octonion"), Error);
}

TEST_CASE("star") {
    const std::vector<C> v{{1, 2}, {3, 0}};
    const auto s = star(AlgebraElement::from_complex(v));
    CHECK(same(s[0], Quaternion(1, -2)));
    CHECK(same(s[1], Quaternion(3)));
    const auto q = star(AlgebraElement::from_quaternions({Quaternion(1, 2, 3, 4)}));
    CHECK(same(q[0], Quaternion(1, -2, -3, -4)));
    const auto one = AlgebraElement::one(ScalarKind::Quaternion, 3);
    CHECK(max_fiber_diff(star(one), one) == 0.0);
}

TEST_CASE("norm") {
    CHECK(alg_norm(reals({1, 4, 9})) == 9.0);
    CHECK(alg_norm(AlgebraElement::zero(ScalarKind::Complex, 2)) == 0.0);
    CHECK(alg_norm(AlgebraElement::from_quaternions({Quaternion(1, 2, 3, 4)})) == doctest::Approx(std::sqrt(30.0)).epsilon(1e-15));
}

TEST_CASE("positivity classes") {
    CHECK(positivity_class(reals({1, 4, 9})) == PositivityClass::StrictlyPositive);
    CHECK(positivity_class(reals({0, 2})) == PositivityClass::Positive);
    const std::vector<C> v{{0, 1}, {1, 0}};
    CHECK(positivity_class(AlgebraElement::from_complex(v)) == PositivityClass::NotSelfAdjoint);
    CHECK(positivity_class(reals({-1, 2})) == PositivityClass::SelfAdjoint);
    CHECK(positivity_class(AlgebraElement::from_quaternions({Quaternion(2, 0, 1e-3, 0)})) == PositivityClass::NotSelfAdjoint);
    CHECK(is_positive(reals({0, 2})));
    CHECK_FALSE(is_strictly_positive(reals({0, 2})));
    // classes nest: within a loose tolerance a tiny imaginary part is ignored
    CHECK(positivity_class(AlgebraElement::from_quaternions({Quaternion(2, 1e-9, 0, 0)}), 1e-6) ==
          PositivityClass::StrictlyPositive);
}

TEST_CASE("square root") {
    const auto r = sqrt_positive(reals({1, 4, 9}));
    CHECK(max_fiber_diff(r, reals({1, 2, 3})) == 0.0);
    CHECK(max_fiber_diff(sqrt_positive(AlgebraElement::zero(ScalarKind::Complex, 2)), AlgebraElement::zero(ScalarKind::Complex, 2)) == 0.0);
    CHECK(sqrt_positive(reals({2}))[0].w == doctest::Approx(std::sqrt(2.0)).epsilon(1e-16));
    try {
        (void)sqrt_positive(reals({-1, 1}));
        FAIL("expected NotPositive");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::NotPositive);
    }
    CHECK(is_central(sqrt_positive(reals({1, 4}, ScalarKind::Quaternion))));
}

TEST_CASE("inverse") {
    CHECK(max_fiber_diff(invert(reals({1, 4})), reals({1, 0.25})) == 0.0);
    const auto one = AlgebraElement::one(ScalarKind::Complex, 2);
    CHECK(max_fiber_diff(invert(one), one) == 0.0);
    const auto qi = invert(AlgebraElement::from_quaternions({Quaternion::i()}));
    CHECK(same(qi[0], -Quaternion::i()));
    try {
        (void)invert(reals({1, 0}));
        FAIL("expected NotInvertible");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::NotInvertible);
    }
    const auto mu = reals({2, 0.5, 3});
    CHECK(1.0 / alg_norm(invert(mu)) == doctest::Approx(0.5));
}

TEST_CASE("order") {
    CHECK(order_leq(reals({1, 2, 3}), reals({2, 2, 5})));
    CHECK_FALSE(order_leq(reals({1, 2}), reals({2, 1})));
    const auto a = reals({1, 7});
    CHECK(order_leq(a, a));
    CHECK_THROWS_AS((void)order_leq(reals({1}), reals({1, 2})), Error);
}

TEST_CASE("centrality") {
    const std::vector<C> v{{1, 1}, {2, 0}};
    CHECK(is_central(AlgebraElement::from_complex(v)));
    CHECK(is_central(reals({1, 2}, ScalarKind::Quaternion)));
    const auto a = AlgebraElement::from_quaternions({Quaternion::i(), Quaternion(1)});
    CHECK_FALSE(is_central(a));
    // the witness: i does not commute with j
    CHECK_FALSE(same(table_product(Quaternion::i(), Quaternion::j()), table_product(Quaternion::j(), Quaternion::i())));
}

TEST_CASE("C*-identity, submultiplicativity, involution laws on random elements") {
    Rng rng(12);
    for (auto kind : {ScalarKind::Complex, ScalarKind::Quaternion}) {
        for (int t = 0; t < 1000; ++t) {
            const auto n = pick(rng, 1, 6);
            const auto a = random_element(kind, n, rng, 3.0), b = random_element(kind, n, rng, 3.0);
            const double na = alg_norm(a), nb = alg_norm(b);
            CHECK(alg_norm(star(a) * a) == doctest::Approx(na * na).epsilon(1e-12));
            CHECK(alg_norm(a * b) <= na * nb * (1 + 1e-12));
            CHECK(max_fiber_diff(star(star(a)), a) == 0.0);
            CHECK(max_fiber_diff(star(a * b), star(b) * star(a)) <= 1e-12 * (1 + na * nb));
        }
    }
}

TEST_CASE("square roots and monotone central multiplication on random elements") {
    Rng rng(13);
    for (auto kind : {ScalarKind::Complex, ScalarKind::Quaternion}) {
        for (int t = 0; t < 500; ++t) {
            const auto n = pick(rng, 1, 6);
            const auto p = random_positive(kind, n, rng);
            const auto r = sqrt_positive(p);
            CHECK(max_fiber_diff(r * r, p) <= 1e-12 * std::max(1.0, alg_norm(p)));
            CHECK(is_positive(r));

            const auto mu = random_weight(kind, n, rng);
            const auto a = random_element(kind, n, rng);
            const auto lo = star(a) * a;
            const auto hi = lo + random_positive(kind, n, rng);
            CHECK(order_leq(lo, hi));
            CHECK(order_leq(mu * lo, mu * hi));

            const double lower = 1.0 / alg_norm(invert(mu));
            CHECK(lower * alg_norm(a) <= alg_norm(mu * a) * (1 + 1e-12));
            CHECK(alg_norm(mu * a) <= alg_norm(mu) * alg_norm(a) * (1 + 1e-12));
        }
    }
}
