#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "test_support.hpp"
#include "cfusion/perturbation.hpp"

using namespace cfusion;
using namespace testsupport;
using C = std::complex<double>;

namespace {

const ModuleShape kPlane(ScalarKind::Complex, {2});
constexpr double kHalfPi = std::numbers::pi / 2;

CVector cv(std::initializer_list<C> v) {
    CVector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (const auto &e : v) out(i++) = e;
    return out;
}

CVector unit(std::size_t m, std::size_t i) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(m));
    v(static_cast<Eigen::Index>(i)) = 1.0;
    return v;
}

Submodule line(double theta) { return Submodule::span(kPlane, {{cv({std::cos(theta), std::sin(theta)})}}); }

WeightedFrame three_lines() {
    std::vector<Submodule> subs{line(0), line(kHalfPi), Submodule::span(kPlane, {{cv({1, 1})}})};
    return {subs, std::vector<AlgebraElement>(3, AlgebraElement::one(ScalarKind::Complex, 1))};
}

} // namespace

TEST_CASE("projection distance") {
    CHECK(proj_distance(line(0.4), line(0.4)) == 0.0);
    // eigenvalues of P_U - P_V are +-sin(theta)
    const double theta = std::numbers::pi / 6;
    CHECK(proj_distance(line(0), line(theta)) == doctest::Approx(std::sin(theta)).epsilon(1e-14));
    CHECK(proj_distance(line(0), line(theta)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS((void)proj_distance(line(0), Submodule::full(ModuleShape(ScalarKind::Complex, {3}))), Error);
}

TEST_CASE("non-orthogonal subspaces at distance one") {
    const ModuleShape s(ScalarKind::Complex, {8});
    const auto u0 = Submodule::span(s, {{unit(8, 3), unit(8, 7)}});
    const auto v0 = Submodule::span(s, {{unit(8, 1), unit(8, 3), unit(8, 5), unit(8, 7)}});
    CHECK(proj_distance(u0, v0) == 1.0);
    CHECK(angle(u0, v0) == kHalfPi);
    // e4 lies in both
    const ModuleVector e4(s, {unit(8, 3)});
    CHECK(std::abs(inner_product(project(u0, e4), project(v0, e4))[0].w - 1.0) < 1e-15);
}

TEST_CASE("angle") {
    CHECK(angle(line(0.2), line(0.2)) == 0.0);
    CHECK(angle(line(0), line(kHalfPi)) == kHalfPi);
    CHECK(angle(line(0), line(std::numbers::pi / 6)) == doctest::Approx(std::numbers::pi / 6).epsilon(1e-13));
}

TEST_CASE("ecart and balls") {
    const std::vector<Submodule> us{line(0), line(0)}, vs{line(std::numbers::pi / 6), line(std::numbers::pi / 6)};
    const std::vector<double> w{1, 1};
    CHECK(ecart(us, us, w) == 0.0);
    CHECK(ecart(us, vs, w) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    const std::vector<double> four{4, 4};
    CHECK(ecart(us, vs, four) == doctest::Approx(2 * std::sqrt(0.5)).epsilon(1e-14));
    CHECK(squared_weight_norms(std::vector<AlgebraElement>{AlgebraElement::constant(ScalarKind::Complex, 2, 2.0)})[0] == 4.0);
    CHECK_THROWS_AS((void)ecart(us, std::vector<Submodule>{line(0)}, w), Error);

    CHECK(ball_membership(us, 0.1, us, w));
    CHECK_FALSE(ball_membership(us, 0.0, us, w));
    const auto f = three_lines();
    const auto rotated = rotate_all(f, 0.3);
    const std::vector<double> ones{1, 1, 1};
    CHECK(ball_membership(f.submodules(), 1.0, rotated, ones));
    CHECK_THROWS_AS((void)ball_membership(us, -1.0, us, w), Error);
}

TEST_CASE("perturbation check examples") {
    const auto f = three_lines();
    const auto same = perturbation_check(f, f.submodules());
    CHECK(same.ecart == 0.0);
    CHECK(same.guaranteed);
    CHECK(same.confirmed);
    REQUIRE(same.perturbed);
    CHECK(same.perturbed->c == doctest::Approx(frame_bounds(f).c).epsilon(1e-14));

    const auto small = perturbation_check(f, rotate_all(f, 0.3), 2.0);
    CHECK(small.threshold == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(small.ecart == doctest::Approx(std::sqrt(3.0) * std::sin(0.3)).epsilon(1e-13));
    CHECK(small.ecart == doctest::Approx(0.5118).epsilon(1e-4));
    CHECK(small.guaranteed);
    CHECK(small.confirmed);
    CHECK(small.predicted_lower == doctest::Approx(std::pow(1 - small.ecart, 2)));
    CHECK(small.predicted_upper == doctest::Approx(std::pow(std::sqrt(2.0) + small.ecart, 2)));
    CHECK(small.criteria_consistent);

    const auto far = perturbation_check(f, rotate_all(f, kHalfPi));
    CHECK(far.ecart == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK_FALSE(far.guaranteed);
    CHECK_FALSE(far.perturbed);

    const std::vector<double> ones{1, 1, 1};
    const auto gap = block_frame(ScalarKind::Complex, 3, {{0}, {1}}, {ones, ones});
    CHECK_THROWS_AS((void)perturbation_check(gap, gap.submodules()), Error);
}

TEST_CASE("ties at the threshold are not guaranteed") {
    const ModuleShape s(ScalarKind::Complex, {8});
    const auto u0 = Submodule::span(s, {{unit(8, 3), unit(8, 7)}});
    const auto v0 = Submodule::span(s, {{unit(8, 1), unit(8, 3), unit(8, 5), unit(8, 7)}});
    const WeightedFrame f({u0, complement(u0)}, std::vector<AlgebraElement>(2, AlgebraElement::one(ScalarKind::Complex, 1)));
    const std::vector<Submodule> ks{v0, complement(u0)};
    const auto r = perturbation_check(f, ks);
    CHECK(r.ecart == 1.0);
    CHECK(r.threshold == 1.0);
    CHECK_FALSE(r.guaranteed);
}

TEST_CASE("angle criteria") {
    const auto f = three_lines();
    const auto zero = angle_criteria(f, f.submodules(), 2.0);
    CHECK(zero.weighted.holds);
    CHECK(zero.bounded.holds);
    CHECK(zero.holder->holds);
    CHECK(zero.weighted.lhs == 0.0);

    const auto c = angle_criteria(f, rotate_all(f, 0.3), 2.0);
    CHECK(c.weighted.lhs == doctest::Approx(0.27).epsilon(1e-12));
    CHECK(c.weighted.rhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.weighted.holds);
    CHECK(c.bounded.holds);
    REQUIRE(c.holder);
    // sum theta^4 against (1 / ||(1,1,1)||_2)^2
    CHECK(c.holder->lhs == doctest::Approx(3 * std::pow(0.3, 4)).epsilon(1e-12));
    CHECK(c.holder->rhs == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(c.holder->holds);
    CHECK_FALSE(angle_criteria(f, rotate_all(f, 0.3)).holder);
    CHECK_THROWS_AS((void)angle_criteria(f, f.submodules(), 1.0), Error);
}

TEST_CASE("distance axioms on random triples") {
    Rng rng(51);
    for (int t = 0; t < 500; ++t) {
        const auto shape = random_shape(t % 3 ? ScalarKind::Complex : ScalarKind::Quaternion, rng);
        const auto a = random_submodule(shape, rng), b = random_submodule(shape, rng), c = random_submodule(shape, rng);
        const double ab = proj_distance(a, b), ba = proj_distance(b, a);
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-14));
        CHECK(ab <= proj_distance(a, c) + proj_distance(c, b) + 1e-12);
        CHECK(angle(a, b) >= 0.0);
        CHECK(angle(a, b) <= kHalfPi);
        CHECK(proj_distance(a, a) == 0.0);
        if (ab <= 1e-12)
            for (std::size_t k = 0; k < shape.fiber_count(); ++k)
                CHECK(linalg::max_abs(a.projection(k) - b.projection(k)) <= 1e-10);
        // an orthogonal nonzero pair
        const auto cc = complement(a);
        bool both_nonzero = false;
        for (std::size_t k = 0; k < shape.fiber_count(); ++k)
            both_nonzero = both_nonzero || (a.projection(k).trace().real() > 0.5 && cc.projection(k).trace().real() > 0.5);
        if (both_nonzero) CHECK(angle(a, cc) == kHalfPi);
    }
}

TEST_CASE("ecart is symmetric and satisfies the triangle inequality") {
    Rng rng(52);
    for (int t = 0; t < 200; ++t) {
        const auto shape = random_shape(ScalarKind::Complex, rng);
        const auto len = pick(rng, 1, 5);
        std::vector<Submodule> a, b, c;
        std::vector<double> w;
        for (std::size_t n = 0; n < len; ++n) {
            a.push_back(random_submodule(shape, rng));
            b.push_back(random_submodule(shape, rng));
            c.push_back(random_submodule(shape, rng));
            w.push_back(uniform(rng, 0.1, 4.0));
        }
        CHECK(ecart(a, b, w) == doctest::Approx(ecart(b, a, w)).epsilon(1e-14));
        CHECK(ecart(a, b, w) <= ecart(a, c, w) + ecart(c, b, w) + 1e-12);
    }
}

TEST_CASE("random rotations stay within budget and inside the open ball") {
    Rng rng(53);
    for (int t = 0; t < 100; ++t) {
        const auto shape = random_shape(ScalarKind::Complex, rng);
        const auto f = random_frame(shape, pick(rng, 1, 6), rng, 1e3);
        const double theta = rotation_budget(f);
        const auto ks = random_rotations(f, theta, rng);
        const auto r = perturbation_check(f, ks, 2.0);
        CHECK(r.ecart <= 0.9 * r.threshold + 1e-12);
        CHECK(r.guaranteed);
        CHECK(r.confirmed);
        CHECK(r.criteria_consistent);
        for (std::size_t n = 0; n < f.size(); ++n) CHECK(r.angles[n] <= theta + 1e-12);
        CHECK(ball_membership(f.submodules(), r.threshold, ks, r.weights));
    }
}
