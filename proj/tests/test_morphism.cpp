#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "test_support.hpp"

using namespace cfusion;
using namespace testsupport;
using C = std::complex<double>;

namespace {

const ModuleShape kPlane(ScalarKind::Complex, {2});

CVector cv(std::initializer_list<C> v) {
    CVector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (const auto &e : v) out(i++) = e;
    return out;
}

WeightedFrame three_lines() {
    std::vector<Submodule> subs{Submodule::span(kPlane, {{cv({1, 0})}}), Submodule::span(kPlane, {{cv({0, 1})}}),
                                Submodule::span(kPlane, {{cv({1, 1})}})};
    return {subs, std::vector<AlgebraElement>(3, AlgebraElement::one(ScalarKind::Complex, 1))};
}

} // namespace

TEST_CASE("map construction") {
    CHECK_THROWS_AS(OrthoMap::complex(kPlane, {0.0}, {CMatrix::Identity(2, 2)}), Error);
    CHECK_THROWS_AS(OrthoMap::complex(kPlane, {1.0}, {CMatrix::Constant(2, 2, 1.0)}), Error);
    const ModuleShape q(ScalarKind::Quaternion, {1});
    CHECK_THROWS_AS(OrthoMap::quaternion(q, {1.0}, {Quaternion(2)}), Error);
    CHECK_THROWS_AS(OrthoMap::complex(q, {1.0}, {CMatrix::Identity(1, 1)}), Error);
}

TEST_CASE("apply map examples") {
    const ModuleVector x(kPlane, {cv({{1, 1}, {0, -2}})});
    CHECK(max_diff(apply_map(OrthoMap::identity(kPlane), x), x) == 0.0);
    const ModuleVector e1(kPlane, {cv({1, 0})});
    CHECK(max_diff(apply_map(OrthoMap::scaling(kPlane, {2.0}), e1), ModuleVector(kPlane, {cv({2, 0})})) == 0.0);
}

TEST_CASE("nu") {
    const auto s = ModuleShape::uniform(ScalarKind::Complex, 2, 1);
    CHECK(max_fiber_diff(nu_of(OrthoMap::identity(s)), AlgebraElement::one(ScalarKind::Complex, 2)) == 0.0);
    const auto nu = nu_of(OrthoMap::scaling(s, {2.0, 3.0}));
    CHECK(nu[0].w == 4.0);
    CHECK(nu[1].w == 9.0);
    const auto root = sqrt_positive(nu);
    CHECK(root[0].w == 2.0);
    CHECK(root[1].w == 3.0);
    CHECK(is_central(nu));
    CHECK(is_strictly_positive(nu));
}

TEST_CASE("maps preserve orthogonality up to nu and commute with central scalars") {
    Rng rng(41);
    for (auto kind : {ScalarKind::Complex, ScalarKind::Quaternion}) {
        for (int t = 0; t < 300; ++t) {
            const auto shape = random_shape(kind, rng);
            const auto psi = random_map(shape, rng);
            const auto x = random_vector(shape, rng), y = random_vector(shape, rng);
            const auto nu = nu_of(psi);
            const double scale = 1 + alg_norm(nu) * module_norm(x) * module_norm(y);
            CHECK(max_fiber_diff(inner_product(apply_map(psi, x), apply_map(psi, y)), nu * inner_product(x, y)) <= 1e-12 * scale);
            const auto a = kind == ScalarKind::Complex ? random_element(kind, shape.fiber_count(), rng)
                                                       : random_element(kind, shape.fiber_count(), rng);
            // linear over the whole algebra, not just its center
            CHECK(max_diff(apply_map(psi, left_action(a, x)), left_action(a, apply_map(psi, x))) <=
                  1e-12 * (1 + alg_norm(a)) * scale);
            CHECK(max_diff(apply_map(psi.inverse(), apply_map(psi, x)), x) <= 1e-12 * (1 + module_norm(x)));
        }
    }
}

TEST_CASE("transport examples") {
    const auto f = three_lines();
    const auto same = transport_frame(OrthoMap::identity(kPlane), f);
    for (std::size_t n = 0; n < f.size(); ++n)
        CHECK(linalg::max_abs(same.submodules()[n].projection(0) - f.submodules()[n].projection(0)) <= 1e-15);

    const WeightedFrame p({Submodule::full(kPlane)}, {AlgebraElement::one(ScalarKind::Complex, 1)});
    const auto psi = OrthoMap::scaling(kPlane, {2.0});
    const auto pb = pullback_bounds(psi, transport_frame(psi, p));
    CHECK(pb.lower[0].w == doctest::Approx(2.0));
    CHECK(pb.upper[0].w == doctest::Approx(2.0));

    const double c = std::cos(std::numbers::pi / 4), s = std::sin(std::numbers::pi / 4);
    const auto rot = OrthoMap::complex(kPlane, {1.0}, {(CMatrix(2, 2) << c, -s, s, c).finished()});
    const auto g = transport_frame(rot, f);
    const auto [lo, hi] = eig2(naive_frame_fiber(g, 0));
    CHECK(lo == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hi == doctest::Approx(2.0).epsilon(1e-12));
    const auto b = frame_bounds(g);
    CHECK(b.c == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.d == doctest::Approx(2.0).epsilon(1e-12));

    const std::vector<double> ones{1, 1};
    const auto gap = block_frame(ScalarKind::Complex, 2, {{0}}, {ones});
    CHECK_THROWS_AS((void)transport_frame(OrthoMap::identity(gap.shape()), gap), Error);
}

TEST_CASE("transport laws on random frames") {
    Rng rng(42);
    for (auto kind : {ScalarKind::Complex, ScalarKind::Quaternion}) {
        for (int t = 0; t < 100; ++t) {
            const auto shape = random_shape(kind, rng);
            const auto f = random_frame(shape, pick(rng, 1, 6), rng);
            const auto psi = random_map(shape, rng);
            const auto g = transport_frame(psi, f);
            for (const auto &u : g.submodules()) CHECK(validate_projection(u, 1e-12));

            const auto src = frame_bounds(f);
            const auto root = sqrt_positive(nu_of(psi));
            const auto pb = pullback_bounds(psi, g);
            CHECK(max_fiber_diff(pb.lower, root * src.lower) <= 1e-10);
            CHECK(max_fiber_diff(pb.upper, root * src.upper) <= 1e-10);
            // the unitary part leaves the intrinsic spectrum alone
            const auto gb = frame_bounds(g);
            CHECK(max_fiber_diff(gb.lower, src.lower) <= 1e-10);
            CHECK(max_fiber_diff(gb.upper, src.upper) <= 1e-10);

            const auto back = transport_frame(psi.inverse(), g);
            for (std::size_t n = 0; n < f.size(); ++n)
                for (std::size_t k = 0; k < shape.fiber_count(); ++k)
                    CHECK(linalg::max_abs(back.submodules()[n].projection(k) - f.submodules()[n].projection(k)) <= 1e-10);

            // measured against the preimage, the frame inequality holds with nu^{1/2} A, nu^{1/2} B
            for (int s = 0; s < 3; ++s) {
                const auto y = random_vector(shape, rng);
                const auto pre = apply_map(psi.inverse(), y);
                auto energy = AlgebraElement::zero(kind, shape.fiber_count());
                for (std::size_t n = 0; n < g.size(); ++n)
                    energy = energy + g.weights()[n] * g.weights()[n] * abs_squared(project(g.submodules()[n], y));
                const double tol = 1e-10 * (1 + alg_norm(energy));
                CHECK(order_leq(abs_squared(left_action(pb.lower, pre)), energy, tol));
                CHECK(order_leq(energy, abs_squared(left_action(pb.upper, pre)), tol));
            }
        }
    }
}
