#include "cfusion/morphism.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cfusion {

namespace {

void check_scales(const ModuleShape &shape, const std::vector<double> &scales) {
    if (scales.size() != shape.fiber_count()) throw Error(ErrorCode::ShapeMismatch, "one scale per fiber required");
    for (double c : scales) {
        // a zero scale would make the map non-bijective
        if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "map scales must be finite and > 0");
    }
}

} // namespace

OrthoMap::OrthoMap(ModuleShape shape, std::vector<double> scales, std::vector<CMatrix> rotations,
                   std::vector<Quaternion> units)
    : shape_(std::move(shape)), scales_(std::move(scales)), rotations_(std::move(rotations)), units_(std::move(units)) {}

OrthoMap OrthoMap::complex(const ModuleShape &shape, std::vector<double> scales, std::vector<CMatrix> rotations) {
    if (shape.kind() != ScalarKind::Complex) throw Error(ErrorCode::ShapeMismatch, "complex map on a quaternion shape");
    check_scales(shape, scales);
    if (rotations.size() != shape.fiber_count()) throw Error(ErrorCode::ShapeMismatch, "one rotation per fiber required");
    for (std::size_t k = 0; k < rotations.size(); ++k) {
        const auto m = static_cast<Eigen::Index>(shape.dim(k));
        const auto &r = rotations[k];
        if (r.rows() != m || r.cols() != m)
            throw Error(ErrorCode::ShapeMismatch, "rotation for fiber " + std::to_string(k) + " has wrong size");
        if (linalg::max_abs(r.adjoint() * r - CMatrix::Identity(m, m)) > 1e-10)
            throw Error(ErrorCode::InvalidArgument, "rotation for fiber " + std::to_string(k) + " is not unitary");
    }
    return {shape, std::move(scales), std::move(rotations), {}};
}

OrthoMap OrthoMap::quaternion(const ModuleShape &shape, std::vector<double> scales, std::vector<Quaternion> rotations) {
    if (shape.kind() != ScalarKind::Quaternion) throw Error(ErrorCode::ShapeMismatch, "quaternion map on a complex shape");
    check_scales(shape, scales);
    if (rotations.size() != shape.fiber_count()) throw Error(ErrorCode::ShapeMismatch, "one rotation per fiber required");
    for (const auto &u : rotations) {
        if (std::abs(u.abs() - 1.0) > 1e-12) throw Error(ErrorCode::InvalidArgument, "quaternion rotations must be unit");
    }
    return {shape, std::move(scales), {}, std::move(rotations)};
}

OrthoMap OrthoMap::identity(const ModuleShape &shape) {
    return scaling(shape, std::vector<double>(shape.fiber_count(), 1.0));
}

OrthoMap OrthoMap::scaling(const ModuleShape &shape, std::vector<double> scales) {
    if (shape.kind() == ScalarKind::Quaternion)
        return quaternion(shape, std::move(scales), std::vector<Quaternion>(shape.fiber_count(), Quaternion(1.0)));
    std::vector<CMatrix> rot;
    for (auto m : shape.dims()) rot.push_back(CMatrix::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)));
    return complex(shape, std::move(scales), std::move(rot));
}

OrthoMap OrthoMap::inverse() const {
    std::vector<double> inv(scales_.size());
    std::transform(scales_.begin(), scales_.end(), inv.begin(), [](double c) { return 1.0 / c; });
    std::vector<CMatrix> rot;
    rot.reserve(rotations_.size());
    for (const auto &r : rotations_) rot.push_back(r.adjoint());
    std::vector<Quaternion> units;
    units.reserve(units_.size());
    for (const auto &u : units_) units.push_back(u.conj());
    return {shape_, std::move(inv), std::move(rot), std::move(units)};
}

ModuleVector apply_map(const OrthoMap &psi, const ModuleVector &x) {
    require_same_shape(psi.shape(), x.shape());
    const std::size_t n = x.fiber_count();
    if (x.kind() == ScalarKind::Complex) {
        std::vector<CVector> out(n);
        for (std::size_t k = 0; k < n; ++k) out[k] = psi.scale(k) * (psi.rotation(k) * x.complex_fiber(k));
        return {x.shape(), std::move(out)};
    }
    std::vector<Quaternion> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = psi.scale(k) * (x.quaternion_fiber(k) * psi.unit(k));
    return {x.shape(), std::move(out)};
}

AlgebraElement nu_of(const OrthoMap &psi) {
    std::vector<double> nu(psi.shape().fiber_count());
    for (std::size_t k = 0; k < nu.size(); ++k) nu[k] = psi.scale(k) * psi.scale(k);
    return AlgebraElement::from_real(psi.shape().kind(), nu);
}

Submodule transport_submodule(const OrthoMap &psi, const Submodule &v) {
    require_same_shape(psi.shape(), v.shape());
    // Quaternion selectors commute with right multiplication, so they are fixed.
    if (v.shape().kind() == ScalarKind::Quaternion) return v;
    std::vector<CMatrix> p;
    p.reserve(v.shape().fiber_count());
    for (std::size_t k = 0; k < v.shape().fiber_count(); ++k) {
        const auto &r = psi.rotation(k);
        p.push_back(r * v.projection(k) * r.adjoint());
    }
    return Submodule::from_projections(v.shape(), std::move(p));
}

WeightedFrame transport_frame(const OrthoMap &psi, const WeightedFrame &f) {
    if (!frame_bounds(f).is_frame) throw Error(ErrorCode::NotAFrame, "only frames can be transported");
    std::vector<Submodule> subs;
    subs.reserve(f.size());
    for (const auto &v : f.submodules()) subs.push_back(transport_submodule(psi, v));
    return {std::move(subs), {f.weights().begin(), f.weights().end()}};
}

PullbackBounds pullback_bounds(const OrthoMap &psi, const WeightedFrame &g) {
    require_same_shape(psi.shape(), g.shape());
    const auto &s = g.frame_operator();
    const std::size_t nf = g.shape().fiber_count();
    std::vector<double> lo(nf), hi(nf);
    for (std::size_t k = 0; k < nf; ++k) {
        const double c2 = psi.scale(k) * psi.scale(k);
        // <S Psi x, Psi x> = c^2 <R^H S R x, x>; right quaternion rotations drop out of |.|^2
        const CMatrix pulled = g.shape().kind() == ScalarKind::Complex
                                   ? CMatrix(c2 * (psi.rotation(k).adjoint() * s.blocks[k] * psi.rotation(k)))
                                   : CMatrix(c2 * s.blocks[k]);
        const auto r = linalg::hermitian_extremes(pulled);
        lo[k] = std::sqrt(std::max(0.0, r.min));
        hi[k] = std::sqrt(std::max(0.0, r.max));
    }
    return {AlgebraElement::from_real(g.shape().kind(), lo), AlgebraElement::from_real(g.shape().kind(), hi)};
}

} // namespace cfusion
