#include "cfusion/submodule.hpp"

#include <string>

namespace cfusion {

Submodule::Submodule(ModuleShape shape, std::vector<CMatrix> projections)
    : shape_(std::move(shape)), projections_(std::move(projections)) {
    if (projections_.size() != shape_.fiber_count())
        throw Error(ErrorCode::ShapeMismatch, "one projection per fiber required");
    for (std::size_t k = 0; k < projections_.size(); ++k) {
        const auto m = static_cast<Eigen::Index>(shape_.dim(k));
        if (projections_[k].rows() != m || projections_[k].cols() != m)
            throw Error(ErrorCode::ShapeMismatch, "projection for fiber " + std::to_string(k) + " has wrong size");
        if (shape_.kind() == ScalarKind::Quaternion && projections_[k](0, 0).imag() != 0.0)
            throw Error(ErrorCode::QuaternionUnsupported, "quaternion fiber projections must be real");
    }
}

Submodule Submodule::block(const ModuleShape &shape, std::span<const std::size_t> index_set) {
    std::vector<bool> keep(shape.fiber_count(), false);
    for (auto k : index_set) {
        if (k >= shape.fiber_count())
            throw Error(ErrorCode::IndexOutOfRange, "fiber index " + std::to_string(k) + " out of range");
        keep[k] = true;
    }
    std::vector<CMatrix> p;
    p.reserve(shape.fiber_count());
    for (std::size_t k = 0; k < shape.fiber_count(); ++k) {
        const auto m = static_cast<Eigen::Index>(shape.dim(k));
        p.push_back(keep[k] ? CMatrix(CMatrix::Identity(m, m)) : CMatrix(CMatrix::Zero(m, m)));
    }
    return {shape, std::move(p)};
}

Submodule Submodule::span(const ModuleShape &shape, const std::vector<std::vector<CVector>> &fiber_spanning_sets) {
    if (shape.kind() != ScalarKind::Complex)
        throw Error(ErrorCode::QuaternionUnsupported, "span submodules need complex fibers");
    if (fiber_spanning_sets.size() != shape.fiber_count())
        throw Error(ErrorCode::ShapeMismatch, "one spanning set per fiber required");
    std::vector<CMatrix> p;
    p.reserve(shape.fiber_count());
    for (std::size_t k = 0; k < shape.fiber_count(); ++k) {
        for (const auto &v : fiber_spanning_sets[k]) {
            if (static_cast<std::size_t>(v.size()) != shape.dim(k))
                throw Error(ErrorCode::ShapeMismatch, "spanning vector in fiber " + std::to_string(k) + " has wrong length");
        }
        p.push_back(linalg::span_projector(shape.dim(k), fiber_spanning_sets[k]));
    }
    return {shape, std::move(p)};
}

Submodule Submodule::from_projections(const ModuleShape &shape, std::vector<CMatrix> projections) {
    return {shape, std::move(projections)};
}

Submodule Submodule::from_selectors(const ModuleShape &shape, std::span<const std::uint8_t> selectors) {
    if (selectors.size() != shape.fiber_count()) throw Error(ErrorCode::ShapeMismatch, "one selector per fiber required");
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < selectors.size(); ++k) {
        if (selectors[k] > 1) throw Error(ErrorCode::InvalidArgument, "selector bits must be 0 or 1");
        if (selectors[k] == 1) idx.push_back(k);
    }
    return block(shape, idx);
}

Submodule Submodule::full(const ModuleShape &shape) {
    std::vector<std::size_t> all(shape.fiber_count());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    return block(shape, all);
}

Submodule Submodule::zero(const ModuleShape &shape) { return block(shape, std::span<const std::size_t>{}); }

ModuleVector project(const Submodule &u, const ModuleVector &x) {
    require_same_shape(u.shape(), x.shape());
    const std::size_t n = x.fiber_count();
    if (x.kind() == ScalarKind::Complex) {
        std::vector<CVector> out(n);
        for (std::size_t k = 0; k < n; ++k) out[k] = u.projection(k) * x.complex_fiber(k);
        return {x.shape(), std::move(out)};
    }
    std::vector<Quaternion> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = u.projection(k)(0, 0).real() * x.quaternion_fiber(k);
    return {x.shape(), std::move(out)};
}

Submodule complement(const Submodule &u) {
    std::vector<CMatrix> p;
    p.reserve(u.shape().fiber_count());
    for (const auto &pk : u.projections()) p.push_back(CMatrix::Identity(pk.rows(), pk.cols()) - pk);
    return Submodule::from_projections(u.shape(), std::move(p));
}

bool validate_projection(const Submodule &u, double tol) {
    for (const auto &p : u.projections()) {
        if (linalg::max_abs(p - p.adjoint()) > tol) return false;
        if (linalg::max_abs(p * p - p) > tol) return false;
    }
    return true;
}

} // namespace cfusion
