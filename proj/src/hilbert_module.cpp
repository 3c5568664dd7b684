#include "cfusion/hilbert_module.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cfusion {

ModuleShape::ModuleShape(ScalarKind kind, std::vector<std::size_t> dims) : kind_(kind), dims_(std::move(dims)) {
    if (dims_.empty()) throw Error(ErrorCode::InvalidArgument, "module shape needs at least one fiber");
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (dims_[k] == 0) throw Error(ErrorCode::InvalidArgument, "fiber " + std::to_string(k) + " has dimension 0");
        if (kind_ == ScalarKind::Quaternion && dims_[k] != 1)
            throw Error(ErrorCode::QuaternionUnsupported, "quaternion fibers must be one-dimensional");
    }
}

ModuleShape ModuleShape::uniform(ScalarKind kind, std::size_t fibers, std::size_t dim) {
    return {kind, std::vector<std::size_t>(fibers, dim)};
}

std::size_t ModuleShape::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }

void require_same_shape(const ModuleShape &a, const ModuleShape &b) {
    if (!(a == b)) throw Error(ErrorCode::ShapeMismatch, "module shapes differ");
}

ModuleVector::ModuleVector(ModuleShape shape, std::vector<CVector> fibers)
    : shape_(std::move(shape)), complex_(std::move(fibers)) {
    if (shape_.kind() != ScalarKind::Complex)
        throw Error(ErrorCode::ShapeMismatch, "complex fibers given for a quaternion shape");
    if (complex_.size() != shape_.fiber_count()) throw Error(ErrorCode::ShapeMismatch, "fiber count mismatch");
    for (std::size_t k = 0; k < complex_.size(); ++k) {
        if (static_cast<std::size_t>(complex_[k].size()) != shape_.dim(k))
            throw Error(ErrorCode::ShapeMismatch, "fiber " + std::to_string(k) + " has the wrong length");
    }
}

ModuleVector::ModuleVector(ModuleShape shape, std::vector<Quaternion> fibers)
    : shape_(std::move(shape)), quaternion_(std::move(fibers)) {
    if (shape_.kind() != ScalarKind::Quaternion)
        throw Error(ErrorCode::ShapeMismatch, "quaternion fibers given for a complex shape");
    if (quaternion_.size() != shape_.fiber_count()) throw Error(ErrorCode::ShapeMismatch, "fiber count mismatch");
}

ModuleVector ModuleVector::zeros(const ModuleShape &shape) {
    if (shape.kind() == ScalarKind::Quaternion)
        return {shape, std::vector<Quaternion>(shape.fiber_count())};
    std::vector<CVector> f;
    f.reserve(shape.fiber_count());
    for (auto m : shape.dims()) f.push_back(CVector::Zero(static_cast<Eigen::Index>(m)));
    return {shape, std::move(f)};
}

double ModuleVector::fiber_norm(std::size_t k) const {
    return kind() == ScalarKind::Complex ? complex_.at(k).norm() : quaternion_.at(k).abs();
}

namespace {

template <typename CombineC, typename CombineQ>
ModuleVector combine(const ModuleVector &a, const ModuleVector &b, CombineC fc, CombineQ fq) {
    require_same_shape(a.shape(), b.shape());
    const std::size_t n = a.fiber_count();
    if (a.kind() == ScalarKind::Complex) {
        std::vector<CVector> out(n);
        for (std::size_t k = 0; k < n; ++k) out[k] = fc(a.complex_fiber(k), b.complex_fiber(k));
        return {a.shape(), std::move(out)};
    }
    std::vector<Quaternion> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = fq(a.quaternion_fiber(k), b.quaternion_fiber(k));
    return {a.shape(), std::move(out)};
}

void require_action_shape(const AlgebraElement &a, const ModuleShape &s) {
    if (a.kind() != s.kind() || a.size() != s.fiber_count())
        throw Error(ErrorCode::ShapeMismatch, "algebra element does not match module shape");
}

} // namespace

ModuleVector operator+(const ModuleVector &a, const ModuleVector &b) {
    return combine(
        a, b, [](const CVector &p, const CVector &q) -> CVector { return p + q; },
        [](const Quaternion &p, const Quaternion &q) { return p + q; });
}

ModuleVector operator-(const ModuleVector &a, const ModuleVector &b) {
    return combine(
        a, b, [](const CVector &p, const CVector &q) -> CVector { return p - q; },
        [](const Quaternion &p, const Quaternion &q) { return p - q; });
}

ModuleVector operator*(double s, const ModuleVector &a) {
    return combine(
        a, a, [s](const CVector &p, const CVector &) -> CVector { return s * p; },
        [s](const Quaternion &p, const Quaternion &) { return s * p; });
}

AlgebraElement inner_product(const ModuleVector &x, const ModuleVector &y) {
    require_same_shape(x.shape(), y.shape());
    const std::size_t n = x.fiber_count();
    std::vector<FiberScalar> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (x.kind() == ScalarKind::Complex)
            out[k] = FiberScalar(y.complex_fiber(k).dot(x.complex_fiber(k)));  // Eigen conjugates the left operand
        else
            out[k] = x.quaternion_fiber(k) * y.quaternion_fiber(k).conj();
    }
    return {x.kind(), std::move(out)};
}

AlgebraElement abs_squared(const ModuleVector &x) { return inner_product(x, x); }

double module_norm(const ModuleVector &x) {
    double m = 0.0;
    for (std::size_t k = 0; k < x.fiber_count(); ++k) m = std::max(m, x.fiber_norm(k));
    return m;
}

ModuleVector left_action(const AlgebraElement &a, const ModuleVector &x) {
    require_action_shape(a, x.shape());
    const std::size_t n = x.fiber_count();
    if (x.kind() == ScalarKind::Complex) {
        std::vector<CVector> out(n);
        for (std::size_t k = 0; k < n; ++k) out[k] = a[k].as_complex() * x.complex_fiber(k);
        return {x.shape(), std::move(out)};
    }
    std::vector<Quaternion> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * x.quaternion_fiber(k);
    return {x.shape(), std::move(out)};
}

AlgebraElement inner_product(const ModuleSequence &x, const ModuleSequence &y) {
    if (x.entries.size() != y.entries.size()) throw Error(ErrorCode::LengthMismatch, "sequence lengths differ");
    if (x.entries.empty()) throw Error(ErrorCode::InvalidArgument, "empty module sequence");
    AlgebraElement acc = inner_product(x.entries[0], y.entries[0]);
    for (std::size_t n = 1; n < x.entries.size(); ++n) acc = acc + inner_product(x.entries[n], y.entries[n]);
    return acc;
}

double sequence_norm(const ModuleSequence &y) { return std::sqrt(alg_norm(inner_product(y, y))); }

} // namespace cfusion
