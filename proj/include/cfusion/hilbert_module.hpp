#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cfusion/algebra.hpp"
#include "cfusion/linalg.hpp"

namespace cfusion {

/// Truncation geometry of the module: N fibers, fiber k of dimension m_k.
/// Quaternion fibers are one-dimensional.
class ModuleShape {
public:
    ModuleShape(ScalarKind kind, std::vector<std::size_t> dims);
    static ModuleShape uniform(ScalarKind kind, std::size_t fibers, std::size_t dim);

    [[nodiscard]] ScalarKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t fiber_count() const noexcept { return dims_.size(); }
    [[nodiscard]] std::size_t dim(std::size_t k) const { return dims_.at(k); }
    [[nodiscard]] std::span<const std::size_t> dims() const noexcept { return dims_; }
    [[nodiscard]] std::size_t total_dim() const;

    friend bool operator==(const ModuleShape &, const ModuleShape &) = default;

private:
    ScalarKind kind_;
    std::vector<std::size_t> dims_;
};

void require_same_shape(const ModuleShape &a, const ModuleShape &b);

/// Element of the fiberwise Hilbert module. Complex shapes hold one Eigen vector per
/// fiber; quaternion shapes hold one quaternion per fiber.
class ModuleVector {
public:
    ModuleVector(ModuleShape shape, std::vector<CVector> fibers);
    ModuleVector(ModuleShape shape, std::vector<Quaternion> fibers);
    static ModuleVector zeros(const ModuleShape &shape);

    [[nodiscard]] const ModuleShape &shape() const noexcept { return shape_; }
    [[nodiscard]] ScalarKind kind() const noexcept { return shape_.kind(); }
    [[nodiscard]] std::size_t fiber_count() const noexcept { return shape_.fiber_count(); }
    [[nodiscard]] const CVector &complex_fiber(std::size_t k) const { return complex_.at(k); }
    [[nodiscard]] const Quaternion &quaternion_fiber(std::size_t k) const { return quaternion_.at(k); }
    /// Euclidean length of fiber k.
    [[nodiscard]] double fiber_norm(std::size_t k) const;

    friend ModuleVector operator+(const ModuleVector &a, const ModuleVector &b);
    friend ModuleVector operator-(const ModuleVector &a, const ModuleVector &b);
    friend ModuleVector operator*(double s, const ModuleVector &a);

private:
    ModuleShape shape_;
    std::vector<CVector> complex_;
    std::vector<Quaternion> quaternion_;
};

/// Algebra-valued inner product, linear in the first argument:
/// fiber k is sum_i x_{k,i} * conj(y_{k,i}).
[[nodiscard]] AlgebraElement inner_product(const ModuleVector &x, const ModuleVector &y);

/// |x|^2 = <x, x>.
[[nodiscard]] AlgebraElement abs_squared(const ModuleVector &x);

/// ||x|| = ||<x,x>||^{1/2} = max_k |x_k|_2.
[[nodiscard]] double module_norm(const ModuleVector &x);

/// a o x, fiberwise left multiplication.
[[nodiscard]] ModuleVector left_action(const AlgebraElement &a, const ModuleVector &x);

/// Finite truncation of l2(H): a list of module vectors sharing one shape.
struct ModuleSequence {
    std::vector<ModuleVector> entries;
};

/// sum_n <x_n, y_n>.
[[nodiscard]] AlgebraElement inner_product(const ModuleSequence &x, const ModuleSequence &y);
[[nodiscard]] double sequence_norm(const ModuleSequence &y);

} // namespace cfusion
