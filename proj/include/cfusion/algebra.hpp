#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cfusion/error.hpp"
#include "cfusion/quaternion.hpp"

namespace cfusion {

enum class ScalarKind { Complex, Quaternion };

std::string_view to_string(ScalarKind kind);
ScalarKind parse_scalar_kind(std::string_view text);

/// One fiber value. Complex-kind values are stored as quaternions in the (w, x) plane,
/// so a single arithmetic path serves both kinds.
using FiberScalar = Quaternion;

/// Element of the fiberwise algebra C^N or H^N: pointwise product, conjugation as
/// involution, sup norm. Immutable once built.
class AlgebraElement {
public:
    AlgebraElement(ScalarKind kind, std::vector<FiberScalar> fibers);

    static AlgebraElement from_complex(std::span<const std::complex<double>> values);
    static AlgebraElement from_quaternions(std::vector<Quaternion> values);
    static AlgebraElement from_real(ScalarKind kind, std::span<const double> values);
    static AlgebraElement constant(ScalarKind kind, std::size_t n, double value);
    static AlgebraElement one(ScalarKind kind, std::size_t n) { return constant(kind, n, 1.0); }
    static AlgebraElement zero(ScalarKind kind, std::size_t n) { return constant(kind, n, 0.0); }

    [[nodiscard]] ScalarKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t size() const noexcept { return fibers_.size(); }
    [[nodiscard]] const FiberScalar &operator[](std::size_t k) const { return fibers_[k]; }
    [[nodiscard]] std::span<const FiberScalar> fibers() const noexcept { return fibers_; }

    /// Real parts of every fiber; meaningful for self-adjoint elements.
    [[nodiscard]] std::vector<double> real_parts() const;

    friend AlgebraElement operator+(const AlgebraElement &a, const AlgebraElement &b);
    friend AlgebraElement operator-(const AlgebraElement &a, const AlgebraElement &b);
    friend AlgebraElement operator*(const AlgebraElement &a, const AlgebraElement &b);
    friend AlgebraElement operator*(double s, const AlgebraElement &a);

private:
    ScalarKind kind_;
    std::vector<FiberScalar> fibers_;
};

/// Throws ShapeMismatch unless a and b share kind and fiber count.
void require_compatible(const AlgebraElement &a, const AlgebraElement &b);

enum class PositivityClass { NotSelfAdjoint = 0, SelfAdjoint = 1, Positive = 2, StrictlyPositive = 3 };

std::string_view to_string(PositivityClass c);

[[nodiscard]] AlgebraElement star(const AlgebraElement &a);
[[nodiscard]] double alg_norm(const AlgebraElement &a);

/// Default comparison tolerance: 1e-12 * max(1, ||a||).
[[nodiscard]] double default_tolerance(const AlgebraElement &a);

[[nodiscard]] PositivityClass positivity_class(const AlgebraElement &a, std::optional<double> tol = {});
[[nodiscard]] bool is_positive(const AlgebraElement &a, std::optional<double> tol = {});
[[nodiscard]] bool is_strictly_positive(const AlgebraElement &a, std::optional<double> tol = {});

/// Unique positive square root. Throws NotPositive.
[[nodiscard]] AlgebraElement sqrt_positive(const AlgebraElement &a, std::optional<double> tol = {});

/// Fiberwise inverse. Throws NotInvertible when a fiber modulus is <= tol.
[[nodiscard]] AlgebraElement invert(const AlgebraElement &a, std::optional<double> tol = {});

/// a <= b in the algebra order, i.e. b - a positive.
[[nodiscard]] bool order_leq(const AlgebraElement &a, const AlgebraElement &b, std::optional<double> tol = {});

[[nodiscard]] bool is_central(const AlgebraElement &a);

} // namespace cfusion
