#include "cfusion/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cfusion {

std::string_view to_string(ScalarKind kind) {
    return kind == ScalarKind::Complex ? "complex" : "quaternion";
}

ScalarKind parse_scalar_kind(std::string_view text) {
    if (text == "complex") return ScalarKind::Complex;
    if (text == "quaternion") return ScalarKind::Quaternion;
    throw Error(ErrorCode::InvalidArgument, "unknown scalar kind '" + std::string(text) + "'");
}

std::string_view to_string(PositivityClass c) {
    switch (c) {
    case PositivityClass::NotSelfAdjoint: return "not_selfadjoint";
    case PositivityClass::SelfAdjoint: return "selfadjoint";
    case PositivityClass::Positive: return "positive";
    case PositivityClass::StrictlyPositive: return "strictly_positive";
    }
    return "unknown";
}

AlgebraElement::AlgebraElement(ScalarKind kind, std::vector<FiberScalar> fibers)
    : kind_(kind), fibers_(std::move(fibers)) {
    if (fibers_.empty()) throw Error(ErrorCode::InvalidArgument, "algebra element needs at least one fiber");
    if (kind_ == ScalarKind::Complex) {
        for (std::size_t k = 0; k < fibers_.size(); ++k) {
            if (!fibers_[k].is_complex())
                throw Error(ErrorCode::ShapeMismatch,
                            "quaternion value in complex element at fiber " + std::to_string(k));
        }
    }
}

AlgebraElement AlgebraElement::from_complex(std::span<const std::complex<double>> values) {
    std::vector<FiberScalar> f;
    f.reserve(values.size());
    for (auto c : values) f.emplace_back(c);
    return {ScalarKind::Complex, std::move(f)};
}

AlgebraElement AlgebraElement::from_quaternions(std::vector<Quaternion> values) {
    return {ScalarKind::Quaternion, std::move(values)};
}

AlgebraElement AlgebraElement::from_real(ScalarKind kind, std::span<const double> values) {
    std::vector<FiberScalar> f(values.begin(), values.end());
    return {kind, std::move(f)};
}

AlgebraElement AlgebraElement::constant(ScalarKind kind, std::size_t n, double value) {
    return {kind, std::vector<FiberScalar>(n, FiberScalar(value))};
}

std::vector<double> AlgebraElement::real_parts() const {
    std::vector<double> out(fibers_.size());
    std::transform(fibers_.begin(), fibers_.end(), out.begin(), [](const FiberScalar &q) { return q.w; });
    return out;
}

void require_compatible(const AlgebraElement &a, const AlgebraElement &b) {
    if (a.kind() != b.kind() || a.size() != b.size())
        throw Error(ErrorCode::ShapeMismatch, "algebra elements differ in kind or fiber count");
}

namespace {

template <typename Op>
AlgebraElement zip(const AlgebraElement &a, const AlgebraElement &b, Op op) {
    require_compatible(a, b);
    std::vector<FiberScalar> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = op(a[k], b[k]);
    return {a.kind(), std::move(out)};
}

} // namespace

AlgebraElement operator+(const AlgebraElement &a, const AlgebraElement &b) {
    return zip(a, b, [](const auto &p, const auto &q) { return p + q; });
}

AlgebraElement operator-(const AlgebraElement &a, const AlgebraElement &b) {
    return zip(a, b, [](const auto &p, const auto &q) { return p - q; });
}

AlgebraElement operator*(const AlgebraElement &a, const AlgebraElement &b) {
    return zip(a, b, [](const auto &p, const auto &q) { return p * q; });
}

AlgebraElement operator*(double s, const AlgebraElement &a) {
    std::vector<FiberScalar> out(a.fibers().begin(), a.fibers().end());
    for (auto &q : out) q *= s;
    return {a.kind(), std::move(out)};
}

AlgebraElement star(const AlgebraElement &a) {
    std::vector<FiberScalar> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k].conj();
    return {a.kind(), std::move(out)};
}

double alg_norm(const AlgebraElement &a) {
    double m = 0.0;
    for (const auto &q : a.fibers()) m = std::max(m, q.abs());
    return m;
}

double default_tolerance(const AlgebraElement &a) { return 1e-12 * std::max(1.0, alg_norm(a)); }

PositivityClass positivity_class(const AlgebraElement &a, std::optional<double> tol) {
    const double t = tol.value_or(default_tolerance(a));
    if (t < 0.0) throw Error(ErrorCode::InvalidArgument, "tolerance must be nonnegative");
    auto cls = PositivityClass::StrictlyPositive;
    for (const auto &q : a.fibers()) {
        if (q.vector_abs() > t) return PositivityClass::NotSelfAdjoint;
        if (q.w < -t)
            cls = PositivityClass::SelfAdjoint;
        else if (q.w <= t && cls == PositivityClass::StrictlyPositive)
            cls = PositivityClass::Positive;
    }
    return cls;
}

bool is_positive(const AlgebraElement &a, std::optional<double> tol) {
    return positivity_class(a, tol) >= PositivityClass::Positive;
}

bool is_strictly_positive(const AlgebraElement &a, std::optional<double> tol) {
    return positivity_class(a, tol) == PositivityClass::StrictlyPositive;
}

AlgebraElement sqrt_positive(const AlgebraElement &a, std::optional<double> tol) {
    if (!is_positive(a, tol)) throw Error(ErrorCode::NotPositive, "square root of a non-positive element");
    std::vector<FiberScalar> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = FiberScalar(std::sqrt(std::max(0.0, a[k].w)));
    return {a.kind(), std::move(out)};
}

AlgebraElement invert(const AlgebraElement &a, std::optional<double> tol) {
    const double t = tol.value_or(default_tolerance(a));
    std::vector<FiberScalar> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].abs() <= t) throw Error(ErrorCode::NotInvertible, "fiber " + std::to_string(k) + " is zero");
        out[k] = a[k].inverse();
    }
    return {a.kind(), std::move(out)};
}

bool order_leq(const AlgebraElement &a, const AlgebraElement &b, std::optional<double> tol) {
    require_compatible(a, b);
    const AlgebraElement diff = b - a;
    const double t = tol.value_or(1e-12 * std::max({1.0, alg_norm(a), alg_norm(b)}));
    return is_positive(diff, t);
}

bool is_central(const AlgebraElement &a) {
    if (a.kind() == ScalarKind::Complex) return true;
    return std::all_of(a.fibers().begin(), a.fibers().end(),
                       [](const FiberScalar &q) { return q.vector_abs() == 0.0; });
}

} // namespace cfusion
