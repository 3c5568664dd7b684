#pragma once

#include <cmath>
#include <complex>

namespace cfusion {

/// Real quaternion w + xi + yj + zk with the Hamilton product.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
        : w(w_), x(x_), y(y_), z(z_) {}
    constexpr explicit Quaternion(std::complex<double> c) : w(c.real()), x(c.imag()) {}

    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

    [[nodiscard]] constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    [[nodiscard]] constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
    [[nodiscard]] double abs() const { return std::sqrt(norm2()); }
    /// Modulus of the imaginary (vector) part.
    [[nodiscard]] double vector_abs() const { return std::sqrt(x * x + y * y + z * z); }
    [[nodiscard]] Quaternion inverse() const;
    [[nodiscard]] constexpr std::complex<double> as_complex() const { return {w, x}; }
    /// True when the j and k components vanish, i.e. the value lies in the complex plane.
    [[nodiscard]] constexpr bool is_complex() const { return y == 0.0 && z == 0.0; }

    constexpr Quaternion &operator+=(const Quaternion &o) {
        w += o.w;
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Quaternion &operator-=(const Quaternion &o) {
        w -= o.w;
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Quaternion &operator*=(double s) {
        w *= s;
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    friend constexpr bool operator==(const Quaternion &, const Quaternion &) = default;
};

[[nodiscard]] constexpr Quaternion operator+(Quaternion a, const Quaternion &b) { return a += b; }
[[nodiscard]] constexpr Quaternion operator-(Quaternion a, const Quaternion &b) { return a -= b; }
[[nodiscard]] constexpr Quaternion operator-(const Quaternion &a) { return {-a.w, -a.x, -a.y, -a.z}; }
[[nodiscard]] constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
[[nodiscard]] constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }

/// Hamilton product; i*j = k, j*k = i, k*i = j.
[[nodiscard]] constexpr Quaternion quat_mul(const Quaternion &a, const Quaternion &b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

[[nodiscard]] constexpr Quaternion operator*(const Quaternion &a, const Quaternion &b) { return quat_mul(a, b); }

inline Quaternion Quaternion::inverse() const {
    const double n2 = norm2();
    return {w / n2, -x / n2, -y / n2, -z / n2};
}

} // namespace cfusion
