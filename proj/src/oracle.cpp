#include "cfusion/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cfusion::oracle {

CMatrix quaternion_block(const Quaternion &q) {
    const Complex a(q.w, q.x);
    const Complex b(q.y, q.z);
    CMatrix m(2, 2);
    m << a, b, -std::conj(b), std::conj(a);
    return m;
}

DenseOperator flatten_frame_operator(const WeightedFrame &f) {
    const auto &shape = f.shape();
    const bool quat = shape.kind() == ScalarKind::Quaternion;
    DenseOperator op;
    std::size_t total = 0;
    for (std::size_t k = 0; k < shape.fiber_count(); ++k) {
        op.block_offsets.push_back(total);
        op.block_sizes.push_back(quat ? 2 : shape.dim(k));
        total += op.block_sizes.back();
    }
    if (total > kMaxDenseDim) throw Error(ErrorCode::InvalidArgument, "instance too large for the dense oracle");
    const auto dim = static_cast<Eigen::Index>(total);
    op.matrix = CMatrix::Zero(dim, dim);
    for (std::size_t k = 0; k < shape.fiber_count(); ++k) {
        const auto off = static_cast<Eigen::Index>(op.block_offsets[k]);
        const auto sz = static_cast<Eigen::Index>(op.block_sizes[k]);
        for (std::size_t n = 0; n < f.size(); ++n) {
            const Quaternion w = f.weights()[n][k];
            const Quaternion w2 = w * w;
            const CMatrix &p = f.submodules()[n].projection(k);
            if (quat)
                op.matrix.block(off, off, sz, sz) += quaternion_block(w2 * Quaternion(p(0, 0).real()));
            else
                op.matrix.block(off, off, sz, sz) += w2.as_complex() * p;
        }
    }
    return op;
}

namespace {

// Cyclic Jacobi sweeps on a real symmetric matrix; returns the eigenvalues.
std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a) {
    const Eigen::Index n = a.rows();
    const double scale = std::max(1.0, a.norm());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (std::sqrt(off) <= 1e-15 * scale) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
    return ev;
}

} // namespace

linalg::SpectralRange eigen_bounds(const CMatrix &h) {
    if (h.rows() != h.cols()) throw Error(ErrorCode::NotHermitian, "matrix is not square");
    if (h.rows() == 0) return {};
    if (linalg::max_abs(h - h.adjoint()) > 1e-12 * std::max(1.0, linalg::max_abs(h)))
        throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian");
    const Eigen::Index n = h.rows();
    Eigen::MatrixXd emb(2 * n, 2 * n);
    emb << h.real(), -h.imag(), h.imag(), h.real();
    const auto ev = jacobi_eigenvalues(emb);
    const auto [lo, hi] = std::minmax_element(ev.begin(), ev.end());
    return {*lo, *hi};
}

std::vector<linalg::SpectralRange> block_eigen_bounds(const DenseOperator &op) {
    std::vector<linalg::SpectralRange> out;
    for (std::size_t k = 0; k < op.block_offsets.size(); ++k) {
        const auto off = static_cast<Eigen::Index>(op.block_offsets[k]);
        const auto sz = static_cast<Eigen::Index>(op.block_sizes[k]);
        out.push_back(eigen_bounds(op.matrix.block(off, off, sz, sz)));
    }
    return out;
}

ModuleVector random_unit_vector(const ModuleShape &shape, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> radius(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, shape.fiber_count() - 1);
    const std::size_t full = pick(rng);
    const std::size_t nf = shape.fiber_count();
    if (shape.kind() == ScalarKind::Quaternion) {
        std::vector<Quaternion> out(nf);
        for (std::size_t k = 0; k < nf; ++k) {
            Quaternion q;
            do {
                q = Quaternion(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
            } while (q.abs() == 0.0);
            out[k] = ((k == full ? 1.0 : radius(rng)) / q.abs()) * q;
        }
        return {shape, std::move(out)};
    }
    std::vector<CVector> out(nf);
    for (std::size_t k = 0; k < nf; ++k) {
        CVector v(static_cast<Eigen::Index>(shape.dim(k)));
        do {
            for (auto &e : v) e = Complex(gauss(rng), gauss(rng));
        } while (v.norm() == 0.0);
        out[k] = ((k == full ? 1.0 : radius(rng)) / v.norm()) * v;
    }
    return {shape, std::move(out)};
}

BruteForceResult brute_force_frame_check(const WeightedFrame &f, const FrameBounds &reported, std::size_t samples,
                                         std::mt19937_64 &rng) {
    if (samples == 0) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
    BruteForceResult r;
    r.samples = samples;
    r.observed_min = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < samples; ++s) {
        const ModuleVector x = random_unit_vector(f.shape(), rng);
        AlgebraElement energy = AlgebraElement::zero(f.shape().kind(), f.shape().fiber_count());
        for (std::size_t n = 0; n < f.size(); ++n) {
            const auto &w = f.weights()[n];
            energy = energy + (w * w) * abs_squared(project(f.submodules()[n], x));
        }
        const double value = alg_norm(energy);
        const double x2 = module_norm(x) * module_norm(x);
        r.observed_min = std::min(r.observed_min, value);
        r.observed_max = std::max(r.observed_max, value);
        if (value < reported.c * x2 - kBruteForceTol || value > reported.d * x2 + kBruteForceTol) ++r.scalar_violations;
        const auto lower = abs_squared(left_action(reported.lower, x));
        const auto upper = abs_squared(left_action(reported.upper, x));
        if (!order_leq(lower, energy, kBruteForceTol) || !order_leq(energy, upper, kBruteForceTol)) ++r.order_violations;
    }
    r.ok = r.scalar_violations == 0 && r.order_violations == 0;
    return r;
}

} // namespace cfusion::oracle
