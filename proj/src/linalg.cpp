#include "cfusion/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace cfusion::linalg {

SpectralRange hermitian_extremes(const CMatrix &h) {
    if (h.rows() == 0) return {};
    if (h.rows() == 1) return {h(0, 0).real(), h(0, 0).real()};
    const CMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
    const auto &ev = es.eigenvalues();
    return {ev.minCoeff(), ev.maxCoeff()};
}

double hermitian_spectral_norm(const CMatrix &h) {
    const auto r = hermitian_extremes(h);
    return std::max(std::abs(r.min), std::abs(r.max));
}

double spectral_norm(const CMatrix &m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

CgResult conjugate_gradient(const CMatrix &a, const CVector &b, double tol, std::size_t max_iterations) {
    CgResult out;
    out.x = CVector::Zero(b.size());
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        out.converged = true;
        return out;
    }
    CVector r = b;
    CVector p = r;
    double rr = r.squaredNorm();
    for (std::size_t it = 0; it < max_iterations; ++it) {
        const CVector ap = a * p;
        const double alpha = rr / p.dot(ap).real();
        out.x += alpha * p;
        r -= alpha * ap;
        const double rr_new = r.squaredNorm();
        out.iterations = it + 1;
        if (std::sqrt(rr_new) <= tol * bnorm) {
            rr = rr_new;
            out.converged = true;
            break;
        }
        p = r + (rr_new / rr) * p;
        rr = rr_new;
    }
    out.residual = std::sqrt(rr) / bnorm;
    return out;
}

CVector solve_hermitian(const CMatrix &a, const CVector &b) {
    const auto m = static_cast<std::size_t>(a.rows());
    if (m <= kDirectSolveLimit) return a.ldlt().solve(b);
    return conjugate_gradient(a, b, 1e-14, 10 * m).x;
}

std::vector<CVector> orthonormalize(const std::vector<CVector> &vectors, double drop_rel) {
    double largest = 0.0;
    for (const auto &v : vectors) largest = std::max(largest, v.norm());
    std::vector<CVector> basis;
    if (largest == 0.0) return basis;
    const double drop = drop_rel * largest;
    for (const auto &v : vectors) {
        CVector w = v;
        for (const auto &q : basis) w -= q.dot(w) * q;
        // second pass
        for (const auto &q : basis) w -= q.dot(w) * q;
        const double n = w.norm();
        if (n > drop) basis.push_back(w / n);
    }
    return basis;
}

CMatrix span_projector(std::size_t m, const std::vector<CVector> &vectors) {
    const auto dim = static_cast<Eigen::Index>(m);
    CMatrix p = CMatrix::Zero(dim, dim);
    for (const auto &q : orthonormalize(vectors)) p += q * q.adjoint();
    return p;
}

CMatrix givens(std::size_t m, std::size_t i, std::size_t j, double theta) {
    const auto dim = static_cast<Eigen::Index>(m);
    CMatrix g = CMatrix::Identity(dim, dim);
    const auto ii = static_cast<Eigen::Index>(i);
    const auto jj = static_cast<Eigen::Index>(j);
    g(ii, ii) = std::cos(theta);
    g(jj, jj) = std::cos(theta);
    g(ii, jj) = -std::sin(theta);
    g(jj, ii) = std::sin(theta);
    return g;
}

double max_abs(const CMatrix &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

} // namespace cfusion::linalg
