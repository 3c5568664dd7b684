#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace cfusion {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

namespace linalg {

struct SpectralRange {
    double min = 0.0;
    double max = 0.0;
};

/// Extreme eigenvalues of a Hermitian matrix (symmetric QR iteration).
SpectralRange hermitian_extremes(const CMatrix &h);

/// Spectral norm of a Hermitian matrix, i.e. the largest absolute eigenvalue.
double hermitian_spectral_norm(const CMatrix &h);

/// Largest singular value.
double spectral_norm(const CMatrix &m);

struct CgResult {
    CVector x;
    std::size_t iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Conjugate gradient for Hermitian positive definite systems; stops when
/// ||r|| <= tol * ||b||.
CgResult conjugate_gradient(const CMatrix &a, const CVector &b, double tol, std::size_t max_iterations);

/// Solves a Hermitian positive definite system. Dense LDL^T up to dimension 64,
/// conjugate gradient (tol 1e-14, cap 10*m iterations) above.
CVector solve_hermitian(const CMatrix &a, const CVector &b);

inline constexpr std::size_t kDirectSolveLimit = 64;

/// Orthonormal basis of span(vectors) by modified Gram-Schmidt. Vectors whose residual
/// drops below drop_rel * (largest input norm) are discarded.
std::vector<CVector> orthonormalize(const std::vector<CVector> &vectors, double drop_rel = 1e-10);

/// Orthogonal projector onto span(vectors), dimension m.
CMatrix span_projector(std::size_t m, const std::vector<CVector> &vectors);

/// Givens rotation by angle theta in the (i, j) coordinate plane.
CMatrix givens(std::size_t m, std::size_t i, std::size_t j, double theta);

double max_abs(const CMatrix &m);

} // namespace linalg
} // namespace cfusion
