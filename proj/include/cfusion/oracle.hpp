#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "cfusion/frame.hpp"

namespace cfusion::oracle {

/// Largest flattened dimension the dense oracle accepts.
inline constexpr std::size_t kMaxDenseDim = 2048;

/// A whole-module operator as one dense complex matrix. Quaternion fibers are expanded to
/// 2x2 complex blocks; block_offsets/block_sizes locate each fiber.
struct DenseOperator {
    CMatrix matrix;
    std::vector<std::size_t> block_offsets;
    std::vector<std::size_t> block_sizes;
};

/// q = a + b j (a, b complex) as [[a, b], [-conj(b), conj(a)]].
[[nodiscard]] CMatrix quaternion_block(const Quaternion &q);

/// Dense sum_n w_n^2 P_n assembled straight from the submodule projections.
[[nodiscard]] DenseOperator flatten_frame_operator(const WeightedFrame &f);

/// Extreme eigenvalues via cyclic Jacobi on the real symmetric embedding
/// [[Re H, -Im H], [Im H, Re H]]. Throws NotHermitian.
[[nodiscard]] linalg::SpectralRange eigen_bounds(const CMatrix &h);

/// eigen_bounds of every fiber block.
[[nodiscard]] std::vector<linalg::SpectralRange> block_eigen_bounds(const DenseOperator &op);

/// Random x with ||x|| = 1: each fiber a random direction with radius in [0, 1],
/// one fiber at radius exactly 1.
[[nodiscard]] ModuleVector random_unit_vector(const ModuleShape &shape, std::mt19937_64 &rng);

struct BruteForceResult {
    bool ok = false;
    std::size_t samples = 0;
    double observed_min = 0.0;  ///< smallest ||sum w_n^2 |P_n x|^2|| seen
    double observed_max = 0.0;
    std::size_t scalar_violations = 0;
    std::size_t order_violations = 0;
};

inline constexpr double kBruteForceTol = 1e-10;

/// Evaluates sum_n w_n^2 |P_n x|^2 on random unit vectors and checks it against the
/// reported scalar constants c, d and, in the algebra order, against |A x|^2 and |B x|^2.
[[nodiscard]] BruteForceResult brute_force_frame_check(const WeightedFrame &f, const FrameBounds &reported,
                                                       std::size_t samples, std::mt19937_64 &rng);

} // namespace cfusion::oracle
