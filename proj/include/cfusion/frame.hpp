#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfusion/submodule.hpp"

namespace cfusion {

/// Throws InvalidWeight unless every weight is central and strictly positive and
/// matches the shape.
void validate_weights(std::span<const AlgebraElement> weights, const ModuleShape &shape);

/// Per fiber k, the Hermitian PSD block S_k = sum_n w_{n,k}^2 P_{n,k}
/// (1x1 and real for quaternion fibers).
struct FrameOperatorFibers {
    ModuleShape shape;
    std::vector<CMatrix> blocks;

    [[nodiscard]] ModuleVector apply(const ModuleVector &x) const;
};

/// Weighted sequence of complemented submodules ((H_n, w_n)). The frame operator and its
/// per-fiber spectral extremes are computed once, at construction.
class WeightedFrame {
public:
    WeightedFrame(std::vector<Submodule> submodules, std::vector<AlgebraElement> weights);

    [[nodiscard]] const ModuleShape &shape() const noexcept { return submodules_.front().shape(); }
    [[nodiscard]] std::size_t size() const noexcept { return submodules_.size(); }
    [[nodiscard]] std::span<const Submodule> submodules() const noexcept { return submodules_; }
    [[nodiscard]] std::span<const AlgebraElement> weights() const noexcept { return weights_; }
    [[nodiscard]] const FrameOperatorFibers &frame_operator() const noexcept { return operator_; }
    [[nodiscard]] std::span<const linalg::SpectralRange> fiber_spectra() const noexcept { return spectra_; }

private:
    std::vector<Submodule> submodules_;
    std::vector<AlgebraElement> weights_;
    FrameOperatorFibers operator_;
    std::vector<linalg::SpectralRange> spectra_;
};

/// S_G : x -> sum w_n^2 P_n(x) = T_G^* T_G.
[[nodiscard]] const FrameOperatorFibers &frame_operator(const WeightedFrame &f);

struct FrameBounds {
    bool is_frame = false;
    AlgebraElement lower;  ///< optimal A = (sqrt(lambda_min(S_k)))_k
    AlgebraElement upper;  ///< optimal B = (sqrt(lambda_max(S_k)))_k
    double c = 0.0;        ///< min_k lambda_min(S_k)
    double d = 0.0;        ///< max_k lambda_max(S_k)
    double threshold = 0.0;
    std::vector<linalg::SpectralRange> per_fiber;
};

/// Optimal algebra bounds and scalar constants. Default tol is 1e-10 * max(1, d).
[[nodiscard]] FrameBounds frame_bounds(const WeightedFrame &f, std::optional<double> tol = {});

/// T_G : x -> (w_n P_n(x))_n.
[[nodiscard]] ModuleSequence synthesis(const WeightedFrame &f, const ModuleVector &x);

/// T_G^* : (y_n) -> sum_n w_n P_n(y_n).
[[nodiscard]] ModuleVector synthesis_adjoint(const WeightedFrame &f, const ModuleSequence &y);

struct Reconstruction {
    ModuleVector solution;  ///< S^{-1} x
    ModuleVector xhat;      ///< sum_n w_n^2 P_n(S^{-1} x)
    double rel_error = 0.0;
};

/// Throws NotAFrame.
[[nodiscard]] Reconstruction reconstruct(const WeightedFrame &f, const ModuleVector &x);

struct Tightness {
    bool tight = false;
    std::optional<AlgebraElement> constant;
    bool parseval = false;
};

/// Throws NotAFrame.
[[nodiscard]] Tightness tightness(const WeightedFrame &f, double tol = 1e-10);

struct MultiplierCheck {
    bool member = false;
    std::vector<double> fiber_sums;  ///< sum_n a_{n,k}^2 d_{n,k}
    std::optional<AlgebraElement> tight_constant;
    std::string series_conditions = "finite-truncation: auto-satisfied";
};

/// Block (coordinate) configuration: index_sets[n] are the 0-based fibers kept by
/// submodule n, weights[n][k] = a_{n,k} > 0.
[[nodiscard]] MultiplierCheck block_multiplier_check(ScalarKind kind, std::size_t fibers,
                                                     const std::vector<std::vector<std::size_t>> &index_sets,
                                                     const std::vector<std::vector<double>> &weights);

/// The frame ((H_n, w_n)) of a block configuration.
[[nodiscard]] WeightedFrame block_frame(ScalarKind kind, std::size_t fibers,
                                        const std::vector<std::vector<std::size_t>> &index_sets,
                                        const std::vector<std::vector<double>> &weights);

/// Weights alpha_n + beta_n on the same submodules. Throws NotAFrame if either input fails.
[[nodiscard]] WeightedFrame cone_add(const WeightedFrame &f, std::span<const AlgebraElement> beta);

/// Weights lambda * alpha_n, lambda > 0.
[[nodiscard]] WeightedFrame cone_scale(const WeightedFrame &f, double lambda);

} // namespace cfusion
