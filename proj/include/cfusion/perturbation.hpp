#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "cfusion/frame.hpp"

namespace cfusion {

/// d(U, V) = ||P_U - P_V||, the max over fibers of the spectral norm. Always in [0, 1].
[[nodiscard]] double proj_distance(const Submodule &u, const Submodule &v);

/// arcsin(d(U, V)) in [0, pi/2], evaluated as atan2(sin, cos) with
/// sin = ||P_U - P_V|| and cos = sigma_min(P_U + P_V - I).
[[nodiscard]] double angle(const Submodule &u, const Submodule &v);

/// sqrt(sum_n w_n d(U_n, V_n)^2). Throws LengthMismatch.
[[nodiscard]] double ecart(std::span<const Submodule> us, std::span<const Submodule> vs, std::span<const double> w);

/// q(w) = (||w_n||^2)_n.
[[nodiscard]] std::vector<double> squared_weight_norms(std::span<const AlgebraElement> weights);

/// ecart(center, candidate, w) < radius.
[[nodiscard]] bool ball_membership(std::span<const Submodule> center, double radius, std::span<const Submodule> candidate,
                                   std::span<const double> w);

struct CriterionValue {
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
};

/// The three angle-based sufficient conditions for the perturbed family to stay a frame.
struct AngleCriteria {
    CriterionValue weighted;                   ///< sum ||w_n||^2 theta_n^2 < ||A^{-1}||^{-2}
    CriterionValue bounded;                    ///< sum theta_n^2 < (||A^{-1}||^{-1} / ||w||_inf)^2
    std::optional<CriterionValue> holder;      ///< sum theta_n^{2p/(p-1)} < (||A^{-1}||^{-2} / ||q(w)||_p)^{p/(p-1)}
    std::optional<double> p;
};

/// Throws NotAFrame, LengthMismatch, InvalidArgument (p outside (1, inf)).
[[nodiscard]] AngleCriteria angle_criteria(const WeightedFrame &f, std::span<const Submodule> ks,
                                           std::optional<double> p = {});

struct PerturbReport {
    std::vector<double> distances;
    std::vector<double> angles;
    std::vector<double> weights;  ///< q(w) used by the ecart
    double ecart = 0.0;
    double threshold = 0.0;       ///< ||A^{-1}||^{-1} for the optimal lower bound A
    double upper_norm = 0.0;      ///< ||B||
    bool guaranteed = false;      ///< ecart < threshold (strict)
    double predicted_lower = 0.0; ///< (threshold - ecart)^2, meaningful when guaranteed
    double predicted_upper = 0.0; ///< (||B|| + ecart)^2
    std::optional<FrameBounds> perturbed;  ///< bounds of ((K_n, w_n)), filled when guaranteed
    bool confirmed = false;                ///< perturbed family verified within the predicted constants
    AngleCriteria criteria;
    bool criteria_consistent = false;      ///< every true criterion comes with guaranteed = true
};

/// Slack used when confirming the predicted scalar constants.
inline constexpr double kPerturbConfirmSlack = 1e-9;

/// Throws NotAFrame, ShapeMismatch, LengthMismatch.
[[nodiscard]] PerturbReport perturbation_check(const WeightedFrame &f, std::span<const Submodule> ks,
                                               std::optional<double> p = {});

/// Rotates every complex fiber of u by a Givens rotation G (P -> G P G^*). The
/// distance to u is at most sin(theta) for theta in [0, pi/2].
[[nodiscard]] Submodule givens_rotate(const Submodule &u, std::size_t i, std::size_t j, double theta, double phase = 0.0);

/// Every submodule of f rotated by theta in the (0, 1) plane of each fiber with m_k >= 2.
[[nodiscard]] std::vector<Submodule> rotate_all(const WeightedFrame &f, double theta);

/// Largest theta with sqrt(sum q_n) sin(theta) <= (1 - margin) * ||A^{-1}||^{-1}. Throws NotAFrame.
[[nodiscard]] double rotation_budget(const WeightedFrame &f, double margin = 0.1);

/// Per submodule and fiber (m_k >= 2), a random-plane complex Givens rotation with angle
/// uniform in [0, theta_max]. Quaternion fibers are left unchanged.
[[nodiscard]] std::vector<Submodule> random_rotations(const WeightedFrame &f, double theta_max, std::mt19937_64 &rng);

} // namespace cfusion
