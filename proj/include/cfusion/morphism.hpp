#pragma once

#include <cstddef>
#include <vector>

#include "cfusion/frame.hpp"

namespace cfusion {

/// Bijective orthogonality-preserving module map in fiberwise form: fiber k is scaled by
/// c_k > 0 after a unitary rotation. Complex fibers rotate by an m_k x m_k unitary applied
/// on the left; quaternion fibers rotate by right multiplication with a unit quaternion.
class OrthoMap {
public:
    static OrthoMap complex(const ModuleShape &shape, std::vector<double> scales, std::vector<CMatrix> rotations);
    static OrthoMap quaternion(const ModuleShape &shape, std::vector<double> scales, std::vector<Quaternion> rotations);
    static OrthoMap identity(const ModuleShape &shape);
    static OrthoMap scaling(const ModuleShape &shape, std::vector<double> scales);

    [[nodiscard]] const ModuleShape &shape() const noexcept { return shape_; }
    [[nodiscard]] double scale(std::size_t k) const { return scales_.at(k); }
    [[nodiscard]] const CMatrix &rotation(std::size_t k) const { return rotations_.at(k); }
    [[nodiscard]] const Quaternion &unit(std::size_t k) const { return units_.at(k); }

    [[nodiscard]] OrthoMap inverse() const;

private:
    OrthoMap(ModuleShape shape, std::vector<double> scales, std::vector<CMatrix> rotations,
             std::vector<Quaternion> units);

    ModuleShape shape_;
    std::vector<double> scales_;
    std::vector<CMatrix> rotations_;
    std::vector<Quaternion> units_;
};

[[nodiscard]] ModuleVector apply_map(const OrthoMap &psi, const ModuleVector &x);

/// nu(Psi) = (c_k^2)_k, the central element with <Psi x, Psi y> = nu <x, y>.
[[nodiscard]] AlgebraElement nu_of(const OrthoMap &psi);

/// Image submodule Psi(V) with projection Psi P_V Psi^{-1}.
[[nodiscard]] Submodule transport_submodule(const OrthoMap &psi, const Submodule &v);

/// ((Psi(V_n), w_n))_n. Throws NotAFrame.
[[nodiscard]] WeightedFrame transport_frame(const OrthoMap &psi, const WeightedFrame &f);

struct PullbackBounds {
    AlgebraElement lower;
    AlgebraElement upper;
};

/// Optimal A', B' with |A' Psi^{-1}(y)|^2 <= sum_n w_n^2 |P_n y|^2 <= |B' Psi^{-1}(y)|^2,
/// i.e. the bounds of `g` measured against the preimage under psi. For g = transport_frame(psi, f)
/// these are nu^{1/2} A and nu^{1/2} B. The intrinsic bounds of g (frame_bounds) equal A and B.
[[nodiscard]] PullbackBounds pullback_bounds(const OrthoMap &psi, const WeightedFrame &g);

} // namespace cfusion
