#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cfusion/hilbert_module.hpp"

namespace cfusion {

/// Orthogonally complemented submodule, stored as one orthogonal projection per fiber.
/// Quaternion fibers carry a 1x1 selector (0 or 1); complex fibers an m_k x m_k
/// Hermitian idempotent.
class Submodule {
public:
    /// Fiber k is kept iff k is in index_set (0-based).
    static Submodule block(const ModuleShape &shape, std::span<const std::size_t> index_set);
    static Submodule block(const ModuleShape &shape, std::initializer_list<std::size_t> index_set) {
        return block(shape, std::span<const std::size_t>(index_set.begin(), index_set.size()));
    }
    /// Projection onto the span of each fiber's vectors (complex kind only).
    static Submodule span(const ModuleShape &shape, const std::vector<std::vector<CVector>> &fiber_spanning_sets);
    /// Raw per-fiber matrices. Not checked for idempotence; see validate_projection.
    static Submodule from_projections(const ModuleShape &shape, std::vector<CMatrix> projections);
    static Submodule from_selectors(const ModuleShape &shape, std::span<const std::uint8_t> selectors);
    static Submodule full(const ModuleShape &shape);
    static Submodule zero(const ModuleShape &shape);

    [[nodiscard]] const ModuleShape &shape() const noexcept { return shape_; }
    [[nodiscard]] const CMatrix &projection(std::size_t k) const { return projections_.at(k); }
    [[nodiscard]] std::span<const CMatrix> projections() const noexcept { return projections_; }
    /// Selector bit of a quaternion fiber.
    [[nodiscard]] bool selected(std::size_t k) const { return projections_.at(k)(0, 0).real() > 0.5; }

private:
    Submodule(ModuleShape shape, std::vector<CMatrix> projections);

    ModuleShape shape_;
    std::vector<CMatrix> projections_;
};

[[nodiscard]] ModuleVector project(const Submodule &u, const ModuleVector &x);
[[nodiscard]] Submodule complement(const Submodule &u);

/// True iff every fiber satisfies ||P - P*|| <= tol and ||P^2 - P|| <= tol (max-entry norm).
[[nodiscard]] bool validate_projection(const Submodule &u, double tol = 1e-12);

} // namespace cfusion
