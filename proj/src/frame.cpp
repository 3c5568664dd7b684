#include "cfusion/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cfusion {

void validate_weights(std::span<const AlgebraElement> weights, const ModuleShape &shape) {
    for (std::size_t n = 0; n < weights.size(); ++n) {
        const auto &w = weights[n];
        if (w.kind() != shape.kind() || w.size() != shape.fiber_count())
            throw Error(ErrorCode::ShapeMismatch, "weight " + std::to_string(n) + " does not match the module shape");
        if (!is_central(w)) throw Error(ErrorCode::InvalidWeight, "weight " + std::to_string(n) + " is not central");
        if (!is_strictly_positive(w))
            throw Error(ErrorCode::InvalidWeight, "weight " + std::to_string(n) + " is not strictly positive");
    }
}

ModuleVector FrameOperatorFibers::apply(const ModuleVector &x) const {
    require_same_shape(shape, x.shape());
    const std::size_t n = x.fiber_count();
    if (x.kind() == ScalarKind::Complex) {
        std::vector<CVector> out(n);
        for (std::size_t k = 0; k < n; ++k) out[k] = blocks[k] * x.complex_fiber(k);
        return {x.shape(), std::move(out)};
    }
    std::vector<Quaternion> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = blocks[k](0, 0).real() * x.quaternion_fiber(k);
    return {x.shape(), std::move(out)};
}

namespace {

FrameOperatorFibers assemble(std::span<const Submodule> subs, std::span<const AlgebraElement> weights) {
    const ModuleShape &shape = subs.front().shape();
    FrameOperatorFibers s{shape, {}};
    s.blocks.reserve(shape.fiber_count());
    for (std::size_t k = 0; k < shape.fiber_count(); ++k) {
        const auto m = static_cast<Eigen::Index>(shape.dim(k));
        CMatrix acc = CMatrix::Zero(m, m);
        for (std::size_t n = 0; n < subs.size(); ++n) {
            const double w = weights[n][k].w;
            acc += (w * w) * subs[n].projection(k);
        }
        s.blocks.push_back(std::move(acc));
    }
    return s;
}

void require_frame(const WeightedFrame &f, const char *what) {
    if (!frame_bounds(f).is_frame) throw Error(ErrorCode::NotAFrame, what);
}

} // namespace

WeightedFrame::WeightedFrame(std::vector<Submodule> submodules, std::vector<AlgebraElement> weights)
    : submodules_(std::move(submodules)), weights_(std::move(weights)),
      operator_{ModuleShape::uniform(ScalarKind::Complex, 1, 1), {}} {
    if (submodules_.empty()) throw Error(ErrorCode::InvalidArgument, "a frame needs at least one submodule");
    if (weights_.size() != submodules_.size())
        throw Error(ErrorCode::LengthMismatch, "one weight per submodule required");
    for (const auto &u : submodules_) require_same_shape(submodules_.front().shape(), u.shape());
    validate_weights(weights_, shape());
    operator_ = assemble(submodules_, weights_);
    spectra_.reserve(operator_.blocks.size());
    for (const auto &b : operator_.blocks) spectra_.push_back(linalg::hermitian_extremes(b));
}

const FrameOperatorFibers &frame_operator(const WeightedFrame &f) { return f.frame_operator(); }

FrameBounds frame_bounds(const WeightedFrame &f, std::optional<double> tol) {
    const auto spectra = f.fiber_spectra();
    double c = std::numeric_limits<double>::infinity();
    double d = 0.0;
    std::vector<FiberScalar> lo(spectra.size()), hi(spectra.size());
    for (std::size_t k = 0; k < spectra.size(); ++k) {
        c = std::min(c, spectra[k].min);
        d = std::max(d, spectra[k].max);
        lo[k] = FiberScalar(std::sqrt(std::max(0.0, spectra[k].min)));
        hi[k] = FiberScalar(std::sqrt(std::max(0.0, spectra[k].max)));
    }
    const double threshold = tol.value_or(1e-10 * std::max(1.0, d));
    return FrameBounds{
        .is_frame = c > threshold,
        .lower = AlgebraElement(f.shape().kind(), std::move(lo)),
        .upper = AlgebraElement(f.shape().kind(), std::move(hi)),
        .c = c,
        .d = d,
        .threshold = threshold,
        .per_fiber = {spectra.begin(), spectra.end()},
    };
}

ModuleSequence synthesis(const WeightedFrame &f, const ModuleVector &x) {
    require_same_shape(f.shape(), x.shape());
    ModuleSequence out;
    out.entries.reserve(f.size());
    for (std::size_t n = 0; n < f.size(); ++n)
        out.entries.push_back(left_action(f.weights()[n], project(f.submodules()[n], x)));
    return out;
}

ModuleVector synthesis_adjoint(const WeightedFrame &f, const ModuleSequence &y) {
    if (y.entries.size() != f.size()) throw Error(ErrorCode::LengthMismatch, "sequence length differs from frame size");
    ModuleVector acc = ModuleVector::zeros(f.shape());
    for (std::size_t n = 0; n < f.size(); ++n)
        acc = acc + left_action(f.weights()[n], project(f.submodules()[n], y.entries[n]));
    return acc;
}

Reconstruction reconstruct(const WeightedFrame &f, const ModuleVector &x) {
    require_same_shape(f.shape(), x.shape());
    require_frame(f, "reconstruction needs a frame");
    const auto &s = f.frame_operator();
    const std::size_t nf = x.fiber_count();
    ModuleVector y = [&] {
        if (x.kind() == ScalarKind::Complex) {
            std::vector<CVector> out(nf);
            for (std::size_t k = 0; k < nf; ++k) out[k] = linalg::solve_hermitian(s.blocks[k], x.complex_fiber(k));
            return ModuleVector(x.shape(), std::move(out));
        }
        std::vector<Quaternion> out(nf);
        for (std::size_t k = 0; k < nf; ++k) out[k] = (1.0 / s.blocks[k](0, 0).real()) * x.quaternion_fiber(k);
        return ModuleVector(x.shape(), std::move(out));
    }();
    ModuleVector xhat = ModuleVector::zeros(f.shape());
    for (std::size_t n = 0; n < f.size(); ++n) {
        const auto &w = f.weights()[n];
        xhat = xhat + left_action(w * w, project(f.submodules()[n], y));
    }
    const double xn = module_norm(x);
    const double err = xn == 0.0 ? 0.0 : module_norm(xhat - x) / xn;
    return {std::move(y), std::move(xhat), err};
}

Tightness tightness(const WeightedFrame &f, double tol) {
    require_frame(f, "tightness needs a frame");
    Tightness t;
    t.tight = true;
    std::vector<FiberScalar> constant;
    for (const auto &r : f.fiber_spectra()) {
        if (r.max - r.min > tol * std::max(r.max, std::numeric_limits<double>::min())) t.tight = false;
        constant.emplace_back(std::sqrt(0.5 * (r.min + r.max)));
    }
    if (!t.tight) return t;
    t.parseval = std::all_of(constant.begin(), constant.end(),
                             [tol](const FiberScalar &a) { return std::abs(a.w - 1.0) <= tol; });
    t.constant = AlgebraElement(f.shape().kind(), std::move(constant));
    return t;
}

namespace {

void check_block_config(std::size_t fibers, const std::vector<std::vector<std::size_t>> &index_sets,
                        const std::vector<std::vector<double>> &weights) {
    if (index_sets.size() != weights.size())
        throw Error(ErrorCode::LengthMismatch, "one weight row per index set required");
    for (std::size_t n = 0; n < weights.size(); ++n) {
        if (weights[n].size() != fibers)
            throw Error(ErrorCode::ShapeMismatch, "weight row " + std::to_string(n) + " needs one entry per fiber");
        for (double a : weights[n]) {
            if (!(a > 0.0)) throw Error(ErrorCode::InvalidWeight, "block weights must be > 0");
        }
        for (auto k : index_sets[n]) {
            if (k >= fibers) throw Error(ErrorCode::IndexOutOfRange, "fiber index " + std::to_string(k) + " out of range");
        }
    }
}

} // namespace

MultiplierCheck block_multiplier_check(ScalarKind kind, std::size_t fibers,
                                       const std::vector<std::vector<std::size_t>> &index_sets,
                                       const std::vector<std::vector<double>> &weights) {
    check_block_config(fibers, index_sets, weights);
    MultiplierCheck out;
    out.fiber_sums.assign(fibers, 0.0);
    for (std::size_t n = 0; n < index_sets.size(); ++n) {
        for (auto k : index_sets[n]) out.fiber_sums[k] += weights[n][k] * weights[n][k];
    }
    out.member = std::all_of(out.fiber_sums.begin(), out.fiber_sums.end(), [](double s) { return s > 0.0; });
    if (out.member) {
        std::vector<double> root(fibers);
        std::transform(out.fiber_sums.begin(), out.fiber_sums.end(), root.begin(), [](double s) { return std::sqrt(s); });
        out.tight_constant = AlgebraElement::from_real(kind, root);
    }
    return out;
}

WeightedFrame block_frame(ScalarKind kind, std::size_t fibers, const std::vector<std::vector<std::size_t>> &index_sets,
                          const std::vector<std::vector<double>> &weights) {
    check_block_config(fibers, index_sets, weights);
    const auto shape = ModuleShape::uniform(kind, fibers, 1);
    std::vector<Submodule> subs;
    std::vector<AlgebraElement> ws;
    for (std::size_t n = 0; n < index_sets.size(); ++n) {
        subs.push_back(Submodule::block(shape, index_sets[n]));
        ws.push_back(AlgebraElement::from_real(kind, weights[n]));
    }
    return {std::move(subs), std::move(ws)};
}

WeightedFrame cone_add(const WeightedFrame &f, std::span<const AlgebraElement> beta) {
    require_frame(f, "first weight sequence does not give a frame");
    std::vector<Submodule> subs(f.submodules().begin(), f.submodules().end());
    const WeightedFrame g(subs, {beta.begin(), beta.end()});
    require_frame(g, "second weight sequence does not give a frame");
    std::vector<AlgebraElement> sum;
    sum.reserve(f.size());
    for (std::size_t n = 0; n < f.size(); ++n) sum.push_back(f.weights()[n] + beta[n]);
    return {std::move(subs), std::move(sum)};
}

WeightedFrame cone_scale(const WeightedFrame &f, double lambda) {
    if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "cone rescaling needs lambda > 0");
    require_frame(f, "weight sequence does not give a frame");
    std::vector<AlgebraElement> scaled;
    scaled.reserve(f.size());
    for (const auto &w : f.weights()) scaled.push_back(lambda * w);
    return {{f.submodules().begin(), f.submodules().end()}, std::move(scaled)};
}

} // namespace cfusion
