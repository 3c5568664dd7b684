#include "cfusion/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cfusion {

namespace {

struct FiberAngle {
    double sine = 0.0;
    double cosine = 1.0;
};

FiberAngle fiber_angle(const CMatrix &pu, const CMatrix &pv) {
    const auto m = pu.rows();
    FiberAngle out;
    if (m == 1) {
        const double a = pu(0, 0).real();
        const double b = pv(0, 0).real();
        out = {std::abs(a - b), std::abs(a + b - 1.0)};
    } else {
        // (P-Q)^2 + (P+Q-I)^2 = I, so the largest |eig(P-Q)| and the smallest |eig(P+Q-I)|
        // are the sine and cosine of one angle.
        const auto diff = linalg::hermitian_extremes(pu - pv);
        const CMatrix sum = pu + pv - CMatrix::Identity(m, m);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (sum + sum.adjoint()), Eigen::EigenvaluesOnly);
        out = {std::max(std::abs(diff.min), std::abs(diff.max)), es.eigenvalues().cwiseAbs().minCoeff()};
    }
    // below the eigensolver's resolution the cosine is indistinguishable from zero
    if (out.cosine <= 16.0 * static_cast<double>(m) * std::numeric_limits<double>::epsilon()) out.cosine = 0.0;
    return out;
}

std::vector<FiberAngle> fiber_angles(const Submodule &u, const Submodule &v) {
    require_same_shape(u.shape(), v.shape());
    std::vector<FiberAngle> out;
    out.reserve(u.shape().fiber_count());
    for (std::size_t k = 0; k < u.shape().fiber_count(); ++k) out.push_back(fiber_angle(u.projection(k), v.projection(k)));
    return out;
}

void require_lengths(std::size_t a, std::size_t b) {
    if (a != b) throw Error(ErrorCode::LengthMismatch, "submodule sequences differ in length");
}

double lower_threshold(const FrameBounds &b) {
    // ||A^{-1}||^{-1} for a positive fiberwise A is its smallest fiber.
    double t = std::numeric_limits<double>::infinity();
    for (const auto &a : b.lower.fibers()) t = std::min(t, a.w);
    return t;
}

CMatrix rotated(const CMatrix &p, std::size_t i, std::size_t j, double theta, double phase) {
    CMatrix g = linalg::givens(static_cast<std::size_t>(p.rows()), i, j, theta);
    const Complex e = std::polar(1.0, phase);
    g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) *= e;
    g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *= std::conj(e);
    const CMatrix r = g * p * g.adjoint();
    return 0.5 * (r + r.adjoint());
}

} // namespace

double proj_distance(const Submodule &u, const Submodule &v) {
    double d = 0.0;
    for (const auto &fa : fiber_angles(u, v)) d = std::max(d, fa.sine);
    return std::min(d, 1.0);
}

double angle(const Submodule &u, const Submodule &v) {
    double theta = 0.0;
    for (const auto &fa : fiber_angles(u, v)) theta = std::max(theta, std::atan2(fa.sine, fa.cosine));
    return std::clamp(theta, 0.0, std::numbers::pi / 2);
}

double ecart(std::span<const Submodule> us, std::span<const Submodule> vs, std::span<const double> w) {
    require_lengths(us.size(), vs.size());
    require_lengths(us.size(), w.size());
    double acc = 0.0;
    for (std::size_t n = 0; n < us.size(); ++n) {
        if (!(w[n] > 0.0)) throw Error(ErrorCode::InvalidArgument, "ecart weights must be > 0");
        const double d = proj_distance(us[n], vs[n]);
        acc += w[n] * d * d;
    }
    return std::sqrt(acc);
}

std::vector<double> squared_weight_norms(std::span<const AlgebraElement> weights) {
    std::vector<double> q(weights.size());
    for (std::size_t n = 0; n < weights.size(); ++n) {
        const double a = alg_norm(weights[n]);
        q[n] = a * a;
    }
    return q;
}

bool ball_membership(std::span<const Submodule> center, double radius, std::span<const Submodule> candidate,
                     std::span<const double> w) {
    if (radius < 0.0) throw Error(ErrorCode::InvalidArgument, "radius must be >= 0");
    return ecart(center, candidate, w) < radius;
}

AngleCriteria angle_criteria(const WeightedFrame &f, std::span<const Submodule> ks, std::optional<double> p) {
    require_lengths(f.size(), ks.size());
    const auto bounds = frame_bounds(f);
    if (!bounds.is_frame) throw Error(ErrorCode::NotAFrame, "angle criteria need a frame");
    if (p && !(*p > 1.0 && std::isfinite(*p))) throw Error(ErrorCode::InvalidArgument, "Holder exponent must lie in (1, inf)");

    const double thr = lower_threshold(bounds);
    const auto q = squared_weight_norms(f.weights());
    std::vector<double> theta(f.size());
    for (std::size_t n = 0; n < f.size(); ++n) theta[n] = angle(f.submodules()[n], ks[n]);

    AngleCriteria out;
    out.p = p;
    for (std::size_t n = 0; n < f.size(); ++n) out.weighted.lhs += q[n] * theta[n] * theta[n];
    out.weighted.rhs = thr * thr;
    out.weighted.holds = out.weighted.lhs < out.weighted.rhs;

    const double winf = std::sqrt(*std::max_element(q.begin(), q.end()));
    for (double t : theta) out.bounded.lhs += t * t;
    out.bounded.rhs = (thr / winf) * (thr / winf);
    out.bounded.holds = out.bounded.lhs < out.bounded.rhs;

    if (p) {
        const double conj = *p / (*p - 1.0);
        double qnorm = 0.0;
        for (double v : q) qnorm += std::pow(v, *p);
        qnorm = std::pow(qnorm, 1.0 / *p);
        CriterionValue h;
        for (double t : theta) h.lhs += std::pow(t, 2.0 * conj);
        h.rhs = std::pow(thr * thr / qnorm, conj);
        h.holds = h.lhs < h.rhs;
        out.holder = h;
    }
    return out;
}

PerturbReport perturbation_check(const WeightedFrame &f, std::span<const Submodule> ks, std::optional<double> p) {
    require_lengths(f.size(), ks.size());
    for (const auto &k : ks) require_same_shape(f.shape(), k.shape());
    const auto bounds = frame_bounds(f);
    if (!bounds.is_frame) throw Error(ErrorCode::NotAFrame, "perturbation check needs a frame");

    PerturbReport r;
    r.weights = squared_weight_norms(f.weights());
    for (std::size_t n = 0; n < f.size(); ++n) {
        r.distances.push_back(proj_distance(f.submodules()[n], ks[n]));
        r.angles.push_back(angle(f.submodules()[n], ks[n]));
    }
    r.ecart = ecart(f.submodules(), ks, r.weights);
    r.threshold = lower_threshold(bounds);
    r.upper_norm = alg_norm(bounds.upper);
    r.guaranteed = r.ecart < r.threshold;
    r.predicted_lower = r.guaranteed ? (r.threshold - r.ecart) * (r.threshold - r.ecart) : 0.0;
    r.predicted_upper = (r.upper_norm + r.ecart) * (r.upper_norm + r.ecart);
    if (r.guaranteed) {
        const WeightedFrame g({ks.begin(), ks.end()}, {f.weights().begin(), f.weights().end()});
        r.perturbed = frame_bounds(g);
        r.confirmed = r.perturbed->is_frame && r.perturbed->c >= r.predicted_lower - kPerturbConfirmSlack &&
                      r.perturbed->d <= r.predicted_upper + kPerturbConfirmSlack;
    }
    r.criteria = angle_criteria(f, ks, p);
    const auto implies = [&](const CriterionValue &c) { return !c.holds || r.guaranteed; };
    r.criteria_consistent = implies(r.criteria.weighted) && implies(r.criteria.bounded) &&
                            (!r.criteria.holder || implies(*r.criteria.holder));
    return r;
}

Submodule givens_rotate(const Submodule &u, std::size_t i, std::size_t j, double theta, double phase) {
    const auto &shape = u.shape();
    if (shape.kind() != ScalarKind::Complex) return u;
    std::vector<CMatrix> p;
    p.reserve(shape.fiber_count());
    for (std::size_t k = 0; k < shape.fiber_count(); ++k) {
        const std::size_t m = shape.dim(k);
        if (m < 2 || i >= m || j >= m || i == j) {
            p.push_back(u.projection(k));
            continue;
        }
        p.push_back(rotated(u.projection(k), i, j, theta, phase));
    }
    return Submodule::from_projections(shape, std::move(p));
}

std::vector<Submodule> rotate_all(const WeightedFrame &f, double theta) {
    std::vector<Submodule> out;
    for (const auto &u : f.submodules()) out.push_back(givens_rotate(u, 0, 1, theta));
    return out;
}

double rotation_budget(const WeightedFrame &f, double margin) {
    const auto bounds = frame_bounds(f);
    if (!bounds.is_frame) throw Error(ErrorCode::NotAFrame, "rotation budget needs a frame");
    double total = 0.0;
    for (double v : squared_weight_norms(f.weights())) total += v;
    const double s = (1.0 - margin) * lower_threshold(bounds) / std::sqrt(total);
    return std::asin(std::min(1.0, s));
}

std::vector<Submodule> random_rotations(const WeightedFrame &f, double theta_max, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> angle_dist(0.0, theta_max);
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
    const auto &shape = f.shape();
    std::vector<Submodule> out;
    for (const auto &u : f.submodules()) {
        if (shape.kind() != ScalarKind::Complex) {
            out.push_back(u);
            continue;
        }
        std::vector<CMatrix> p;
        for (std::size_t k = 0; k < shape.fiber_count(); ++k) {
            const std::size_t m = shape.dim(k);
            if (m < 2) {
                p.push_back(u.projection(k));
                continue;
            }
            std::uniform_int_distribution<std::size_t> pick(0, m - 1);
            const std::size_t i = pick(rng);
            std::size_t j = pick(rng);
            while (j == i) j = pick(rng);
            const double theta = angle_dist(rng);
            const double phase = phase_dist(rng);
            p.push_back(rotated(u.projection(k), i, j, theta, phase));
        }
        out.push_back(Submodule::from_projections(shape, std::move(p)));
    }
    return out;
}

} // namespace cfusion
