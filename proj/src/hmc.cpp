#include "hbmlr/hmc.hpp"

#include <cmath>

namespace hbmlr {

namespace {

Vector checked_gradient(const GradientFn& grad_u, const Vector& q) {
    Vector g = grad_u(q);
    if (!g.allFinite()) {
        for (Index i = 0; i < g.size(); ++i)
            if (!std::isfinite(g[i])) throw NonFiniteGradientError(i);
    }
    return g;
}

}  // namespace

std::pair<Vector, Vector> leapfrog(Vector q, Vector p, const Vector& stepsizes,
                                   const GradientFn& grad_u, int steps) {
    if (q.size() != p.size() || q.size() != stepsizes.size())
        throw DimensionError("leapfrog: q, p, stepsizes must have equal length");
    if (steps < 1) throw DomainError("leapfrog: steps must be >= 1");

    // half step for the momentum at the beginning
    p.array() -= 0.5 * stepsizes.array() * checked_gradient(grad_u, q).array();
    for (int s = 0; s < steps; ++s) {
        // full step for the position
        q.array() += stepsizes.array() * p.array();
        // full step for the momentum, except at the end of the trajectory
        if (s != steps - 1)
            p.array() -= stepsizes.array() * checked_gradient(grad_u, q).array();
    }
    // half step for the momentum at the end
    p.array() -= 0.5 * stepsizes.array() * checked_gradient(grad_u, q).array();
    return {std::move(q), std::move(p)};
}

HmcOutcome hmc_update(const Vector& q, const GradientFn& grad_u, const PotentialFn& u,
                      const HmcConfig& config, const Vector& base_curvatures, Rng& rng) {
    if (config.trajectory_length < 1) throw DomainError("hmc: trajectory_length must be >= 1");
    if (!(config.stepsize_adjust > 0.0)) throw DomainError("hmc: stepsize_adjust must be > 0");
    if (base_curvatures.size() != q.size())
        throw DimensionError("hmc: curvature length != position length");
    if ((base_curvatures.array() <= 0.0).any())
        throw DomainError("hmc: curvatures must be > 0");

    const Vector stepsizes = config.stepsize_adjust / base_curvatures.array().sqrt();

    const Vector p0 = draw_normal_vector(rng, q.size());
    const double h0 = u(q) + 0.5 * p0.squaredNorm();

    HmcOutcome out;
    out.trajectory_length_used = config.trajectory_length;

    double h1 = std::numeric_limits<double>::infinity();
    Vector q_star;
    bool diverged = false;
    try {
        auto [qs, ps] = leapfrog(q, p0, stepsizes, grad_u, config.trajectory_length);
        h1 = u(qs) + 0.5 * ps.squaredNorm();
        q_star = std::move(qs);
    } catch (const NonFiniteGradientError&) {
        diverged = true;  // trajectory blew up; treat as a divergent proposal
    }

    out.delta_h = h1 - h0;
    if (diverged || !std::isfinite(out.delta_h) || std::abs(out.delta_h) > 1000.0) {
        out.accepted = false;
        out.divergent = true;
        out.new_position = q;
        draw_uniform(rng);  // keep the draw count independent of the outcome
        return out;
    }

    const double accept_u = draw_uniform(rng);
    if (out.delta_h <= 0.0 || accept_u < std::exp(-out.delta_h)) {
        out.accepted = true;
        out.new_position = std::move(q_star);
    } else {
        out.accepted = false;
        out.new_position = q;
    }
    return out;
}

}  // namespace hbmlr
