#pragma once

#include <functional>
#include <utility>

#include "hbmlr/rng.hpp"
#include "hbmlr/types.hpp"

namespace hbmlr {

using PotentialFn = std::function<double(const Vector&)>;
using GradientFn = std::function<Vector(const Vector&)>;

struct HmcConfig {
    int trajectory_length = 1;     // l >= 1 leapfrog steps
    double stepsize_adjust = 0.3;  // eps, multiplier on the per-coordinate base stepsizes
};

struct HmcOutcome {
    Vector new_position;        // equals the starting position exactly on rejection
    bool accepted = false;
    bool divergent = false;     // |delta_h| blew past the guard (counted as rejection)
    double delta_h = 0.0;
    int trajectory_length_used = 0;
};

/// Leapfrog integration of (q, p) with coordinate-specific stepsizes:
/// half kick, full drift, half kick, `steps` times (interior kicks fused).
/// Throws NonFiniteGradientError if grad_u returns a non-finite entry.
std::pair<Vector, Vector> leapfrog(Vector q, Vector p, const Vector& stepsizes,
                                   const GradientFn& grad_u, int steps);

/// One HMC update of exp(-u): momenta i.i.d. N(0,1), per-coordinate stepsize
/// eps / sqrt(curvature_i), trajectory of config.trajectory_length leapfrog
/// steps, Metropolis acceptance min(1, exp(-[H(q*,p*) - H(q,-p)])) with
/// kinetic energy |p|^2 / 2. A trajectory whose |delta H| exceeds 1000 (or
/// goes non-finite) is a flagged divergent rejection.
HmcOutcome hmc_update(const Vector& q, const GradientFn& grad_u, const PotentialFn& u,
                      const HmcConfig& config, const Vector& base_curvatures, Rng& rng);

}  // namespace hbmlr
