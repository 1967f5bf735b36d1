// Conditional log densities of xi = log(sigma^2) written directly from the
// sigma^2-space expressions (normal kernel in V times the family prior),
// independent of the sampler's internal parameterization.
#pragma once

#include <cmath>

#include "oracles.hpp"

namespace oracle {

enum class Family { IG, GHS, NEG };

inline double conditional_log_xi(Family family, double alpha, double w, int k_contrasts,
                                 double v, double xi) {
    const double sigma_sq = std::exp(xi);
    // N_K(delta | 0, (I+J) sigma^2) kernel plus the Jacobian of sigma^2 = e^xi
    double logp = -0.5 * k_contrasts * xi - 0.5 * v / sigma_sq + xi;
    switch (family) {
        case Family::IG:
            logp += -(0.5 * alpha + 1.0) * xi - 0.5 * alpha * w / sigma_sq;
            break;
        case Family::GHS:
            logp += -0.5 * (alpha + 1.0) * std::log1p(sigma_sq / (alpha * w)) - 0.5 * xi;
            break;
        case Family::NEG:
            logp += -(0.5 * alpha + 1.0) * std::log1p(sigma_sq / (0.5 * alpha * w));
            break;
    }
    return logp;
}

// Normalizable iff the xi density decays on both sides.
inline bool conditional_is_proper(Family family, int k_contrasts, double v) {
    if (v > 0.0) return true;
    switch (family) {
        case Family::IG: return true;
        case Family::GHS: return false;
        case Family::NEG: return k_contrasts < 2;
    }
    return false;
}

inline GridDensity conditional_grid(Family family, double alpha, double w, int k_contrasts,
                                    double v, int n_nodes = 16384) {
    auto logd = [=](double xi) {
        return conditional_log_xi(family, alpha, w, k_contrasts, v, xi);
    };
    const double guess = std::log((alpha * w + v) / (alpha + k_contrasts));
    const auto [lo, hi] = density_range(logd, guess, 45.0);
    return tabulate_density(logd, lo, hi, n_nodes);
}

}  // namespace oracle
