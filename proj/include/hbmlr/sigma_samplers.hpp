#pragma once

#include "hbmlr/ars.hpp"
#include "hbmlr/rng.hpp"
#include "hbmlr/types.hpp"

// Conditional samplers for the per-feature variances sigma_j^2 given
// V = V(delta_{j,1:K}), one per prior family, plus the optional log(w)
// update. The GHS and NEG conditionals are sampled on xi = log(sigma^2)
// with ARS; the IG conditional is in closed form.

namespace hbmlr {

/// Draw from IG((alpha + K)/2, (alpha w + V)/2); the t-family conditional.
double sample_sigma_sq_ig(double alpha, double w, int k_contrasts, double v, Rng& rng);

/// GHS conditional: ARS on the xi log-density
///   -(K/2) xi - V e^{-xi}/2 - ((alpha+1)/2) log(1 + e^xi/(alpha w)) - xi/2 + xi.
/// V = 0 makes the conditional non-normalizable and throws.
double sample_sigma_sq_ghs(double alpha, double w, int k_contrasts, double v, Rng& rng);

/// NEG conditional: ARS on the xi log-density
///   -(K/2) xi - V e^{-xi}/2 - (alpha/2 + 1) log(1 + e^xi/lambda) + xi,
/// lambda = alpha w / 2. V = 0 with K >= 2 is non-normalizable and throws.
double sample_sigma_sq_neg(double alpha, double w, int k_contrasts, double v, Rng& rng);

/// One draw of u = log w from the conditional given sigma^2_{1:p} under a
/// N(0, hyper_prior_variance) prior on log w:
///   (p alpha / 2) u - (alpha e^u / 2) sum_j sigma_j^-2 - u^2 / (2 v).
double sample_log_w(const Vector& sigma_sq, double alpha, double hyper_prior_variance,
                    Rng& rng);

/// Draw sigma^2 from the marginal prior of the family (used to move the chain
/// off the measure-zero V = 0 states where the GHS/NEG conditionals are
/// non-normalizable).
double sample_sigma_sq_prior(PriorFamily family, double alpha, double w, Rng& rng);

}  // namespace hbmlr
