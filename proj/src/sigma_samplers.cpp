#include "hbmlr/sigma_samplers.hpp"

#include <cmath>

namespace hbmlr {

namespace {

// log(1 + e^t) without overflow
double softplus(double t) {
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

void check_conditional_args(double alpha, double w, int k_contrasts, double v) {
    if (!(alpha > 0.0)) throw DomainError("sigma sampler: alpha must be > 0");
    if (!(w > 0.0)) throw DomainError("sigma sampler: w must be > 0");
    if (k_contrasts < 1) throw DomainError("sigma sampler: K must be >= 1");
    if (!(v >= 0.0)) throw DomainError("sigma sampler: V must be >= 0");
}

// Starting abscissae around an IG-scale surrogate for the conditional mode,
// pushed outward until the tangents bracet the mode.
std::vector<double> bracketed_abscissae(const LogConcaveTarget& target, double center,
                                        double half_width) {
    double lo = center - half_width;
    double hi = center + half_width;
    double step = half_width;
    int tries = 0;
    while (!(target.derivative(lo) > 0.0)) {
        lo -= step;
        step *= 2.0;
        if (++tries > 200)
            throw SamplerError("ars bracket: no point of positive derivative found");
    }
    step = half_width;
    tries = 0;
    while (!(target.derivative(hi) < 0.0)) {
        hi += step;
        step *= 2.0;
        if (++tries > 200)
            throw SamplerError("ars bracket: no point of negative derivative found");
    }
    return {lo, 0.5 * (lo + hi), hi};
}

double ars_on_xi(const LogConcaveTarget& target, double alpha, double w, int k_contrasts,
                 double v, Rng& rng) {
    const double surrogate = (alpha * w + v) / (alpha + k_contrasts);
    const auto abscissae = bracketed_abscissae(target, std::log(surrogate), 2.0);
    return std::exp(ars_sample(target, abscissae, rng));
}

}  // namespace

double sample_sigma_sq_ig(double alpha, double w, int k_contrasts, double v, Rng& rng) {
    check_conditional_args(alpha, w, k_contrasts, v);
    return draw_inverse_gamma(rng, 0.5 * (alpha + k_contrasts), 0.5 * (alpha * w + v));
}

double sample_sigma_sq_ghs(double alpha, double w, int k_contrasts, double v, Rng& rng) {
    check_conditional_args(alpha, w, k_contrasts, v);
    if (v == 0.0)
        throw SamplerError(
            "ghs conditional: V = 0 leaves non-normalizable mass at sigma^2 -> 0");
    const double log_aw = std::log(alpha * w);
    LogConcaveTarget target;
    target.log_density = [=](double xi) {
        return -0.5 * k_contrasts * xi - 0.5 * v * std::exp(-xi) -
               0.5 * (alpha + 1.0) * softplus(xi - log_aw) + 0.5 * xi;
    };
    target.derivative = [=](double xi) {
        return -0.5 * k_contrasts + 0.5 * v * std::exp(-xi) -
               0.5 * (alpha + 1.0) / (1.0 + std::exp(log_aw - xi)) + 0.5;
    };
    return ars_on_xi(target, alpha, w, k_contrasts, v, rng);
}

double sample_sigma_sq_neg(double alpha, double w, int k_contrasts, double v, Rng& rng) {
    check_conditional_args(alpha, w, k_contrasts, v);
    if (v == 0.0 && k_contrasts >= 2)
        throw SamplerError(
            "neg conditional: V = 0 with K >= 2 leaves non-normalizable mass at sigma^2 -> 0");
    const double log_lambda = std::log(alpha * w / 2.0);
    LogConcaveTarget target;
    target.log_density = [=](double xi) {
        return -0.5 * k_contrasts * xi - 0.5 * v * std::exp(-xi) -
               (0.5 * alpha + 1.0) * softplus(xi - log_lambda) + xi;
    };
    target.derivative = [=](double xi) {
        return -0.5 * k_contrasts + 0.5 * v * std::exp(-xi) -
               (0.5 * alpha + 1.0) / (1.0 + std::exp(log_lambda - xi)) + 1.0;
    };
    return ars_on_xi(target, alpha, w, k_contrasts, v, rng);
}

double sample_log_w(const Vector& sigma_sq, double alpha, double hyper_prior_variance,
                    Rng& rng) {
    if (sigma_sq.size() < 1) throw DomainError("sample_log_w: empty sigma_sq");
    if ((sigma_sq.array() <= 0.0).any())
        throw DomainError("sample_log_w: sigma_sq entries must be > 0");
    if (!(hyper_prior_variance > 0.0))
        throw DomainError("sample_log_w: hyper prior variance must be > 0");
    if (!(alpha > 0.0)) throw DomainError("sample_log_w: alpha must be > 0");

    const double p = static_cast<double>(sigma_sq.size());
    const double s = sigma_sq.array().inverse().sum();
    const double v = hyper_prior_variance;
    LogConcaveTarget target;
    target.log_density = [=](double u) {
        return 0.5 * p * alpha * u - 0.5 * alpha * std::exp(u) * s - u * u / (2.0 * v);
    };
    target.derivative = [=](double u) {
        return 0.5 * p * alpha - 0.5 * alpha * std::exp(u) * s - u / v;
    };
    const auto abscissae = bracketed_abscissae(target, std::log(p / s), 2.0);
    return ars_sample(target, abscissae, rng);
}

double sample_sigma_sq_prior(PriorFamily family, double alpha, double w, Rng& rng) {
    const double half_alpha = alpha / 2.0;
    switch (family) {
        case PriorFamily::T:
            return draw_inverse_gamma(rng, half_alpha, half_alpha * w);
        case PriorFamily::GHS: {
            // sigma = sqrt(w) |t_alpha|, so sigma^2 = w N^2 IG(alpha/2, alpha/2)
            const double n = draw_normal(rng);
            return w * n * n * draw_inverse_gamma(rng, half_alpha, half_alpha);
        }
        case PriorFamily::NEG:
            // sigma^2 | psi ~ Exp(mean psi), psi ~ IG(alpha/2, alpha w/2)
            return draw_exponential(rng) * draw_inverse_gamma(rng, half_alpha, half_alpha * w);
    }
    throw DomainError("sample_sigma_sq_prior: unknown family");
}

}  // namespace hbmlr
