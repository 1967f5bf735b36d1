#pragma once

#include <random>

#include "hbmlr/types.hpp"

namespace hbmlr {

// Single RNG type used everywhere. Distributions are constructed fresh per
// call so the draw sequence is a pure function of the engine state, which is
// what the byte-identical reproducibility contract of the stores relies on.
using Rng = std::mt19937_64;

inline double draw_uniform(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double draw_normal(Rng& rng) {
    return std::normal_distribution<double>(0.0, 1.0)(rng);
}

inline double draw_exponential(Rng& rng) {
    return std::exponential_distribution<double>(1.0)(rng);
}

inline double draw_gamma(Rng& rng, double shape, double scale) {
    return std::gamma_distribution<double>(shape, scale)(rng);
}

// Inverse-Gamma(shape, rate): reciprocal of a Gamma variate, mean rate/(shape-1).
inline double draw_inverse_gamma(Rng& rng, double shape, double rate) {
    return rate / draw_gamma(rng, shape, 1.0);
}

inline Vector draw_normal_vector(Rng& rng, Index d) {
    Vector v(d);
    for (Index i = 0; i < d; ++i) v[i] = draw_normal(rng);
    return v;
}

}  // namespace hbmlr
