#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "hbmlr/rng.hpp"
#include "hbmlr/types.hpp"

namespace hbmlr {

/// A 1-D log-concave density known up to an additive constant on an open
/// interval. The derivative must be nonincreasing on the support; violations
/// are detected at runtime while the hull is refined.
struct LogConcaveTarget {
    std::function<double(double)> log_density;
    std::function<double(double)> derivative;
    double support_lo = -std::numeric_limits<double>::infinity();
    double support_hi = std::numeric_limits<double>::infinity();
};

/// Adaptive rejection sampling (Gilks & Wild 1992): one exact draw from the
/// normalized target via a piecewise-exponential upper hull built from
/// tangents at the abscissae, with a chord squeeze; the hull is refined at
/// every rejected or squeezed-past point.
///
/// Requires >= 2 initial abscissae. On an unbounded side the outermost
/// abscissa must have a derivative pointing toward the mode (positive on the
/// left, negative on the right), otherwise the hull has infinite mass and a
/// SamplerError is thrown.
double ars_sample(const LogConcaveTarget& target, const std::vector<double>& init_abscissae,
                  Rng& rng);

}  // namespace hbmlr
