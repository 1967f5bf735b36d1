// Test-only oracles, independent of the library implementation paths they
// check: finite differences, trapezoid quadrature with grid inverse CDFs,
// Kolmogorov-Smirnov distances, and batch-means standard errors.
#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Scalar1D = std::function<double(double)>;

inline Eigen::VectorXd finite_difference_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
    double h = 1e-4) {
    Eigen::VectorXd grad(x.size());
    Eigen::VectorXd probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double step = h * std::max(1.0, std::abs(x[i]));
        probe[i] = x[i] + step;
        const double up = f(probe);
        probe[i] = x[i] - step;
        const double down = f(probe);
        probe[i] = x[i];
        grad[i] = (up - down) / (2.0 * step);
    }
    return grad;
}

// Trapezoid rule over a uniform grid.
inline double trapezoid(const Scalar1D& f, double lo, double hi, int n_nodes) {
    const double h = (hi - lo) / (n_nodes - 1);
    double total = 0.5 * (f(lo) + f(hi));
    for (int i = 1; i + 1 < n_nodes; ++i) total += f(lo + i * h);
    return total * h;
}

// Walk uphill from `guess` to the mode of a concave log density, then expand
// outward until the density has dropped by `drop` nats on both sides.
inline std::pair<double, double> density_range(const Scalar1D& log_density, double guess,
                                               double drop = 45.0) {
    double x = guess;
    double fx = log_density(x);
    for (double step : {8.0, 2.0, 0.5, 0.1}) {
        for (int iter = 0; iter < 500; ++iter) {
            const double fl = log_density(x - step);
            const double fr = log_density(x + step);
            if (fl > fx && fl >= fr) {
                x -= step;
                fx = fl;
            } else if (fr > fx) {
                x += step;
                fx = fr;
            } else {
                break;
            }
        }
    }
    double lo = x, hi = x;
    double step = 1.0;
    while (log_density(lo) > fx - drop) {
        lo -= step;
        step *= 1.4;
        if (lo < x - 1e6) throw std::runtime_error("density_range: no left decay");
    }
    step = 1.0;
    while (log_density(hi) > fx - drop) {
        hi += step;
        step *= 1.4;
        if (hi > x + 1e6) throw std::runtime_error("density_range: no right decay");
    }
    return {lo, hi};
}

// Tabulated 1-D density: normalized CDF on a uniform grid, linear interpolation.
struct GridDensity {
    std::vector<double> x;
    std::vector<double> cdf;

    double cdf_at(double v) const {
        if (v <= x.front()) return 0.0;
        if (v >= x.back()) return 1.0;
        const auto it = std::upper_bound(x.begin(), x.end(), v);
        const std::size_t i = static_cast<std::size_t>(it - x.begin());
        const double t = (v - x[i - 1]) / (x[i] - x[i - 1]);
        return cdf[i - 1] + t * (cdf[i] - cdf[i - 1]);
    }

    double quantile(double u) const {
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.begin()) return x.front();
        if (it == cdf.end()) return x.back();
        const std::size_t i = static_cast<std::size_t>(it - cdf.begin());
        const double span = cdf[i] - cdf[i - 1];
        const double t = span > 0.0 ? (u - cdf[i - 1]) / span : 0.5;
        return x[i - 1] + t * (x[i] - x[i - 1]);
    }
};

inline GridDensity tabulate_density(const Scalar1D& log_density, double lo, double hi,
                                    int n_nodes = 8192) {
    GridDensity g;
    g.x.resize(n_nodes);
    std::vector<double> logv(n_nodes);
    const double h = (hi - lo) / (n_nodes - 1);
    double mx = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_nodes; ++i) {
        g.x[i] = lo + i * h;
        logv[i] = log_density(g.x[i]);
        mx = std::max(mx, logv[i]);
    }
    g.cdf.assign(n_nodes, 0.0);
    double run = 0.0;
    for (int i = 1; i < n_nodes; ++i) {
        run += 0.5 * (std::exp(logv[i - 1] - mx) + std::exp(logv[i] - mx)) * h;
        g.cdf[i] = run;
    }
    if (!(run > 0.0)) throw std::runtime_error("tabulate_density: zero mass");
    for (double& c : g.cdf) c /= run;
    return g;
}

// KS distance between a sample and a continuous CDF.
inline double ks_statistic(std::vector<double> sample, const Scalar1D& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::max(f - i / n, (i + 1) / n - f));
    }
    return d;
}

// Two-sample KS distance.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] <= b[ib])
            ++ia;
        else
            ++ib;
        d = std::max(d, std::abs(static_cast<double>(ia) / a.size() -
                                 static_cast<double>(ib) / b.size()));
    }
    return d;
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
}

inline double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (v.size() - 1);
}

inline double median(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        std::nth_element(v.begin(), v.begin() + mid - 1, v.end());
        m = 0.5 * (m + v[mid - 1]);
    }
    return m;
}

// Standard error of the mean of a correlated sequence by batch means.
inline double batch_means_se(const std::vector<double>& chain, int n_batches = 30) {
    const std::size_t m = chain.size() / n_batches;
    if (m < 2) throw std::runtime_error("batch_means_se: chain too short");
    std::vector<double> batch(n_batches);
    for (int b = 0; b < n_batches; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += chain[b * m + i];
        batch[b] = s / m;
    }
    return std::sqrt(variance(batch) / n_batches);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace oracle
