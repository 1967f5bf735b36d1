#include "hbmlr/ars.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

namespace hbmlr {

namespace {

constexpr double kConcavityTol = 1e-8;
constexpr double kFlatSlope = 1e-13;
constexpr int kMaxRejections = 10000;

struct HullPoint {
    double x;
    double h;   // log density
    double dh;  // derivative
};

struct Hull {
    const LogConcaveTarget* target = nullptr;
    std::vector<HullPoint> pts;   // sorted by x
    std::vector<double> z;        // segment boundaries, size pts.size() + 1
    std::vector<double> log_mass; // per segment, under the tangent envelope

    void insert(HullPoint pt) {
        auto it = std::lower_bound(pts.begin(), pts.end(), pt.x,
                                   [](const HullPoint& a, double x) { return a.x < x; });
        if (it != pts.end() && it->x == pt.x) return;  // duplicate evaluation point
        pts.insert(it, pt);
        rebuild();
    }

    // Intersection of the tangents at pts[i] and pts[i+1].
    double tangent_intersection(std::size_t i) const {
        const HullPoint& a = pts[i];
        const HullPoint& b = pts[i + 1];
        const double slope_gap = a.dh - b.dh;
        if (b.dh > a.dh + kConcavityTol)
            throw SamplerError("ars: derivative increases between abscissae (not log-concave)");
        if (slope_gap <= kFlatSlope) return 0.5 * (a.x + b.x);
        double zi = (b.h - a.h + a.dh * a.x - b.dh * b.x) / slope_gap;
        // FP noise can push the intersection just outside the bracket
        return std::clamp(zi, a.x, b.x);
    }

    // log integral of exp(h + dh (x - x0)) over [lo, hi]
    static double segment_log_mass(const HullPoint& p, double lo, double hi) {
        if (!(hi > lo)) return -std::numeric_limits<double>::infinity();
        const double a = p.dh * (lo - p.x);
        const double b = p.dh * (hi - p.x);
        if (std::abs(p.dh) < kFlatSlope) {
            if (!std::isfinite(hi - lo)) throw SamplerError("ars: flat tangent on unbounded segment");
            return p.h + std::log(hi - lo) + 0.5 * (a + b);
        }
        const double mx = std::max(a, b);
        const double mn = std::min(a, b);
        // e^mn vanishes when mn = -inf (unbounded segment)
        const double diff = mn == mx ? -std::numeric_limits<double>::infinity()
                                     : std::log1p(-std::exp(mn - mx));
        return p.h + mx + diff - std::log(std::abs(p.dh));
    }

    void rebuild() {
        const std::size_t m = pts.size();
        z.assign(m + 1, 0.0);
        z[0] = target->support_lo;
        z[m] = target->support_hi;
        for (std::size_t i = 0; i + 1 < m; ++i) z[i + 1] = tangent_intersection(i);
        log_mass.resize(m);
        for (std::size_t i = 0; i < m; ++i)
            log_mass[i] = segment_log_mass(pts[i], z[i], z[i + 1]);
    }

    double upper(std::size_t seg, double x) const {
        return pts[seg].h + pts[seg].dh * (x - pts[seg].x);
    }

    // Chord lower bound between adjacent abscissae; -inf outside their range.
    double squeeze(double x) const {
        if (x <= pts.front().x || x >= pts.back().x)
            return -std::numeric_limits<double>::infinity();
        auto it = std::upper_bound(pts.begin(), pts.end(), x,
                                   [](double v, const HullPoint& p) { return v < p.x; });
        const HullPoint& b = *it;
        const HullPoint& a = *(it - 1);
        return a.h + (x - a.x) * (b.h - a.h) / (b.x - a.x);
    }

    // Draw (segment, x) from the normalized envelope.
    std::pair<std::size_t, double> sample(Rng& rng) const {
        const double mx = *std::max_element(log_mass.begin(), log_mass.end());
        if (!std::isfinite(mx)) throw SamplerError("ars: degenerate hull (zero mass)");
        double total = 0.0;
        std::vector<double> weights(log_mass.size());
        for (std::size_t i = 0; i < log_mass.size(); ++i)
            total += weights[i] = std::exp(log_mass[i] - mx);

        double u = draw_uniform(rng) * total;
        std::size_t seg = 0;
        for (; seg + 1 < weights.size(); ++seg) {
            if (u < weights[seg]) break;
            u -= weights[seg];
        }

        const HullPoint& p = pts[seg];
        const double lo = z[seg];
        const double hi = z[seg + 1];
        double u2 = draw_uniform(rng);
        if (u2 <= 0.0) u2 = DBL_MIN;
        double x;
        if (std::abs(p.dh) < kFlatSlope) {
            x = lo + u2 * (hi - lo);
        } else {
            const double a = p.dh * (lo - p.x);
            const double b = p.dh * (hi - p.x);
            const double m2 = std::max(a, b);
            const double ea = std::isfinite(a) ? std::exp(a - m2) : 0.0;
            const double eb = std::isfinite(b) ? std::exp(b - m2) : 0.0;
            x = p.x + (m2 + std::log(ea + u2 * (eb - ea))) / p.dh;
        }
        // inverse-CDF rounding can step over a boundary
        if (std::isfinite(lo)) x = std::max(x, lo);
        if (std::isfinite(hi)) x = std::min(x, hi);
        return {seg, x};
    }
};

}  // namespace

double ars_sample(const LogConcaveTarget& target, const std::vector<double>& init_abscissae,
                  Rng& rng) {
    if (init_abscissae.size() < 2)
        throw DomainError("ars: need at least 2 initial abscissae");

    Hull hull;
    hull.target = &target;
    std::vector<double> xs = init_abscissae;
    std::sort(xs.begin(), xs.end());
    for (double x : xs) {
        if (!(x > target.support_lo && x < target.support_hi))
            throw DomainError("ars: initial abscissa outside the support");
        const double h = target.log_density(x);
        const double dh = target.derivative(x);
        if (!std::isfinite(h) || !std::isfinite(dh))
            throw SamplerError("ars: non-finite log density at initial abscissa");
        if (!hull.pts.empty() && x == hull.pts.back().x) continue;
        hull.pts.push_back({x, h, dh});
    }
    if (hull.pts.size() < 2) throw DomainError("ars: initial abscissae collapse to one point");
    for (std::size_t i = 0; i + 1 < hull.pts.size(); ++i)
        if (hull.pts[i + 1].dh > hull.pts[i].dh + kConcavityTol)
            throw SamplerError("ars: derivative increases between abscissae (not log-concave)");
    if (std::isinf(target.support_lo) && !(hull.pts.front().dh > 0.0))
        throw SamplerError("ars: initial abscissae fail to bracket the mode from the left");
    if (std::isinf(target.support_hi) && !(hull.pts.back().dh < 0.0))
        throw SamplerError("ars: initial abscissae fail to bracket the mode from the right");
    hull.rebuild();

    for (int iter = 0; iter < kMaxRejections; ++iter) {
        auto [seg, x] = hull.sample(rng);
        const double u = draw_uniform(rng);
        const double log_u = std::log(u);
        const double up = hull.upper(seg, x);

        if (log_u <= hull.squeeze(x) - up) return x;  // squeeze accept, no evaluation

        const double h = target.log_density(x);
        if (!std::isfinite(h)) continue;  // far-tail underflow; effectively rejected
        if (h > up + kConcavityTol)
            throw SamplerError("ars: log density pierces the upper hull (not log-concave)");
        const double sq = hull.squeeze(x);
        if (std::isfinite(sq) && h < sq - kConcavityTol)
            throw SamplerError("ars: log density falls below the squeeze (not log-concave)");

        if (log_u <= h - up) return x;
        hull.insert({x, h, target.derivative(x)});
    }
    throw SamplerError("ars: rejection limit exceeded");
}

}  // namespace hbmlr
