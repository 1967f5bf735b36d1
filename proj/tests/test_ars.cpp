#include <doctest.h>

#include <cmath>
#include <cstring>

#include "hbmlr/ars.hpp"
#include "oracles.hpp"

using namespace hbmlr;

namespace {

LogConcaveTarget standard_normal_target() {
    LogConcaveTarget t;
    t.log_density = [](double x) { return -0.5 * x * x; };
    t.derivative = [](double x) { return -x; };
    return t;
}

}  // namespace

TEST_CASE("ars: standard normal draws pass KS and moment checks") {
    const LogConcaveTarget target = standard_normal_target();
    Rng rng(42);
    const int n = 10000;
    std::vector<double> draws(n);
    for (int i = 0; i < n; ++i) draws[i] = ars_sample(target, {-1.0, 1.5}, rng);

    const double crit_1pct = 1.63 / std::sqrt(static_cast<double>(n));
    CHECK(oracle::ks_statistic(draws, oracle::normal_cdf) < crit_1pct);
    CHECK(std::abs(oracle::mean(draws)) < 3.0 / std::sqrt(n));
    // SE of the sample variance of a normal is sqrt(2/n)
    CHECK(std::abs(oracle::variance(draws) - 1.0) < 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("ars: Exp(1) on (0, inf)") {
    LogConcaveTarget target;
    target.log_density = [](double x) { return -x; };
    target.derivative = [](double) { return -1.0; };
    target.support_lo = 0.0;

    Rng rng(43);
    const int n = 10000;
    std::vector<double> draws(n);
    for (int i = 0; i < n; ++i) draws[i] = ars_sample(target, {0.5, 2.0}, rng);
    CHECK(oracle::mean(draws) == doctest::Approx(1.0).epsilon(3.0 / std::sqrt(n)));
    CHECK(*std::min_element(draws.begin(), draws.end()) > 0.0);
    auto exp_cdf = [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x); };
    CHECK(oracle::ks_statistic(draws, exp_cdf) < 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("ars: translation equivariance") {
    const double shift = 3.25;
    LogConcaveTarget shifted;
    shifted.log_density = [shift](double x) { return -0.5 * (x - shift) * (x - shift); };
    shifted.derivative = [shift](double x) { return -(x - shift); };

    // identical generator streams: the draw shifts exactly with the target
    for (std::uint64_t seed : {1ULL, 9ULL, 77ULL}) {
        Rng a(seed), b(seed);
        const double base = ars_sample(standard_normal_target(), {-1.0, 1.5}, a);
        const double moved = ars_sample(shifted, {-1.0 + shift, 1.5 + shift}, b);
        CHECK(moved == doctest::Approx(base + shift).epsilon(1e-12));
    }
}

TEST_CASE("ars: detects a non-log-concave target") {
    // two-component normal mixture: derivative increases between the modes
    LogConcaveTarget bimodal;
    bimodal.log_density = [](double x) {
        return std::log(std::exp(-0.5 * (x - 3) * (x - 3)) +
                        std::exp(-0.5 * (x + 3) * (x + 3)));
    };
    bimodal.derivative = [&](double x) {
        const double a = std::exp(-0.5 * (x - 3) * (x - 3));
        const double b = std::exp(-0.5 * (x + 3) * (x + 3));
        return (-(x - 3) * a - (x + 3) * b) / (a + b);
    };
    Rng rng(11);
    bool threw = false;
    try {
        for (int i = 0; i < 2000; ++i) ars_sample(bimodal, {-4.0, 0.5, 4.0}, rng);
    } catch (const SamplerError&) {
        threw = true;
    }
    CHECK(threw);
}

TEST_CASE("ars: unbracketed mode is an error") {
    Rng rng(13);
    // both abscissae left of the mode: uphill derivative at the right end
    CHECK_THROWS_AS(ars_sample(standard_normal_target(), {-3.0, -2.0}, rng), SamplerError);
    CHECK_THROWS_AS(ars_sample(standard_normal_target(), {2.0, 3.0}, rng), SamplerError);
    CHECK_THROWS_AS(ars_sample(standard_normal_target(), {0.5}, rng), DomainError);
}

TEST_CASE("ars: doubling the initial abscissae leaves the distribution unchanged") {
    const LogConcaveTarget target = standard_normal_target();
    const int n = 8000;
    Rng a(101), b(202);
    std::vector<double> sparse(n), dense(n);
    for (int i = 0; i < n; ++i) sparse[i] = ars_sample(target, {-1.0, 1.0}, a);
    for (int i = 0; i < n; ++i)
        dense[i] = ars_sample(target, {-2.0, -1.0, -0.3, 0.3, 1.0, 2.0}, b);
    const double crit_1pct = 1.63 / std::sqrt(static_cast<double>(n));
    CHECK(oracle::ks_statistic(sparse, oracle::normal_cdf) < crit_1pct);
    CHECK(oracle::ks_statistic(dense, oracle::normal_cdf) < crit_1pct);
    CHECK(oracle::ks_two_sample(sparse, dense) < 1.63 * std::sqrt(2.0 / n));
}
