#pragma once

#include "hbmlr/rng.hpp"
#include "hbmlr/types.hpp"

namespace hbmlr {

/// Two-class design with p = 200: x | y = c ~ N(mu_c, A A' + I) drawn in
/// factor form x = mu_c + A z + e, where A has unit diagonal and a single
/// off-diagonal entry a_21 = corr_coeff; class 2 shifts feature 1 by
/// mean_shift. Only the first two (standardized) coefficients are nonzero.
struct SyntheticSpecA {
    Index n_train = 100;
    Index n_test = 1000;
    static constexpr Index p = 200;
    double corr_coeff = 2.0;  // a_21
    double mean_shift = 2.0;  // class-2 mean of feature 1
    std::uint64_t seed = 1;
};

struct BinarySimulation {
    Dataset train;
    Dataset test;
    Vector true_delta;  // (delta_0, delta_1, delta_2) on the standardized scale
};

BinarySimulation simulate_binary_p200(const SyntheticSpecA& spec, Rng& rng);

/// Three-class design: 10 structured features built from shared factors
/// (feature 1 differential in class 2; feature 2 correlated with it through
/// z1; features 3-10 a correlated group differential in class 3), plus
/// noise_features i.i.d. N(0,1) "hay".
struct SyntheticSpecB {
    Index n_train = 100;
    Index n_test = 2000;
    static constexpr int class_count = 3;
    static constexpr Index structured_features = 10;
    Index noise_features = 1990;
    std::uint64_t seed = 1;
};

struct MulticlassSimulation {
    Dataset train;
    Dataset test;
};

MulticlassSimulation simulate_multiclass_p2000(const SyntheticSpecB& spec, Rng& rng);

}  // namespace hbmlr
