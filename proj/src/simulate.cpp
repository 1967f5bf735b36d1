#include "hbmlr/simulate.hpp"

#include <cmath>

namespace hbmlr {

namespace {

void fill_binary_cases(Dataset& dataset, Index n_cases, const SyntheticSpecA& spec, Rng& rng) {
    const Index p = SyntheticSpecA::p;
    dataset.features.resize(n_cases, p);
    dataset.labels.resize(n_cases);
    dataset.class_count = 2;
    Vector z(p), e(p);
    for (Index i = 0; i < n_cases; ++i) {
        const int label = draw_uniform(rng) < 0.5 ? 1 : 2;
        dataset.labels[i] = label;
        for (Index j = 0; j < p; ++j) z[j] = draw_normal(rng);
        for (Index j = 0; j < p; ++j) e[j] = draw_normal(rng);
        for (Index j = 0; j < p; ++j) dataset.features(i, j) = z[j] + e[j];
        dataset.features(i, 1) += spec.corr_coeff * z[0];  // A's a_21 entry
        if (label == 2) dataset.features(i, 0) += spec.mean_shift;
    }
}

void fill_multiclass_cases(Dataset& dataset, Index n_cases, const SyntheticSpecB& spec,
                           Rng& rng) {
    const Index p = SyntheticSpecB::structured_features + spec.noise_features;
    dataset.features.resize(n_cases, p);
    dataset.labels.resize(n_cases);
    dataset.class_count = SyntheticSpecB::class_count;
    for (Index i = 0; i < n_cases; ++i) {
        const int label = std::min(2, static_cast<int>(3.0 * draw_uniform(rng))) + 1;
        dataset.labels[i] = label;
        const double z1 = draw_normal(rng);
        const double z2 = draw_normal(rng);
        const double z3 = draw_normal(rng);
        dataset.features(i, 0) = (label == 2 ? 2.0 : 0.0) + z1 + 0.5 * draw_normal(rng);
        dataset.features(i, 1) = 2.0 * z1 + z2 + 0.5 * draw_normal(rng);
        for (Index j = 2; j < 10; ++j)
            dataset.features(i, j) = (label == 3 ? 2.0 : 0.0) + z3 + 0.5 * draw_normal(rng);
        for (Index j = 10; j < p; ++j) dataset.features(i, j) = draw_normal(rng);
    }
}

}  // namespace

BinarySimulation simulate_binary_p200(const SyntheticSpecA& spec, Rng& rng) {
    BinarySimulation sim;
    fill_binary_cases(sim.train, spec.n_train, spec, rng);
    fill_binary_cases(sim.test, spec.n_test, spec, rng);
    sim.true_delta.resize(3);
    sim.true_delta << 0.0, 2.60, -1.22;
    sim.train.validate();
    sim.test.validate();
    return sim;
}

MulticlassSimulation simulate_multiclass_p2000(const SyntheticSpecB& spec, Rng& rng) {
    MulticlassSimulation sim;
    fill_multiclass_cases(sim.train, spec.n_train, spec, rng);
    fill_multiclass_cases(sim.test, spec.n_test, spec, rng);
    sim.train.validate();
    sim.test.validate();
    return sim;
}

}  // namespace hbmlr
