#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "hbmlr/hmc.hpp"
#include "hbmlr/rng.hpp"
#include "hbmlr/types.hpp"

// HMC-within-Gibbs driver. Each iteration updates the active delta rows
// jointly with one HMC transformation against -log L - log P(delta | sigma^2),
// then redraws every sigma_j^2 from its family conditional (and log w when it
// is a hyperparameter). Linear predictors are cached and updated from the
// active columns only, which is what makes the restricted scheme cheap.

namespace hbmlr {

struct McmcSettings {
    int n1 = 1000;       // initial-phase iterations
    int l1 = 10;         // trajectory length in the initial phase
    int n2 = 10000;      // sampling-phase iterations
    int l2 = 50;         // trajectory length in the sampling phase
    double eps = 0.3;    // stepsize adjustment factor
    double zeta = 0.05;  // features with sigma_j <= zeta are frozen
    int thin = 1;
    std::uint64_t seed = 1;

    void validate() const;
};

enum class Phase { Initial, Sampling };

struct ChainState {
    Matrix delta;      // (p+1) x K, row 0 = intercepts
    Vector sigma_sq;   // length p
    double log_w = std::numeric_limits<double>::quiet_NaN();  // NaN iff w fixed
    Matrix cache;      // n x K linear predictors eta
    std::size_t iteration = 0;
    Phase phase = Phase::Initial;
};

struct GibbsDiag {
    bool accepted = false;
    bool divergent = false;
    double delta_h = 0.0;
    std::size_t active_rows = 0;
};

struct AcceptanceStats {
    std::size_t attempts = 0;
    std::size_t accepts = 0;
    std::size_t divergences = 0;
    std::size_t active_rows_total = 0;
    double rejection_rate() const {
        return attempts == 0 ? 0.0 : 1.0 - static_cast<double>(accepts) / attempts;
    }
    double mean_active_rows() const {
        return attempts == 0 ? 0.0 : static_cast<double>(active_rows_total) / attempts;
    }
};

struct Draw {
    std::size_t iteration = 0;
    bool accepted = false;
    double delta_h = 0.0;
    double log_w = std::numeric_limits<double>::quiet_NaN();
    Vector sigma_sq;
    Matrix delta;  // full (p+1) x K snapshot
};

struct SampleStore {
    McmcSettings settings;
    PriorSpec prior;
    std::uint64_t dataset_fingerprint = 0;
    Index n_cases = 0;
    Index n_features = 0;
    int class_count = 0;
    Vector train_means;  // standardization map of the fitted data (may be empty)
    Vector train_sds;
    AcceptanceStats initial_stats;
    AcceptanceStats sampling_stats;
    double max_cache_drift = 0.0;
    std::vector<Draw> draws;
};

// Thrown when a chain fails mid-run; carries the draws recorded so far.
class ChainFailure : public ChainError {
public:
    ChainFailure(const std::string& msg, std::size_t iteration, SampleStore partial)
        : ChainError(msg, iteration), partial(std::move(partial)) {}
    SampleStore partial;
};

struct ChainProgress {
    std::size_t iteration = 0;
    std::size_t total = 0;
    Phase phase = Phase::Initial;
    double log_posterior = 0.0;
    double acceptance_rate = 0.0;
    std::size_t active_rows = 0;
};

using ProgressFn = std::function<void(const ChainProgress&)>;

/// Deterministic start: feature rows from a diagonal-covariance Gaussian
/// discriminant (class-mean differences over the pooled within-class
/// variance), intercepts from class log-proportions, sigma_j^2 =
/// max(w, V(delta_j)/C). Requires a standardized dataset with every class
/// present.
ChainState initialize_chain(const Dataset& dataset, const PriorSpec& prior,
                            const McmcSettings& settings);

/// All-zero starting state with an empty cache; pair it with an n = 0 dataset
/// to run the chain against the prior alone.
ChainState prior_chain_state(Index p, int class_count, const PriorSpec& prior);

/// {0} plus every feature row with sigma_j > zeta; the intercept row is never
/// restricted.
IndexSet restricted_update_set(const Vector& sigma_sq, double zeta);

/// One Gibbs scan (HMC step on the active rows, then all sigma_j^2, then
/// log w when hyper). `active_override` bypasses the zeta restriction and is
/// the reference path for equivalence checks.
void gibbs_iteration(ChainState& state, const Dataset& dataset, const PriorSpec& prior,
                     const McmcSettings& settings, int trajectory_length, Rng& rng,
                     GibbsDiag* diag = nullptr, const IndexSet* active_override = nullptr);

/// Recompute the linear-predictor cache from delta; returns the drift
/// max|old - new| that the incremental updates had accumulated.
double refresh_cache(ChainState& state, const Dataset& dataset);

/// n1 iterations at trajectory length l1, then n2 at l2, recording every
/// thin-th sampling-phase draw. Seeds its own generator from settings.seed.
SampleStore run_chain(const Dataset& dataset, const PriorSpec& prior,
                      const McmcSettings& settings, const ProgressFn& progress = {});

/// Same, from an explicit starting state and generator.
SampleStore run_chain_from(ChainState state, const Dataset& dataset, const PriorSpec& prior,
                           const McmcSettings& settings, Rng& rng,
                           const ProgressFn& progress = {});

/// Joint log posterior (likelihood + delta prior + sigma^2 prior + hyper
/// prior on log w when present), used for progress reporting.
double log_posterior(const ChainState& state, const Dataset& dataset, const PriorSpec& prior);

}  // namespace hbmlr
