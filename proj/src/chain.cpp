#include "hbmlr/chain.hpp"

#include <cmath>

#include "hbmlr/model.hpp"
#include "hbmlr/sigma_samplers.hpp"

namespace hbmlr {

namespace {

constexpr std::size_t kCacheRefreshInterval = 1000;

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

Vector gather_rows(const Matrix& delta, const IndexSet& rows) {
    const Index k = delta.cols();
    Vector q(static_cast<Index>(rows.size()) * k);
    for (std::size_t a = 0; a < rows.size(); ++a)
        q.segment(static_cast<Index>(a) * k, k) = delta.row(rows[a]).transpose();
    return q;
}

void scatter_rows(Matrix& delta, const IndexSet& rows, const Vector& q) {
    const Index k = delta.cols();
    for (std::size_t a = 0; a < rows.size(); ++a)
        delta.row(rows[a]) = q.segment(static_cast<Index>(a) * k, k).transpose();
}

}  // namespace

void McmcSettings::validate() const {
    if (n1 < 0) throw DomainError("settings: n1 must be >= 0");
    if (n2 < 1) throw DomainError("settings: n2 must be >= 1");
    if (l1 < 1 || l2 < 1) throw DomainError("settings: trajectory lengths must be >= 1");
    if (!(eps > 0.0)) throw DomainError("settings: eps must be > 0");
    if (!(zeta >= 0.0)) throw DomainError("settings: zeta must be >= 0");
    if (thin < 1) throw DomainError("settings: thin must be >= 1");
}

ChainState initialize_chain(const Dataset& dataset, const PriorSpec& prior,
                            const McmcSettings& settings) {
    (void)settings;
    dataset.validate();
    prior.validate();
    if (!dataset.standardized)
        throw DomainError("initialize_chain: dataset must be standardized");

    const Index n = dataset.n();
    const Index p = dataset.p();
    const int c = dataset.class_count;
    const Index k = contrast_count(c);

    Vector counts = Vector::Zero(c);
    for (Index i = 0; i < n; ++i) counts[dataset.labels[i] - 1] += 1.0;
    for (int cls = 0; cls < c; ++cls)
        if (counts[cls] == 0.0)
            throw Error("initialize_chain: class " + std::to_string(cls + 1) +
                        " absent from training labels");

    Matrix class_means = Matrix::Zero(c, p);
    for (Index i = 0; i < n; ++i)
        class_means.row(dataset.labels[i] - 1) += dataset.features.row(i);
    for (int cls = 0; cls < c; ++cls) class_means.row(cls) /= counts[cls];

    // pooled within-class variance per feature (population convention)
    Vector within_var = Vector::Zero(p);
    for (Index i = 0; i < n; ++i)
        within_var +=
            (dataset.features.row(i) - class_means.row(dataset.labels[i] - 1))
                .array()
                .square()
                .matrix()
                .transpose();
    within_var /= static_cast<double>(n);

    ChainState state;
    state.delta = Matrix::Zero(p + 1, k);
    for (Index kk = 0; kk < k; ++kk)
        state.delta(0, kk) = std::log(counts[kk + 1] / counts[0]);
    for (Index j = 0; j < p; ++j) {
        if (within_var[j] < 1e-12) continue;  // constant column, no discriminant direction
        for (Index kk = 0; kk < k; ++kk)
            state.delta(j + 1, kk) =
                (class_means(kk + 1, j) - class_means(0, j)) / within_var[j];
    }

    const double w = prior.w();
    state.sigma_sq.resize(p);
    for (Index j = 0; j < p; ++j)
        state.sigma_sq[j] = std::max(w, std::max(0.0, v_value(state.delta.row(j + 1), c)) / c);

    state.log_w = prior.w_mode == WMode::Hyper ? 0.0
                                               : std::numeric_limits<double>::quiet_NaN();
    state.cache = linear_predictors(dataset.features, state.delta);
    state.iteration = 0;
    state.phase = Phase::Initial;
    return state;
}

ChainState prior_chain_state(Index p, int class_count, const PriorSpec& prior) {
    prior.validate();
    ChainState state;
    const Index k = contrast_count(class_count);
    state.delta = Matrix::Zero(p + 1, k);
    state.sigma_sq = Vector::Constant(p, prior.w());
    state.log_w = prior.w_mode == WMode::Hyper ? 0.0
                                               : std::numeric_limits<double>::quiet_NaN();
    state.cache = Matrix::Zero(0, k);
    return state;
}

IndexSet restricted_update_set(const Vector& sigma_sq, double zeta) {
    if (!(zeta >= 0.0)) throw DomainError("restricted_update_set: zeta must be >= 0");
    IndexSet active;
    active.reserve(static_cast<std::size_t>(sigma_sq.size()) + 1);
    active.push_back(0);
    for (Index j = 0; j < sigma_sq.size(); ++j)
        if (std::sqrt(sigma_sq[j]) > zeta) active.push_back(j + 1);
    return active;
}

void gibbs_iteration(ChainState& state, const Dataset& dataset, const PriorSpec& prior,
                     const McmcSettings& settings, int trajectory_length, Rng& rng,
                     GibbsDiag* diag, const IndexSet* active_override) {
    const Index n = dataset.n();
    const Index p = dataset.p();
    const int c = dataset.class_count;
    const Index k = contrast_count(c);
    check_coefficients(state.delta, p, c);

    const double w_cur = prior.w_mode == WMode::Hyper ? std::exp(state.log_w) : prior.w();

    // ---- Step 1: joint HMC update of the active delta rows ----
    const IndexSet active =
        active_override ? *active_override : restricted_update_set(state.sigma_sq, settings.zeta);
    const Index m = static_cast<Index>(active.size());

    Matrix x_active(n, m - 1);
    for (Index a = 1; a < m; ++a) x_active.col(a - 1) = dataset.features.col(active[a] - 1);

    Vector sigma_eff(m);
    for (Index a = 0; a < m; ++a)
        sigma_eff[a] = active[a] == 0 ? prior.sigma0_sq : state.sigma_sq[active[a] - 1];

    const Vector q0 = gather_rows(state.delta, active);

    // eta(q) = frozen offset + intercepts + X_active * q_features
    auto eta_of = [&](const Vector& q, const Matrix& offset) {
        Matrix eta = offset;
        eta.rowwise() += Eigen::Map<const Eigen::RowVectorXd>(q.data(), k);
        if (m > 1) {
            RowMajorMap q_feat(q.data() + k, m - 1, k);
            eta.noalias() += x_active * q_feat;
        }
        return eta;
    };
    const Matrix offset = state.cache - eta_of(q0, Matrix::Zero(n, k));

    auto potential = [&](const Vector& q) {
        double u = -log_likelihood_from_eta(eta_of(q, offset), dataset.labels);
        for (Index a = 0; a < m; ++a)
            u -= log_prior_delta_row(q.segment(a * k, k).transpose(), sigma_eff[a], c);
        return u;
    };
    auto gradient = [&](const Vector& q) {
        const Matrix resid = likelihood_residual(eta_of(q, offset), dataset.labels);
        Vector g(m * k);
        g.head(k) = resid.colwise().sum().transpose();
        if (m > 1) {
            const Matrix g_feat = x_active.transpose() * resid;
            for (Index a = 1; a < m; ++a) g.segment(a * k, k) = g_feat.row(a - 1).transpose();
        }
        for (Index a = 0; a < m; ++a)
            g.segment(a * k, k) +=
                grad_neg_log_prior_row(q.segment(a * k, k).transpose(), sigma_eff[a], c);
        return g;
    };

    const Vector row_curv = curvature_estimates(dataset, state.sigma_sq, prior.sigma0_sq, active);
    Vector curv(m * k);
    for (Index a = 0; a < m; ++a) curv.segment(a * k, k).setConstant(row_curv[a]);

    HmcConfig config{trajectory_length, settings.eps};
    HmcOutcome outcome;
    try {
        outcome = hmc_update(q0, gradient, potential, config, curv, rng);
    } catch (const std::exception& e) {
        throw ChainError(e.what(), state.iteration + 1);
    }

    if (outcome.accepted) {
        scatter_rows(state.delta, active, outcome.new_position);
        state.cache = eta_of(outcome.new_position, offset);
    }

    // ---- Step 2: redraw every sigma_j^2 from its conditional given V ----
    try {
        for (Index j = 0; j < p; ++j) {
            const double v_raw = v_value(state.delta.row(j + 1), c);
            if (!std::isfinite(v_raw))
                throw DomainError("non-finite V(delta) at feature " + std::to_string(j + 1));
            const double v = std::max(0.0, v_raw);
            double draw;
            switch (prior.family) {
                case PriorFamily::T:
                    draw = sample_sigma_sq_ig(prior.alpha, w_cur, static_cast<int>(k), v, rng);
                    break;
                case PriorFamily::GHS:
                    // At V = 0 exactly the conditional is non-normalizable; the
                    // state is measure-zero, so a prior draw keeps the chain
                    // moving without affecting stationarity.
                    draw = v == 0.0
                               ? sample_sigma_sq_prior(PriorFamily::GHS, prior.alpha, w_cur, rng)
                               : sample_sigma_sq_ghs(prior.alpha, w_cur, static_cast<int>(k), v,
                                                     rng);
                    break;
                case PriorFamily::NEG:
                    draw = (v == 0.0 && k >= 2)
                               ? sample_sigma_sq_prior(PriorFamily::NEG, prior.alpha, w_cur, rng)
                               : sample_sigma_sq_neg(prior.alpha, w_cur, static_cast<int>(k), v,
                                                     rng);
                    break;
                default:
                    throw DomainError("unknown prior family");
            }
            state.sigma_sq[j] = draw;
        }

        if (prior.w_mode == WMode::Hyper)
            state.log_w = sample_log_w(state.sigma_sq, prior.alpha, prior.hyper_w_variance, rng);
    } catch (const ChainError&) {
        throw;
    } catch (const std::exception& e) {
        throw ChainError(e.what(), state.iteration + 1);
    }

    state.iteration += 1;
    if (diag) {
        diag->accepted = outcome.accepted;
        diag->divergent = outcome.divergent;
        diag->delta_h = outcome.delta_h;
        diag->active_rows = active.size();
    }
}

double refresh_cache(ChainState& state, const Dataset& dataset) {
    Matrix fresh = linear_predictors(dataset.features, state.delta);
    const double drift =
        state.cache.size() == 0 ? 0.0 : (state.cache - fresh).cwiseAbs().maxCoeff();
    state.cache = std::move(fresh);
    return drift;
}

double log_posterior(const ChainState& state, const Dataset& dataset, const PriorSpec& prior) {
    const int c = dataset.class_count;
    double lp = log_likelihood_from_eta(state.cache, dataset.labels);
    lp += log_prior_delta_row(state.delta.row(0), prior.sigma0_sq, c);
    for (Index j = 0; j < dataset.p(); ++j)
        lp += log_prior_delta_row(state.delta.row(j + 1), state.sigma_sq[j], c);

    PriorSpec cur = prior;
    if (prior.w_mode == WMode::Hyper) cur.log_w = state.log_w;
    for (Index j = 0; j < dataset.p(); ++j)
        lp += log_sigma_sq_prior(state.sigma_sq[j], cur);
    if (prior.w_mode == WMode::Hyper)
        lp += -0.5 * std::log(2.0 * M_PI * prior.hyper_w_variance) -
              state.log_w * state.log_w / (2.0 * prior.hyper_w_variance);
    return lp;
}

SampleStore run_chain(const Dataset& dataset, const PriorSpec& prior,
                      const McmcSettings& settings, const ProgressFn& progress) {
    settings.validate();
    Rng rng(settings.seed);
    return run_chain_from(initialize_chain(dataset, prior, settings), dataset, prior, settings,
                          rng, progress);
}

SampleStore run_chain_from(ChainState state, const Dataset& dataset, const PriorSpec& prior,
                           const McmcSettings& settings, Rng& rng, const ProgressFn& progress) {
    settings.validate();
    prior.validate();

    SampleStore store;
    store.settings = settings;
    store.prior = prior;
    store.dataset_fingerprint = dataset.fingerprint();
    store.n_cases = dataset.n();
    store.n_features = dataset.p();
    store.class_count = dataset.class_count;
    store.train_means = dataset.train_means;
    store.train_sds = dataset.train_sds;
    store.draws.reserve(static_cast<std::size_t>(settings.n2 / settings.thin));

    const std::size_t total = static_cast<std::size_t>(settings.n1) + settings.n2;
    const std::size_t stride = std::max<std::size_t>(1, total / 100);

    try {
        for (std::size_t it = 1; it <= total; ++it) {
            const bool sampling = it > static_cast<std::size_t>(settings.n1);
            state.phase = sampling ? Phase::Sampling : Phase::Initial;
            AcceptanceStats& stats = sampling ? store.sampling_stats : store.initial_stats;

            GibbsDiag diag;
            gibbs_iteration(state, dataset, prior, settings,
                            sampling ? settings.l2 : settings.l1, rng, &diag);
            stats.attempts += 1;
            stats.accepts += diag.accepted ? 1 : 0;
            stats.divergences += diag.divergent ? 1 : 0;
            stats.active_rows_total += diag.active_rows;

            if (sampling) {
                const std::size_t s_it = it - settings.n1;
                if (s_it % settings.thin == 0)
                    store.draws.push_back({state.iteration, diag.accepted, diag.delta_h,
                                           state.log_w, state.sigma_sq, state.delta});
            }
            if (it % kCacheRefreshInterval == 0)
                store.max_cache_drift =
                    std::max(store.max_cache_drift, refresh_cache(state, dataset));

            if (progress && (it % stride == 0 || it == total)) {
                ChainProgress report;
                report.iteration = it;
                report.total = total;
                report.phase = state.phase;
                report.log_posterior = log_posterior(state, dataset, prior);
                report.acceptance_rate =
                    stats.attempts == 0 ? 0.0
                                        : static_cast<double>(stats.accepts) / stats.attempts;
                report.active_rows = diag.active_rows;
                progress(report);
            }
        }
    } catch (const std::exception& e) {
        throw ChainFailure(e.what(), state.iteration, std::move(store));
    }
    return store;
}

}  // namespace hbmlr
