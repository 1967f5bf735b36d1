// Command-line front end: simulate / fit / rank / predict / cv / path /
// prior-sample. Every artifact-producing run writes a manifest with the full
// configuration and seed, and identical configurations reproduce identical
// output bytes.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "hbmlr/analysis.hpp"
#include "hbmlr/chain.hpp"
#include "hbmlr/dataset_io.hpp"
#include "hbmlr/format.hpp"
#include "hbmlr/model.hpp"
#include "hbmlr/simulate.hpp"
#include "hbmlr/store_io.hpp"

namespace fs = std::filesystem;
using namespace hbmlr;

namespace {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

std::mutex stderr_mutex;

void say(const std::string& line) {
    std::lock_guard<std::mutex> lock(stderr_mutex);
    std::fputs((line + "\n").c_str(), stderr);
}

double elapsed_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct PriorOpts {
    std::string family = "t";
    double alpha = 1.0;
    double log_w = -10.0;
    double hyper_w_var = 0.0;
    double sigma0_sq = 2000.0;
    CLI::Option* hyper_opt = nullptr;

    bool hyper() const { return hyper_opt != nullptr && hyper_opt->count() > 0; }

    PriorSpec build() const {
        PriorSpec spec;
        spec.family = family_from_name(family);
        spec.alpha = alpha;
        spec.log_w = log_w;
        spec.sigma0_sq = sigma0_sq;
        if (hyper()) {
            spec.w_mode = WMode::Hyper;
            spec.hyper_w_variance = hyper_w_var;
            spec.log_w = 0.0;  // the chain samples log w; start at the prior mean
        }
        spec.validate();
        return spec;
    }

    KeyValues manifest() const {
        return {{"prior", family},
                {"alpha", format_g17(alpha)},
                {"log_w", hyper() ? "hyper" : format_g17(log_w)},
                {"hyper_w_var", hyper() ? format_g17(hyper_w_var) : "unset"},
                {"sigma0_sq", format_g17(sigma0_sq)}};
    }
};

void add_prior_flags(CLI::App* cmd, PriorOpts& opts) {
    cmd->add_option("--prior", opts.family, "prior family: t | ghs | neg")
        ->check(CLI::IsMember({"t", "ghs", "neg"}))
        ->capture_default_str();
    cmd->add_option("--alpha", opts.alpha, "degrees of freedom of the prior (alpha)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* log_w = cmd->add_option("--log-w", opts.log_w,
                                  "log square scale of the prior (log w); scale = sqrt(w)")
                      ->capture_default_str();
    auto* hyper = cmd->add_option(
        "--hyper-w-var", opts.hyper_w_var,
        "treat log w as a hyperparameter with a N(0, v) prior of this variance");
    hyper->excludes(log_w);
    log_w->excludes(hyper);
    opts.hyper_opt = hyper;
    cmd->add_option("--sigma0-sq", opts.sigma0_sq,
                    "prior variance of the intercepts (sigma_0^2)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

struct McmcOpts {
    McmcSettings settings;
    CLI::Option* thin_opt = nullptr;

    McmcSettings build() const {
        McmcSettings s = settings;
        if (thin_opt == nullptr || thin_opt->count() == 0) s.thin = std::max(1, s.n2 / 10000);
        s.validate();
        return s;
    }

    KeyValues manifest() const {
        const McmcSettings s = build();
        return {{"n1", std::to_string(s.n1)},     {"l1", std::to_string(s.l1)},
                {"n2", std::to_string(s.n2)},     {"l2", std::to_string(s.l2)},
                {"eps", format_g17(s.eps)},       {"zeta", format_g17(s.zeta)},
                {"thin", std::to_string(s.thin)}, {"seed", std::to_string(s.seed)}};
    }
};

void add_mcmc_flags(CLI::App* cmd, McmcOpts& opts) {
    McmcSettings& s = opts.settings;
    cmd->add_option("--n1", s.n1, "initial-phase Gibbs iterations (n1)")
        ->capture_default_str();
    cmd->add_option("--l1", s.l1, "leapfrog trajectory length in the initial phase (l1)")
        ->capture_default_str();
    cmd->add_option("--n2", s.n2, "sampling-phase Gibbs iterations (n2)")
        ->capture_default_str();
    cmd->add_option("--l2", s.l2, "leapfrog trajectory length in the sampling phase (l2)")
        ->capture_default_str();
    cmd->add_option("--eps", s.eps, "HMC stepsize adjustment factor (epsilon)")
        ->capture_default_str();
    cmd->add_option("--zeta", s.zeta,
                    "restriction threshold: features with sigma_j <= zeta stay frozen (zeta)")
        ->capture_default_str();
    opts.thin_opt = cmd->add_option(
        "--thin", s.thin, "store every thin-th sampling draw (default n2/10000, min 1)");
    cmd->add_option("--seed", s.seed, "random seed")->capture_default_str();
}

void write_manifest(const fs::path& dir, const std::string& command, const KeyValues& entries) {
    KeyValues all{{"command", command}};
    all.insert(all.end(), entries.begin(), entries.end());
    write_metrics(all, (dir / "manifest.txt").string());
}

ProgressFn make_progress(const std::string& tag, bool quiet) {
    if (quiet) return {};
    return [tag](const ChainProgress& p) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "[%s] iteration %zu/%zu (%s) log-posterior %.4f accept %.3f active %zu",
                      tag.c_str(), p.iteration, p.total,
                      p.phase == Phase::Initial ? "initial" : "sampling", p.log_posterior,
                      p.acceptance_rate, p.active_rows);
        say(buf);
    };
}

void write_predictions_csv(const fs::path& file, const PredictionReport& report,
                           const IntVector& labels) {
    std::ofstream out(file);
    if (!out) throw Error("cannot write '" + file.string() + "'");
    const Index c = report.probs.cols();
    out << "case,true_label,predicted_label,log_prob_true";
    for (Index k = 1; k <= c; ++k) out << ",prob_" << k;
    out << '\n';
    for (Index i = 0; i < report.probs.rows(); ++i) {
        Index argmax = 0;
        for (Index k = 1; k < c; ++k)
            if (report.probs(i, k) > report.probs(i, argmax)) argmax = k;
        out << (i + 1) << ',' << labels[i] << ',' << (argmax + 1) << ','
            << format_g17(report.per_case_log_prob[i]);
        for (Index k = 0; k < c; ++k) out << ',' << format_g17(report.probs(i, k));
        out << '\n';
    }
}

// ---- subcommand drivers ----

int run_simulate(const std::string& design, Index n_train, Index n_test, Index noise,
                 std::uint64_t seed, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    Rng rng(seed);
    KeyValues manifest{{"design", design},
                       {"n_train", std::to_string(n_train)},
                       {"n_test", std::to_string(n_test)},
                       {"seed", std::to_string(seed)}};
    if (design == "binary-p200") {
        SyntheticSpecA spec;
        spec.n_train = n_train;
        spec.n_test = n_test;
        spec.seed = seed;
        const BinarySimulation sim = simulate_binary_p200(spec, rng);
        save_csv(sim.train, (out_dir / "train.csv").string());
        save_csv(sim.test, (out_dir / "test.csv").string());
        std::ofstream truth(out_dir / "true_delta.txt");
        for (Index i = 0; i < sim.true_delta.size(); ++i)
            truth << format_g17(sim.true_delta[i]) << '\n';
    } else {
        SyntheticSpecB spec;
        spec.n_train = n_train;
        spec.n_test = n_test;
        spec.noise_features = noise;
        spec.seed = seed;
        const MulticlassSimulation sim = simulate_multiclass_p2000(spec, rng);
        save_csv(sim.train, (out_dir / "train.csv").string());
        save_csv(sim.test, (out_dir / "test.csv").string());
        manifest.push_back({"noise_features", std::to_string(noise)});
    }
    write_manifest(out_dir, "simulate", manifest);
    say("[simulate] wrote " + (out_dir / "train.csv").string() + " and test.csv");
    return 0;
}

int run_fit(const std::string& train_path, const std::string& test_path,
            const PriorOpts& prior_opts, const McmcOpts& mcmc_opts, const fs::path& out_dir,
            bool quiet) {
    const auto start = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);
    const PriorSpec prior = prior_opts.build();
    const McmcSettings settings = mcmc_opts.build();

    Dataset raw_train = load_csv(train_path, false);
    std::vector<Dataset> extras;
    if (!test_path.empty()) {
        Dataset raw_test = load_csv(test_path, false);
        if (raw_test.class_count > raw_train.class_count)
            throw Error("test set has labels beyond the training classes");
        raw_test.class_count = raw_train.class_count;
        extras.push_back(std::move(raw_test));
    }
    auto [train, others] = standardize(std::move(raw_train), std::move(extras));

    const SampleStore store = run_chain(train, prior, settings, make_progress("fit", quiet));
    save_store(store, (out_dir / "samples.txt").string());

    const PosteriorSummary summary = summarize(store, train.class_count);
    write_summary_csv(summary, (out_dir / "summary.csv").string());

    KeyValues metrics;
    const PredictionReport train_report =
        prediction_report(predict(store, train.features, train.class_count), train.labels);
    if (!others.empty()) {
        const PredictionReport test_report = prediction_report(
            predict(store, others[0].features, train.class_count), others[0].labels);
        metrics.push_back({"amlp", format_g17(test_report.amlp)});
        metrics.push_back({"error_rate", format_g17(test_report.error_rate)});
    } else {
        metrics.push_back({"amlp", format_g17(train_report.amlp)});
        metrics.push_back({"error_rate", format_g17(train_report.error_rate)});
    }
    metrics.push_back({"train_amlp", format_g17(train_report.amlp)});
    metrics.push_back({"train_error_rate", format_g17(train_report.error_rate)});
    metrics.push_back(
        {"rejection_rate", format_g17(store.sampling_stats.rejection_rate())});
    metrics.push_back(
        {"rejection_rate_initial", format_g17(store.initial_stats.rejection_rate())});
    metrics.push_back({"divergences", std::to_string(store.sampling_stats.divergences +
                                                     store.initial_stats.divergences)});
    metrics.push_back({"draws", std::to_string(store.draws.size())});
    metrics.push_back({"max_cache_drift", format_g17(store.max_cache_drift)});
    metrics.push_back({"selected_rel_0.1",
                       std::to_string(select_features(summary, 0.1).size())});
    metrics.push_back({"selected_rel_0.01",
                       std::to_string(select_features(summary, 0.01).size())});
    metrics.push_back({"runtime_seconds", format_g17(elapsed_since(start))});
    write_metrics(metrics, (out_dir / "metrics.txt").string());

    KeyValues manifest{{"train", train_path}, {"test", test_path.empty() ? "unset" : test_path}};
    const KeyValues pm = prior_opts.manifest();
    const KeyValues mm = mcmc_opts.manifest();
    manifest.insert(manifest.end(), pm.begin(), pm.end());
    manifest.insert(manifest.end(), mm.begin(), mm.end());
    write_manifest(out_dir, "fit", manifest);
    return 0;
}

int run_rank(const std::string& store_path, const std::string& mode, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    const SampleStore store = load_store(store_path);
    const SummaryMode summary_mode =
        mode == "median" ? SummaryMode::Median : SummaryMode::Mean;
    const PosteriorSummary summary = summarize(store, store.class_count, summary_mode);
    write_summary_csv(summary, (out_dir / "summary.csv").string());

    KeyValues metrics;
    for (double threshold : {0.1, 0.01}) {
        const auto selected = select_features(summary, threshold);
        std::string joined;
        for (Index j : selected) joined += (joined.empty() ? "" : " ") + std::to_string(j);
        const std::string suffix = threshold == 0.1 ? "0.1" : "0.01";
        metrics.push_back({"selected_rel_" + suffix, std::to_string(selected.size())});
        metrics.push_back({"features_rel_" + suffix, joined});
    }
    write_metrics(metrics, (out_dir / "metrics.txt").string());
    write_manifest(out_dir, "rank",
                   {{"store", store_path}, {"summary_mode", mode}});
    return 0;
}

int run_predict(const std::string& store_path, const std::string& test_path,
                const fs::path& out_dir) {
    fs::create_directories(out_dir);
    const SampleStore store = load_store(store_path);
    if (store.train_means.size() != store.n_features)
        throw Error("store lacks the training standardization map");
    Dataset raw_test = load_csv(test_path, false);
    if (raw_test.p() != store.n_features)
        throw Error("test set has " + std::to_string(raw_test.p()) + " features, store has " +
                    std::to_string(store.n_features));
    const Matrix x_test =
        standardize_features(raw_test.features, store.train_means, store.train_sds);
    const PredictionReport report =
        prediction_report(predict(store, x_test, store.class_count), raw_test.labels);

    write_predictions_csv(out_dir / "predictions.csv", report, raw_test.labels);
    write_metrics({{"amlp", format_g17(report.amlp)},
                   {"error_rate", format_g17(report.error_rate)},
                   {"n_cases", std::to_string(raw_test.n())}},
                  (out_dir / "metrics.txt").string());
    write_manifest(out_dir, "predict", {{"store", store_path}, {"test", test_path}});
    return 0;
}

int run_cv(const std::string& train_path, const PriorOpts& prior_opts, const McmcOpts& mcmc_opts,
           int jobs, const fs::path& out_dir, bool quiet) {
    const auto start = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);
    const Dataset raw = load_csv(train_path, false);
    const PriorSpec prior = prior_opts.build();
    const McmcSettings settings = mcmc_opts.build();
    if (!quiet)
        say("[cv] " + std::to_string(raw.n()) + " leave-one-out folds on " +
            std::to_string(jobs) + " worker(s)");
    const CvResult cv = loocv(raw, prior, settings, jobs);

    std::ofstream folds(out_dir / "folds.csv");
    folds << "fold,status,true_label,predicted_label,log_prob_true,error\n";
    for (const FoldReport& fr : cv.folds) {
        folds << (fr.fold + 1) << ',' << (fr.ok ? "ok" : "failed") << ',' << fr.true_label
              << ',' << fr.predicted_label << ',' << format_g17(fr.log_prob_true) << ",\""
              << fr.error << "\"\n";
    }
    folds.close();

    write_metrics({{"amlp", format_g17(cv.amlp)},
                   {"error_rate", format_g17(cv.error_rate)},
                   {"n_folds", std::to_string(cv.n_folds)},
                   {"n_failed", std::to_string(cv.n_failed)},
                   {"runtime_seconds", format_g17(elapsed_since(start))}},
                  (out_dir / "metrics.txt").string());

    KeyValues manifest{{"train", train_path}, {"jobs", std::to_string(jobs)}};
    const KeyValues pm = prior_opts.manifest();
    const KeyValues mm = mcmc_opts.manifest();
    manifest.insert(manifest.end(), pm.begin(), pm.end());
    manifest.insert(manifest.end(), mm.begin(), mm.end());
    write_manifest(out_dir, "cv", manifest);
    return 0;
}

int run_path(const std::string& train_path, const std::string& test_path,
             const PriorOpts& prior_opts, const McmcOpts& mcmc_opts, double grid_lo,
             double grid_hi, int grid_n, int jobs, const fs::path& out_dir, bool quiet) {
    fs::create_directories(out_dir);
    if (grid_n < 1) throw Error("--grid-n must be >= 1");
    std::vector<double> grid(grid_n);
    for (int i = 0; i < grid_n; ++i)
        grid[i] = grid_n == 1 ? grid_lo
                              : grid_lo + (grid_hi - grid_lo) * i / (grid_n - 1);

    const Dataset raw_train = load_csv(train_path, false);
    Dataset raw_test;
    const bool has_test = !test_path.empty();
    if (has_test) raw_test = load_csv(test_path, false);

    if (!quiet)
        say("[path] " + std::to_string(grid_n) + " grid points on " + std::to_string(jobs) +
            " worker(s)");
    const auto path = solution_path(raw_train, has_test ? &raw_test : nullptr,
                                    prior_opts.build(), mcmc_opts.build(), grid, jobs);
    write_path_csv(path, raw_train.p(), raw_train.class_count - 1,
                   (out_dir / "path.csv").string());

    KeyValues manifest{{"train", train_path},
                       {"test", has_test ? test_path : "unset"},
                       {"grid_lo", format_g17(grid_lo)},
                       {"grid_hi", format_g17(grid_hi)},
                       {"grid_n", std::to_string(grid_n)},
                       {"jobs", std::to_string(jobs)}};
    const KeyValues pm = prior_opts.manifest();
    const KeyValues mm = mcmc_opts.manifest();
    manifest.insert(manifest.end(), pm.begin(), pm.end());
    manifest.insert(manifest.end(), mm.begin(), mm.end());
    write_manifest(out_dir, "path", manifest);

    int failed = 0;
    for (const PathPoint& point : path) failed += point.ok ? 0 : 1;
    if (failed > 0) say("[path] " + std::to_string(failed) + " grid point(s) failed");
    return 0;
}

int run_prior_sample(const std::string& family, double alpha, double log_w, Index count,
                     std::uint64_t seed, const std::string& out_file) {
    Rng rng(seed);
    // Table-style generators take the scale gamma = sqrt(w)
    const Vector draws = sample_prior_beta(smn_from_name(family), alpha, log_w / 2, count, rng);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_file.empty()) {
        file.open(out_file);
        if (!file) throw Error("cannot write '" + out_file + "'");
        out = &file;
    }
    *out << "# prior-sample prior = " << family << " alpha = " << format_g17(alpha)
         << " log_w = " << format_g17(log_w) << " count = " << count << " seed = " << seed
         << '\n';
    for (Index i = 0; i < count; ++i) *out << format_g17(draws[i]) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian multinomial logistic regression with heavy-tailed scale-mixture "
                 "priors: HMC-within-Gibbs sampling, SDB feature ranking, prediction and "
                 "cross-validation"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("--quiet", quiet, "suppress progress output");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "generate a synthetic train/test pair");
    std::string design = "binary-p200";
    Index n_train = 100, n_test = 1000, noise = 1990;
    std::uint64_t sim_seed = 1;
    std::string sim_out;
    simulate->add_option("--design", design, "binary-p200 | multiclass-p2000")
        ->check(CLI::IsMember({"binary-p200", "multiclass-p2000"}))
        ->capture_default_str();
    simulate->add_option("--n-train", n_train, "training cases")->capture_default_str();
    simulate->add_option("--n-test", n_test, "test cases")->capture_default_str();
    simulate->add_option("--noise-features", noise,
                         "pure-noise features (multiclass design only)")
        ->capture_default_str();
    simulate->add_option("--seed", sim_seed, "random seed")->capture_default_str();
    simulate->add_option("--out", sim_out, "output directory")->required();

    // fit
    auto* fit = app.add_subcommand("fit", "run one chain and write samples + summary");
    std::string fit_train, fit_test, fit_out;
    PriorOpts fit_prior;
    McmcOpts fit_mcmc;
    fit->add_option("--train", fit_train, "training CSV")->required()->check(CLI::ExistingFile);
    fit->add_option("--test", fit_test, "optional test CSV for metrics")
        ->check(CLI::ExistingFile);
    fit->add_option("--out", fit_out, "output directory")->required();
    add_prior_flags(fit, fit_prior);
    add_mcmc_flags(fit, fit_mcmc);

    // rank
    auto* rank = app.add_subcommand("rank", "re-summarize an existing sample store");
    std::string rank_store, rank_out, rank_mode = "mean";
    rank->add_option("--store", rank_store, "sample store file")
        ->required()
        ->check(CLI::ExistingFile);
    rank->add_option("--out", rank_out, "output directory")->required();
    rank->add_option("--summary-mode", rank_mode, "mean | median")
        ->check(CLI::IsMember({"mean", "median"}))
        ->capture_default_str();

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "score a test CSV against a store");
    std::string pred_store, pred_test, pred_out;
    predict_cmd->add_option("--store", pred_store, "sample store file")
        ->required()
        ->check(CLI::ExistingFile);
    predict_cmd->add_option("--test", pred_test, "test CSV")
        ->required()
        ->check(CLI::ExistingFile);
    predict_cmd->add_option("--out", pred_out, "output directory")->required();

    // cv
    auto* cv = app.add_subcommand("cv", "leave-one-out cross-validation");
    std::string cv_train, cv_out;
    int cv_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    PriorOpts cv_prior;
    McmcOpts cv_mcmc;
    cv->add_option("--train", cv_train, "training CSV")->required()->check(CLI::ExistingFile);
    cv->add_option("--out", cv_out, "output directory")->required();
    cv->add_option("--jobs", cv_jobs, "concurrent folds")->capture_default_str();
    add_prior_flags(cv, cv_prior);
    add_mcmc_flags(cv, cv_mcmc);

    // path
    auto* path = app.add_subcommand("path", "solution path over a log w grid");
    std::string path_train, path_test, path_out;
    double grid_lo = -24.0, grid_hi = -8.0;
    int grid_n = 100;
    int path_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    PriorOpts path_prior;
    McmcOpts path_mcmc;
    path->add_option("--train", path_train, "training CSV")
        ->required()
        ->check(CLI::ExistingFile);
    path->add_option("--test", path_test, "optional test CSV")->check(CLI::ExistingFile);
    path->add_option("--out", path_out, "output directory")->required();
    path->add_option("--grid-lo", grid_lo, "smallest log w")->capture_default_str();
    path->add_option("--grid-hi", grid_hi, "largest log w")->capture_default_str();
    path->add_option("--grid-n", grid_n, "grid size")->capture_default_str();
    path->add_option("--jobs", path_jobs, "concurrent grid points")->capture_default_str();
    add_prior_flags(path, path_prior);
    add_mcmc_flags(path, path_mcmc);

    // prior-sample
    auto* prior_sample = app.add_subcommand("prior-sample",
                                            "draw coefficients from a scale-mixture prior");
    std::string ps_family = "t", ps_out;
    double ps_alpha = 1.0, ps_log_w = -10.0;
    Index ps_count = 4000;
    std::uint64_t ps_seed = 1;
    prior_sample->add_option("--prior", ps_family, "t | ghs | neg | laplace")
        ->check(CLI::IsMember({"t", "ghs", "neg", "laplace"}))
        ->capture_default_str();
    prior_sample->add_option("--alpha", ps_alpha, "degrees of freedom (alpha)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    prior_sample->add_option("--log-w", ps_log_w, "log square scale (log w)")
        ->capture_default_str();
    prior_sample->add_option("--count", ps_count, "number of draws")->capture_default_str();
    prior_sample->add_option("--seed", ps_seed, "random seed")->capture_default_str();
    prior_sample->add_option("--out", ps_out, "output file (default: stdout)");

    for (CLI::App* sub : {simulate, fit, rank, predict_cmd, cv, path, prior_sample})
        sub->fallthrough();  // global flags like --quiet may follow the subcommand

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (simulate->parsed())
            return run_simulate(design, n_train, n_test, noise, sim_seed, sim_out);
        if (fit->parsed())
            return run_fit(fit_train, fit_test, fit_prior, fit_mcmc, fit_out, quiet);
        if (rank->parsed()) return run_rank(rank_store, rank_mode, rank_out);
        if (predict_cmd->parsed()) return run_predict(pred_store, pred_test, pred_out);
        if (cv->parsed()) return run_cv(cv_train, cv_prior, cv_mcmc, cv_jobs, cv_out, quiet);
        if (path->parsed())
            return run_path(path_train, path_test, path_prior, path_mcmc, grid_lo, grid_hi,
                            grid_n, path_jobs, path_out, quiet);
        if (prior_sample->parsed())
            return run_prior_sample(ps_family, ps_alpha, ps_log_w, ps_count, ps_seed, ps_out);
    } catch (const std::exception& e) {
        const std::string stage = app.get_subcommands().empty()
                                      ? "run"
                                      : app.get_subcommands().front()->get_name();
        say("error [" + stage + "]: " + e.what());
        return 1;
    }
    return 2;
}
