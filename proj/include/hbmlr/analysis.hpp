#pragma once

#include <string>
#include <vector>

#include "hbmlr/chain.hpp"
#include "hbmlr/types.hpp"

namespace hbmlr {

enum class SummaryMode { Mean, Median };

/// Per-feature posterior summary: coefficient estimates delta_hat, SDB values,
/// descending-SDB ranks (1-based feature indices, ties broken by index) and
/// SDBs relative to the maximum.
struct PosteriorSummary {
    Matrix delta_mean;          // (p+1) x K
    Vector sdb_values;          // length p, intercept row excluded
    std::vector<Index> rank;    // permutation of 1..p
    Vector rel_sdb;             // sdb / max(sdb); all zero when max == 0
};

PosteriorSummary summarize(const SampleStore& store, int class_count,
                           SummaryMode mode = SummaryMode::Mean);

/// 1-based feature indices with sdb_j >= rel_threshold * max(sdb); empty when
/// every SDB is zero.
std::vector<Index> select_features(const PosteriorSummary& summary, double rel_threshold);

struct PredictionReport {
    Matrix probs;               // n_test x C
    double amlp = 0.0;
    double error_rate = 0.0;
    Vector per_case_log_prob;   // log prob at the true label
};

/// Posterior predictive probabilities: the mean over stored draws of the
/// per-draw class probabilities. x_test must carry the training map.
Matrix predict(const SampleStore& store, const Matrix& x_test_standardized, int class_count);

/// Average minus log predictive probability at the true labels; +inf when a
/// true label has probability zero.
double amlp(const Matrix& probs, const IntVector& labels);

/// Fraction misclassified by argmax; ties go to the smallest class index.
double error_rate(const Matrix& probs, const IntVector& labels);

PredictionReport prediction_report(Matrix probs, const IntVector& labels);

// ---- solution paths and cross-validation ----

struct PathPoint {
    double log_w = 0.0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    PosteriorSummary summary;
    double amlp = std::numeric_limits<double>::quiet_NaN();
    double error_rate = std::numeric_limits<double>::quiet_NaN();
    double rejection_rate = 0.0;
};

/// One independent chain per grid value of log w (seed = settings.seed +
/// index), on train data standardized once; per-point failures are recorded
/// without disturbing the other points. Rows come back ordered by the grid.
std::vector<PathPoint> solution_path(const Dataset& raw_train, const Dataset* raw_test,
                                     const PriorSpec& prior_template,
                                     const McmcSettings& settings,
                                     const std::vector<double>& log_w_grid, int jobs = 1);

/// 100 evenly spaced values of log w on [-24, -8].
std::vector<double> default_log_w_grid();

struct FoldReport {
    Index fold = 0;          // held-out case, 0-based
    bool ok = false;
    std::string error;
    int true_label = 0;
    int predicted_label = 0;
    double log_prob_true = 0.0;
};

struct CvResult {
    double amlp = 0.0;
    double error_rate = 0.0;
    int n_folds = 0;
    int n_failed = 0;
    std::vector<FoldReport> folds;
};

/// Leave-one-out cross-validation: each fold re-standardizes on its n-1
/// training cases, runs a chain (seed = settings.seed + fold), and scores the
/// held-out case. Aggregates are means over the successful folds.
CvResult loocv(const Dataset& raw_data, const PriorSpec& prior, const McmcSettings& settings,
               int jobs = 1);

// ---- report writers ----

void write_summary_csv(const PosteriorSummary& summary, const std::string& path);
void write_metrics(const std::vector<std::pair<std::string, std::string>>& entries,
                   const std::string& path);
void write_path_csv(const std::vector<PathPoint>& path, Index p, Index k,
                    const std::string& file);

/// Run fn(0..count-1) on up to `jobs` worker threads; exceptions inside tasks
/// must be captured by fn itself.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace hbmlr
