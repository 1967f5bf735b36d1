#include "hbmlr/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numeric>
#include <thread>

#include "hbmlr/dataset_io.hpp"
#include "hbmlr/format.hpp"
#include "hbmlr/model.hpp"

namespace hbmlr {

PosteriorSummary summarize(const SampleStore& store, int class_count, SummaryMode mode) {
    if (store.draws.empty()) throw Error("summarize: sample store is empty");
    const Index rows = store.draws.front().delta.rows();
    const Index cols = store.draws.front().delta.cols();
    const Index p = rows - 1;

    PosteriorSummary summary;
    summary.delta_mean = Matrix::Zero(rows, cols);
    if (mode == SummaryMode::Mean) {
        for (const Draw& d : store.draws) summary.delta_mean += d.delta;
        summary.delta_mean /= static_cast<double>(store.draws.size());
    } else {
        std::vector<double> coord(store.draws.size());
        for (Index r = 0; r < rows; ++r)
            for (Index c = 0; c < cols; ++c) {
                for (std::size_t m = 0; m < store.draws.size(); ++m)
                    coord[m] = store.draws[m].delta(r, c);
                auto mid = coord.begin() + coord.size() / 2;
                std::nth_element(coord.begin(), mid, coord.end());
                double med = *mid;
                if (coord.size() % 2 == 0) {
                    auto lower = std::max_element(coord.begin(), mid);
                    med = 0.5 * (med + *lower);
                }
                summary.delta_mean(r, c) = med;
            }
    }

    summary.sdb_values.resize(p);
    for (Index j = 0; j < p; ++j)
        summary.sdb_values[j] = sdb(summary.delta_mean.row(j + 1), class_count);

    summary.rank.resize(static_cast<std::size_t>(p));
    std::iota(summary.rank.begin(), summary.rank.end(), Index{1});
    std::stable_sort(summary.rank.begin(), summary.rank.end(), [&](Index a, Index b) {
        return summary.sdb_values[a - 1] > summary.sdb_values[b - 1];
    });

    const double max_sdb = p > 0 ? summary.sdb_values.maxCoeff() : 0.0;
    summary.rel_sdb = max_sdb > 0.0 ? Vector(summary.sdb_values / max_sdb)
                                    : Vector(Vector::Zero(p));
    return summary;
}

std::vector<Index> select_features(const PosteriorSummary& summary, double rel_threshold) {
    if (!(rel_threshold > 0.0 && rel_threshold <= 1.0))
        throw DomainError("select_features: threshold must be in (0, 1]");
    const double max_sdb =
        summary.sdb_values.size() > 0 ? summary.sdb_values.maxCoeff() : 0.0;
    std::vector<Index> selected;
    if (max_sdb <= 0.0) return selected;
    for (Index j = 0; j < summary.sdb_values.size(); ++j)
        if (summary.sdb_values[j] >= rel_threshold * max_sdb) selected.push_back(j + 1);
    return selected;
}

Matrix predict(const SampleStore& store, const Matrix& x_test_standardized, int class_count) {
    if (store.draws.empty()) throw Error("predict: sample store is empty");
    if (x_test_standardized.cols() != store.n_features)
        throw DimensionError("predict: test set has " +
                             std::to_string(x_test_standardized.cols()) +
                             " features, store has " + std::to_string(store.n_features));
    Matrix probs = Matrix::Zero(x_test_standardized.rows(), class_count);
    for (const Draw& d : store.draws)
        probs += class_prob_matrix(linear_predictors(x_test_standardized, d.delta));
    probs /= static_cast<double>(store.draws.size());
    return probs;
}

double amlp(const Matrix& probs, const IntVector& labels) {
    if (probs.rows() != labels.size()) throw DimensionError("amlp: row count != label count");
    double total = 0.0;
    for (Index i = 0; i < probs.rows(); ++i) total -= std::log(probs(i, labels[i] - 1));
    return total / probs.rows();
}

double error_rate(const Matrix& probs, const IntVector& labels) {
    if (probs.rows() != labels.size())
        throw DimensionError("error_rate: row count != label count");
    Index wrong = 0;
    for (Index i = 0; i < probs.rows(); ++i) {
        Index argmax = 0;
        for (Index c = 1; c < probs.cols(); ++c)
            if (probs(i, c) > probs(i, argmax)) argmax = c;  // ties keep the smaller index
        if (argmax + 1 != labels[i]) ++wrong;
    }
    return static_cast<double>(wrong) / probs.rows();
}

PredictionReport prediction_report(Matrix probs, const IntVector& labels) {
    PredictionReport report;
    report.amlp = amlp(probs, labels);
    report.error_rate = error_rate(probs, labels);
    report.per_case_log_prob.resize(labels.size());
    for (Index i = 0; i < labels.size(); ++i)
        report.per_case_log_prob[i] = std::log(probs(i, labels[i] - 1));
    report.probs = std::move(probs);
    return report;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

std::vector<double> default_log_w_grid() {
    std::vector<double> grid(100);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = -24.0 + 16.0 * static_cast<double>(i) / (grid.size() - 1);
    return grid;
}

std::vector<PathPoint> solution_path(const Dataset& raw_train, const Dataset* raw_test,
                                     const PriorSpec& prior_template,
                                     const McmcSettings& settings,
                                     const std::vector<double>& log_w_grid, int jobs) {
    if (log_w_grid.empty()) throw DomainError("solution_path: empty grid");

    std::vector<Dataset> extra;
    if (raw_test) extra.push_back(*raw_test);
    auto [train, others] = standardize(raw_train, std::move(extra));
    const Dataset* test = others.empty() ? nullptr : &others.front();

    std::vector<PathPoint> path(log_w_grid.size());
    parallel_for(log_w_grid.size(), jobs, [&](std::size_t i) {
        PathPoint& point = path[i];
        point.log_w = log_w_grid[i];
        point.seed = settings.seed + i;
        try {
            PriorSpec prior = prior_template;
            prior.log_w = point.log_w;
            McmcSettings local = settings;
            local.seed = point.seed;
            const SampleStore store = run_chain(train, prior, local);
            point.rejection_rate = store.sampling_stats.rejection_rate();
            point.summary = summarize(store, train.class_count);
            if (test) {
                const Matrix probs = predict(store, test->features, train.class_count);
                point.amlp = amlp(probs, test->labels);
                point.error_rate = error_rate(probs, test->labels);
            }
            point.ok = true;
        } catch (const std::exception& e) {
            point.ok = false;
            point.error = e.what();
        }
    });
    return path;
}

CvResult loocv(const Dataset& raw_data, const PriorSpec& prior, const McmcSettings& settings,
               int jobs) {
    raw_data.validate();
    const Index n = raw_data.n();
    if (n < 2) throw DomainError("loocv: need at least 2 cases");

    CvResult result;
    result.n_folds = static_cast<int>(n);
    result.folds.resize(static_cast<std::size_t>(n));

    parallel_for(static_cast<std::size_t>(n), jobs, [&](std::size_t fold) {
        FoldReport& report = result.folds[fold];
        report.fold = static_cast<Index>(fold);
        report.true_label = raw_data.labels[static_cast<Index>(fold)];
        try {
            Dataset fold_train;
            fold_train.class_count = raw_data.class_count;
            fold_train.features.resize(n - 1, raw_data.p());
            fold_train.labels.resize(n - 1);
            Index r = 0;
            for (Index i = 0; i < n; ++i) {
                if (i == static_cast<Index>(fold)) continue;
                fold_train.features.row(r) = raw_data.features.row(i);
                fold_train.labels[r] = raw_data.labels[i];
                ++r;
            }
            Dataset heldout;
            heldout.class_count = raw_data.class_count;
            heldout.features = raw_data.features.row(static_cast<Index>(fold));
            heldout.labels.resize(1);
            heldout.labels[0] = report.true_label;

            auto [train, others] = standardize(std::move(fold_train), {std::move(heldout)});
            McmcSettings local = settings;
            local.seed = settings.seed + fold;
            const SampleStore store = run_chain(train, prior, local);
            const Matrix probs = predict(store, others.front().features, train.class_count);

            Index argmax = 0;
            for (Index c = 1; c < probs.cols(); ++c)
                if (probs(0, c) > probs(0, argmax)) argmax = c;
            report.predicted_label = static_cast<int>(argmax) + 1;
            report.log_prob_true = std::log(probs(0, report.true_label - 1));
            report.ok = true;
        } catch (const std::exception& e) {
            report.ok = false;
            report.error = e.what();
        }
    });

    double total_amlp = 0.0;
    double total_errors = 0.0;
    int ok_count = 0;
    for (const FoldReport& fr : result.folds) {
        if (!fr.ok) {
            ++result.n_failed;
            continue;
        }
        ++ok_count;
        total_amlp -= fr.log_prob_true;
        total_errors += fr.predicted_label != fr.true_label ? 1.0 : 0.0;
    }
    result.amlp = ok_count > 0 ? total_amlp / ok_count
                               : std::numeric_limits<double>::quiet_NaN();
    result.error_rate = ok_count > 0 ? total_errors / ok_count
                                     : std::numeric_limits<double>::quiet_NaN();
    return result;
}

void write_summary_csv(const PosteriorSummary& summary, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    const Index p = summary.sdb_values.size();
    const Index k = summary.delta_mean.cols();
    std::vector<Index> rank_of(static_cast<std::size_t>(p) + 1, 0);
    for (std::size_t pos = 0; pos < summary.rank.size(); ++pos)
        rank_of[static_cast<std::size_t>(summary.rank[pos])] = static_cast<Index>(pos) + 1;

    out << "feature_index,sdb,rel_sdb,rank";
    for (Index c = 0; c < k; ++c) out << ",delta_" << (c + 1);
    out << '\n';
    for (Index j = 1; j <= p; ++j) {
        out << j << ',' << format_g17(summary.sdb_values[j - 1]) << ','
            << format_g17(summary.rel_sdb[j - 1]) << ','
            << rank_of[static_cast<std::size_t>(j)];
        for (Index c = 0; c < k; ++c) out << ',' << format_g17(summary.delta_mean(j, c));
        out << '\n';
    }
    if (!out) throw Error("write failed for '" + path + "'");
}

void write_metrics(const std::vector<std::pair<std::string, std::string>>& entries,
                   const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    for (const auto& [key, value] : entries) out << key << " = " << value << '\n';
    if (!out) throw Error("write failed for '" + path + "'");
}

void write_path_csv(const std::vector<PathPoint>& path, Index p, Index k,
                    const std::string& file) {
    std::ofstream out(file);
    if (!out) throw Error("cannot write '" + file + "'");
    out << "log_w,seed,status,amlp,error_rate,rejection_rate";
    for (Index j = 1; j <= p; ++j) out << ",sdb_" << j;
    for (Index j = 0; j <= p; ++j)
        for (Index c = 1; c <= k; ++c) out << ",delta_" << j << '_' << c;
    out << '\n';
    for (const PathPoint& point : path) {
        out << format_g17(point.log_w) << ',' << point.seed << ','
            << (point.ok ? "ok" : "failed") << ',' << format_g17(point.amlp) << ','
            << format_g17(point.error_rate) << ',' << format_g17(point.rejection_rate);
        if (point.ok) {
            for (Index j = 0; j < p; ++j) out << ',' << format_g17(point.summary.sdb_values[j]);
            for (Index j = 0; j <= p; ++j)
                for (Index c = 0; c < k; ++c)
                    out << ',' << format_g17(point.summary.delta_mean(j, c));
        } else {
            for (Index col = 0; col < p + (p + 1) * k; ++col) out << ",";
        }
        out << '\n';
    }
    if (!out) throw Error("write failed for '" + file + "'");
}

}  // namespace hbmlr
