#include "hbmlr/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

#include "hbmlr/format.hpp"

namespace hbmlr {

namespace {

double parse_cell(const std::string& cell, Index row, Index col) {
    if (cell.empty()) throw ParseError("missing value", row, col);
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ParseError("unparsable numeric cell '" + cell + "'", row, col);
    if (!std::isfinite(value)) throw ParseError("non-finite value '" + cell + "'", row, col);
    return value;
}

std::vector<std::string> split_fields(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

}  // namespace

Dataset load_csv(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::string line;
    Index line_no = 0;
    Index n_cols = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (has_header && line_no == 1) continue;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_fields(line);
        if (n_cols < 0) {
            n_cols = static_cast<Index>(fields.size());
            if (n_cols < 2) throw ParseError("need a label column and at least one feature",
                                             line_no, n_cols);
        } else if (static_cast<Index>(fields.size()) != n_cols) {
            throw ParseError("ragged row: expected " + std::to_string(n_cols) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no, static_cast<Index>(fields.size()));
        }

        const double raw_label = parse_cell(fields[0], line_no, 1);
        const int label = static_cast<int>(raw_label);
        if (raw_label != label || label < 1)
            throw ParseError("label must be an integer >= 1, got '" + fields[0] + "'", line_no,
                             1);
        labels.push_back(label);

        std::vector<double> values(fields.size() - 1);
        for (std::size_t j = 1; j < fields.size(); ++j)
            values[j - 1] = parse_cell(fields[j], line_no, static_cast<Index>(j + 1));
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw Error("'" + path + "' contains no data rows");

    Dataset dataset;
    dataset.features.resize(static_cast<Index>(rows.size()), n_cols - 1);
    dataset.labels.resize(static_cast<Index>(rows.size()));
    int max_label = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        dataset.labels[static_cast<Index>(i)] = labels[i];
        max_label = std::max(max_label, labels[i]);
        for (Index j = 0; j < n_cols - 1; ++j)
            dataset.features(static_cast<Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    }
    if (max_label < 2) throw Error("'" + path + "' has a single class; need labels in 1..C, C >= 2");
    dataset.class_count = max_label;
    dataset.validate();
    return dataset;
}

void save_csv(const Dataset& dataset, const std::string& path, bool write_header) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    if (write_header) {
        out << "label";
        for (Index j = 0; j < dataset.p(); ++j) out << ",x" << (j + 1);
        out << '\n';
    }
    for (Index i = 0; i < dataset.n(); ++i) {
        out << dataset.labels[i];
        for (Index j = 0; j < dataset.p(); ++j) out << ',' << format_g17(dataset.features(i, j));
        out << '\n';
    }
    if (!out) throw Error("write failed for '" + path + "'");
}

Matrix standardize_features(const Matrix& features, const Vector& means, const Vector& sds) {
    if (features.cols() != means.size() || features.cols() != sds.size())
        throw DimensionError("standardize_features: map length != column count");
    return (features.rowwise() - means.transpose()).array().rowwise() /
           sds.transpose().array();
}

std::pair<Dataset, std::vector<Dataset>> standardize(Dataset train, std::vector<Dataset> others) {
    const Index p = train.p();
    for (const Dataset& d : others)
        if (d.p() != p) throw DimensionError("standardize: feature counts differ");

    Vector means(p), sds(p);
    for (Index j = 0; j < p; ++j) {
        means[j] = train.features.col(j).mean();
        const double var = (train.features.col(j).array() - means[j]).square().sum() / train.n();
        const double sd = std::sqrt(var);
        sds[j] = sd < 1e-300 ? 1.0 : sd;  // constant column: shift only
    }

    train.features = standardize_features(train.features, means, sds);
    train.standardized = true;
    train.own_standardization = true;
    train.train_means = means;
    train.train_sds = sds;
    for (Dataset& d : others) {
        d.features = standardize_features(d.features, means, sds);
        d.standardized = true;
        d.own_standardization = false;
        d.train_means = means;
        d.train_sds = sds;
    }
    return {std::move(train), std::move(others)};
}

}  // namespace hbmlr
