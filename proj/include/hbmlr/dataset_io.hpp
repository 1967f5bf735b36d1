#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hbmlr/types.hpp"

namespace hbmlr {

/// Comma-separated file, optional single header row, column 1 = integer label
/// in 1..C (C = max label seen), remaining columns numeric features.
/// LF or CRLF line endings; scientific notation accepted; missing or
/// non-numeric cells are rejected with row/column context.
Dataset load_csv(const std::string& path, bool has_header);

/// Inverse of load_csv; numbers carry 17 significant digits so a round trip
/// is value-exact.
void save_csv(const Dataset& dataset, const std::string& path, bool write_header = false);

/// Column-wise affine map to mean 0, sd 1 (population convention, divisor n),
/// estimated on the training set and applied unchanged to the others.
/// Constant training columns map to all zeros with sd recorded as 1.
std::pair<Dataset, std::vector<Dataset>> standardize(Dataset train, std::vector<Dataset> others);

/// Apply a stored training map to a raw feature matrix.
Matrix standardize_features(const Matrix& features, const Vector& means, const Vector& sds);

}  // namespace hbmlr
