#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hbmlr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntVector = Eigen::VectorXi;
using Index = Eigen::Index;

// Sorted row indices into 0..p (0 = intercept row).
using IndexSet = std::vector<Index>;

// Coefficient matrix is (p+1) x K with row 0 holding the intercepts,
// K = C - 1. Per-feature prior variances are a length-p vector.
using CoefficientMatrix = Matrix;
using VarianceVector = Vector;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// CSV / store parsing failure; row and column are 1-based, 0 = not applicable.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, Index row, Index col)
        : Error(msg + " (row " + std::to_string(row) + ", column " + std::to_string(col) + ")"),
          row(row), col(col) {}
    Index row = 0;
    Index col = 0;
};

class SamplerError : public Error {
public:
    using Error::Error;
};

class NonFiniteGradientError : public SamplerError {
public:
    explicit NonFiniteGradientError(Index coordinate)
        : SamplerError("non-finite gradient at coordinate " + std::to_string(coordinate)),
          coordinate(coordinate) {}
    Index coordinate = 0;
};

class ChainError : public Error {
public:
    ChainError(const std::string& msg, std::size_t iteration)
        : Error("iteration " + std::to_string(iteration) + ": " + msg), iteration(iteration) {}
    std::size_t iteration = 0;
};

/// Feature matrix (rows = cases) with class labels in 1..C.
struct Dataset {
    Matrix features;            // n x p
    IntVector labels;           // length n, values in 1..class_count
    int class_count = 0;        // C >= 2
    bool standardized = false;
    // True on the training set the map was estimated from (its columns then
    // have mean 0, sd 1); false on sets transformed with a borrowed map.
    bool own_standardization = false;
    Vector train_means;         // length p, present iff standardized
    Vector train_sds;           // length p, present iff standardized

    Index n() const { return features.rows(); }
    Index p() const { return features.cols(); }

    // Throws on invariant violations (n >= 1, labels in range, finite values,
    // and for standardized data zero column means / unit column sds).
    void validate() const;

    // FNV-1a over the binary content; identifies the dataset in store metadata.
    std::uint64_t fingerprint() const;
};

enum class PriorFamily { T, GHS, NEG };

enum class WMode { Fixed, Hyper };

const char* family_name(PriorFamily f);
PriorFamily family_from_name(const std::string& name);

/// Heavy-tailed scale-mixture prior: family, degrees of freedom alpha,
/// log square-scale log(w) (scale gamma = sqrt(w)), and the fixed intercept
/// variance sigma0_sq. In Hyper mode log(w) is sampled with a N(0, v) prior
/// and the log_w field only seeds the chain.
struct PriorSpec {
    PriorFamily family = PriorFamily::T;
    double alpha = 1.0;
    double log_w = -10.0;
    WMode w_mode = WMode::Fixed;
    double hyper_w_variance = 0.0;  // > 0 required iff w_mode == Hyper
    double sigma0_sq = 2000.0;

    double w() const { return std::exp(log_w); }
    // NEG constants; derived from (alpha, w) on demand so they can never go stale.
    double neg_kappa() const { return alpha / 2.0; }
    double neg_lambda() const { return alpha * w() / 2.0; }

    void validate() const;
};

inline Index coefficient_rows(Index p) { return p + 1; }
inline Index contrast_count(int class_count) { return class_count - 1; }

// Dimension check shared by the model functions.
void check_coefficients(const Matrix& delta, Index p, int class_count);

}  // namespace hbmlr
