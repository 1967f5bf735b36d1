#pragma once

#include <cmath>

#include "hbmlr/rng.hpp"
#include "hbmlr/types.hpp"

// Model mathematics for multinomial logistic regression in the identifiable
// delta parameterization: contrasts delta_{j,k} = beta_{j,k+1} - beta_{j,1},
// k = 1..K with K = C - 1. Class probabilities use logits (0, eta_1..eta_K)
// where eta_k = delta_{0,k} + x * delta_{1:p,k}.

namespace hbmlr {

/// V(delta) = sum_k delta_k^2 - (sum_k delta_k)^2 / C, the sum of squared
/// deviations of the C-vector (0, delta_1..delta_K) from its mean.
template <class Derived>
double v_value(const Eigen::MatrixBase<Derived>& delta_row, int class_count) {
    const double sum = delta_row.sum();
    return delta_row.array().square().sum() - sum * sum / class_count;
}

/// SDB = sqrt(V(delta)/C), the per-feature importance index.
template <class Derived>
double sdb(const Eigen::MatrixBase<Derived>& delta_row, int class_count) {
    const double v = std::max(0.0, v_value(delta_row, class_count));
    return std::sqrt(v / class_count);
}

/// Log density of N_K(0, (I_K + J_K) sigma_sq) evaluated via V(delta);
/// det(I_K + J_K) = C, so the normalizing constant contributes -(1/2) log C.
template <class Derived>
double log_prior_delta_row(const Eigen::MatrixBase<Derived>& delta_row, double sigma_sq,
                           int class_count) {
    if (!(sigma_sq > 0.0)) throw DomainError("log_prior_delta_row: sigma_sq must be > 0");
    const Index k = delta_row.size();
    return -0.5 * k * std::log(2.0 * M_PI * sigma_sq)
           - v_value(delta_row, class_count) / (2.0 * sigma_sq)
           - 0.5 * std::log(static_cast<double>(class_count));
}

/// Gradient of -log prior: entry k is (delta_k - sum(delta)/C) / sigma_sq.
template <class Derived>
Vector grad_neg_log_prior_row(const Eigen::MatrixBase<Derived>& delta_row, double sigma_sq,
                              int class_count) {
    if (!(sigma_sq > 0.0)) throw DomainError("grad_neg_log_prior_row: sigma_sq must be > 0");
    const double mean_term = delta_row.sum() / class_count;
    return (delta_row.array() - mean_term).matrix().transpose() / sigma_sq;
}

// ---- likelihood ----

/// eta = 1 * intercepts + X * delta_features, an n x K matrix.
Matrix linear_predictors(const Matrix& features, const Matrix& delta);

/// Row-wise softmax of logits (0, eta_1..eta_K); returns an n x C matrix of
/// class probabilities, log-sum-exp stabilized.
Matrix class_prob_matrix(const Matrix& eta);

/// P(y = c | x, delta) for one case, c = 1..C.
Vector class_probabilities(const Vector& x_row, const Matrix& delta);

double log_likelihood_from_eta(const Matrix& eta, const IntVector& labels);
double log_likelihood(const Dataset& dataset, const Matrix& delta);

/// n x K matrix with entries P(y_i = k+1) - I(y_i = k+1); the per-case factor
/// of the likelihood gradient.
Matrix likelihood_residual(const Matrix& eta, const IntVector& labels);

/// Gradient of -log L restricted to the given rows of delta (row 0 uses
/// x_{i0} = 1). Returns |active| x K, rows in active-set order.
Matrix grad_neg_log_likelihood(const Dataset& dataset, const Matrix& delta,
                               const IndexSet& active_set);

/// Per-row curvature estimate sum_i x_ij^2 / 4 + ((C-1)/C) / sigma_j^2,
/// with sigma0_sq standing in for the intercept row. Independent of delta;
/// identical across the K coordinates of a row.
Vector curvature_estimates(const Dataset& dataset, const Vector& sigma_sq, double sigma0_sq,
                           const IndexSet& active_set);

// ---- sigma^2 prior densities ----

/// Log prior density of one sigma_j^2 under the chosen family:
///   T:   IG(alpha/2, w alpha/2)
///   GHS: half-t(alpha, sqrt(w)) on sigma, transformed to sigma^2
///   NEG: (kappa/lambda) (1 + sigma^2/lambda)^{-alpha/2 - 1}
double log_sigma_sq_prior(double sigma_sq, const PriorSpec& spec);

// ---- prior random-variate generators ----

// Scale-mixture-normal families with product-form generators.
enum class SmnFamily { T, GHS, NEG, Laplace };

const char* smn_name(SmnFamily f);
SmnFamily smn_from_name(const std::string& name);

/// i.i.d. coefficient draws via the product constructions, e.g.
/// t: N(0,1) * sqrt(IG(alpha/2, alpha/2)) * gamma with gamma = exp(log_gamma).
Vector sample_prior_beta(SmnFamily family, double alpha, double log_gamma, Index count,
                         Rng& rng);

}  // namespace hbmlr
