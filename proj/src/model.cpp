#include "hbmlr/model.hpp"

#include <algorithm>
#include <cmath>

namespace hbmlr {

namespace {

// log(sum of exp over the logits (0, eta_1..eta_K)) for one case.
double row_logsumexp(const Eigen::Ref<const Eigen::RowVectorXd>& eta_row) {
    double m = 0.0;  // the implicit baseline logit
    for (Index k = 0; k < eta_row.size(); ++k) m = std::max(m, eta_row[k]);
    double s = std::exp(-m);
    for (Index k = 0; k < eta_row.size(); ++k) s += std::exp(eta_row[k] - m);
    return m + std::log(s);
}

}  // namespace

Matrix linear_predictors(const Matrix& features, const Matrix& delta) {
    check_coefficients(delta, features.cols(), static_cast<int>(delta.cols()) + 1);
    return (features * delta.bottomRows(features.cols())).rowwise() + delta.row(0);
}

Matrix class_prob_matrix(const Matrix& eta) {
    const Index n = eta.rows();
    const Index k_count = eta.cols();
    Matrix probs(n, k_count + 1);
    for (Index i = 0; i < n; ++i) {
        const double lse = row_logsumexp(eta.row(i));
        probs(i, 0) = std::exp(-lse);
        for (Index k = 0; k < k_count; ++k) probs(i, k + 1) = std::exp(eta(i, k) - lse);
    }
    return probs;
}

Vector class_probabilities(const Vector& x_row, const Matrix& delta) {
    if (x_row.size() != delta.rows() - 1)
        throw DimensionError("class_probabilities: x has " + std::to_string(x_row.size()) +
                             " features, delta has " + std::to_string(delta.rows() - 1) +
                             " feature rows");
    Matrix eta = linear_predictors(x_row.transpose(), delta);
    return class_prob_matrix(eta).row(0).transpose();
}

double log_likelihood_from_eta(const Matrix& eta, const IntVector& labels) {
    if (eta.rows() != labels.size())
        throw DimensionError("log_likelihood: eta rows != label count");
    double total = 0.0;
    for (Index i = 0; i < eta.rows(); ++i) {
        const double lse = row_logsumexp(eta.row(i));
        const int y = labels[i];
        total += (y == 1 ? 0.0 : eta(i, y - 2)) - lse;
    }
    return total;
}

double log_likelihood(const Dataset& dataset, const Matrix& delta) {
    check_coefficients(delta, dataset.p(), dataset.class_count);
    return log_likelihood_from_eta(linear_predictors(dataset.features, delta), dataset.labels);
}

Matrix likelihood_residual(const Matrix& eta, const IntVector& labels) {
    Matrix resid = class_prob_matrix(eta).rightCols(eta.cols());
    for (Index i = 0; i < eta.rows(); ++i) {
        const int y = labels[i];
        if (y >= 2) resid(i, y - 2) -= 1.0;
    }
    return resid;
}

Matrix grad_neg_log_likelihood(const Dataset& dataset, const Matrix& delta,
                               const IndexSet& active_set) {
    check_coefficients(delta, dataset.p(), dataset.class_count);
    const Matrix resid =
        likelihood_residual(linear_predictors(dataset.features, delta), dataset.labels);
    Matrix grad(static_cast<Index>(active_set.size()), delta.cols());
    for (std::size_t a = 0; a < active_set.size(); ++a) {
        const Index j = active_set[a];
        if (j == 0)
            grad.row(static_cast<Index>(a)) = resid.colwise().sum();
        else
            grad.row(static_cast<Index>(a)) = dataset.features.col(j - 1).transpose() * resid;
    }
    return grad;
}

Vector curvature_estimates(const Dataset& dataset, const Vector& sigma_sq, double sigma0_sq,
                           const IndexSet& active_set) {
    const double c = dataset.class_count;
    const double prior_factor = (c - 1.0) / c;
    Vector curv(static_cast<Index>(active_set.size()));
    for (std::size_t a = 0; a < active_set.size(); ++a) {
        const Index j = active_set[a];
        const double col_sq =
            j == 0 ? static_cast<double>(dataset.n()) : dataset.features.col(j - 1).squaredNorm();
        const double s2 = j == 0 ? sigma0_sq : sigma_sq[j - 1];
        curv[static_cast<Index>(a)] = col_sq / 4.0 + prior_factor / s2;
    }
    return curv;
}

double log_sigma_sq_prior(double sigma_sq, const PriorSpec& spec) {
    if (!(sigma_sq > 0.0)) throw DomainError("log_sigma_sq_prior: sigma_sq must be > 0");
    const double alpha = spec.alpha;
    const double w = spec.w();
    switch (spec.family) {
        case PriorFamily::T: {
            const double a = alpha / 2.0;
            const double b = alpha * w / 2.0;
            return a * std::log(b) - std::lgamma(a) - (a + 1.0) * std::log(sigma_sq) -
                   b / sigma_sq;
        }
        case PriorFamily::GHS: {
            return std::lgamma((alpha + 1.0) / 2.0) - std::lgamma(alpha / 2.0) -
                   0.5 * std::log(alpha * M_PI) - 0.5 * std::log(w) -
                   0.5 * (alpha + 1.0) * std::log1p(sigma_sq / (alpha * w)) -
                   0.5 * std::log(sigma_sq);
        }
        case PriorFamily::NEG: {
            const double lambda = spec.neg_lambda();
            return std::log(spec.neg_kappa() / lambda) -
                   (alpha / 2.0 + 1.0) * std::log1p(sigma_sq / lambda);
        }
    }
    throw DomainError("log_sigma_sq_prior: unknown family");
}

const char* smn_name(SmnFamily f) {
    switch (f) {
        case SmnFamily::T: return "t";
        case SmnFamily::GHS: return "ghs";
        case SmnFamily::NEG: return "neg";
        case SmnFamily::Laplace: return "laplace";
    }
    return "?";
}

SmnFamily smn_from_name(const std::string& name) {
    if (name == "t") return SmnFamily::T;
    if (name == "ghs") return SmnFamily::GHS;
    if (name == "neg") return SmnFamily::NEG;
    if (name == "laplace") return SmnFamily::Laplace;
    throw DomainError("unknown scale-mixture family: " + name);
}

Vector sample_prior_beta(SmnFamily family, double alpha, double log_gamma, Index count,
                         Rng& rng) {
    if (count < 1) throw DomainError("sample_prior_beta: count must be >= 1");
    const double gamma = std::exp(log_gamma);
    const double half_alpha = alpha / 2.0;
    Vector out(count);
    for (Index i = 0; i < count; ++i) {
        double beta = draw_normal(rng);
        switch (family) {
            case SmnFamily::T:
                beta *= std::sqrt(draw_inverse_gamma(rng, half_alpha, half_alpha));
                break;
            case SmnFamily::GHS:
                beta *= std::abs(draw_normal(rng)) *
                        std::sqrt(draw_inverse_gamma(rng, half_alpha, half_alpha));
                break;
            case SmnFamily::NEG:
                beta *= std::sqrt(draw_exponential(rng)) *
                        std::sqrt(draw_inverse_gamma(rng, half_alpha, half_alpha));
                break;
            case SmnFamily::Laplace:
                beta *= std::sqrt(draw_exponential(rng));
                break;
        }
        out[i] = beta * gamma;
    }
    return out;
}

}  // namespace hbmlr
