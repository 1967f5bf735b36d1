#include "hbmlr/types.hpp"

#include <cmath>
#include <cstring>

namespace hbmlr {

void Dataset::validate() const {
    if (n() < 1) throw DomainError("dataset: n must be >= 1");
    if (p() < 1) throw DomainError("dataset: p must be >= 1");
    if (class_count < 2) throw DomainError("dataset: class_count must be >= 2");
    if (labels.size() != n()) throw DimensionError("dataset: label count != case count");
    for (Index i = 0; i < n(); ++i)
        if (labels[i] < 1 || labels[i] > class_count)
            throw DomainError("dataset: label " + std::to_string(labels[i]) + " at case " +
                              std::to_string(i + 1) + " outside 1.." +
                              std::to_string(class_count));
    if (!features.allFinite()) throw DomainError("dataset: non-finite feature value");
    if (standardized) {
        if (train_means.size() != p() || train_sds.size() != p())
            throw DimensionError("dataset: standardization vectors must have length p");
        if (!own_standardization) return;  // borrowed map; column moments are the train's
        for (Index j = 0; j < p(); ++j) {
            const double mean = features.col(j).mean();
            const double sd =
                std::sqrt((features.col(j).array() - mean).square().sum() / n());
            const bool constant = features.col(j).maxCoeff() == features.col(j).minCoeff();
            if (std::abs(mean) >= 1e-10)
                throw DomainError("dataset: standardized column " + std::to_string(j + 1) +
                                  " has nonzero mean");
            if (!constant && std::abs(sd - 1.0) >= 1e-10)
                throw DomainError("dataset: standardized column " + std::to_string(j + 1) +
                                  " has sd != 1");
        }
    }
}

std::uint64_t Dataset::fingerprint() const {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
    auto mix = [&h](const void* data, std::size_t bytes) {
        const auto* bytes_ptr = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < bytes; ++i) {
            h ^= bytes_ptr[i];
            h *= 1099511628211ULL;
        }
    };
    const std::int64_t dims[3] = {n(), p(), class_count};
    mix(dims, sizeof(dims));
    if (features.size() > 0) mix(features.data(), sizeof(double) * features.size());
    if (labels.size() > 0) mix(labels.data(), sizeof(int) * labels.size());
    return h;
}

void PriorSpec::validate() const {
    if (!(alpha > 0.0)) throw DomainError("prior: alpha must be > 0");
    if (!std::isfinite(log_w)) throw DomainError("prior: log_w must be finite");
    if (!(sigma0_sq > 0.0)) throw DomainError("prior: sigma0_sq must be > 0");
    if (w_mode == WMode::Hyper && !(hyper_w_variance > 0.0))
        throw DomainError("prior: hyper_w_variance must be > 0 in hyper mode");
}

const char* family_name(PriorFamily f) {
    switch (f) {
        case PriorFamily::T: return "t";
        case PriorFamily::GHS: return "ghs";
        case PriorFamily::NEG: return "neg";
    }
    return "?";
}

PriorFamily family_from_name(const std::string& name) {
    if (name == "t") return PriorFamily::T;
    if (name == "ghs") return PriorFamily::GHS;
    if (name == "neg") return PriorFamily::NEG;
    throw DomainError("unknown prior family: " + name);
}

void check_coefficients(const Matrix& delta, Index p, int class_count) {
    if (delta.rows() != p + 1 || delta.cols() != class_count - 1)
        throw DimensionError("coefficient matrix is " + std::to_string(delta.rows()) + "x" +
                             std::to_string(delta.cols()) + ", expected " +
                             std::to_string(p + 1) + "x" + std::to_string(class_count - 1));
}

}  // namespace hbmlr
