#pragma once

#include <string>

#include "hbmlr/chain.hpp"

namespace hbmlr {

/// Columnar text format: '#'-prefixed "key = value" header lines carrying the
/// settings, prior, standardization map, acceptance statistics and dataset
/// fingerprint, then one row per stored draw:
///   iteration accept delta_H log_w|NA sigma^2_1..p delta row-major (p+1)xK
/// Every number is written with 17 significant digits so a reload is
/// value-exact and a rewrite is byte-identical.
void save_store(const SampleStore& store, const std::string& path);

SampleStore load_store(const std::string& path);

}  // namespace hbmlr
