#pragma once

#include <optional>
#include <string>
#include <vector>

#include "multispread/multispread.hpp"

namespace mspread {

/// An embedded precomputed instance.
struct CatalogInstance {
  std::string name;
  /// e.g. "(5,3;3,5)_2" or "partition nu=1 of F_2^9".
  std::string title;
  std::optional<Multispread> multispread;
  std::optional<MultifoldPartition> partition;
};

/// "X1" .. "X4", "q3-m5-l20-mu4", "q3-m5-l12-mu5", "q2-m7-l9-mu3", "q2-m9-partition",
/// "q2-m9-l13-mu2", "q2-m9-l12-mu3".
std::vector<std::string> catalog_names();

/// Builds and verifies one entry (cached). Throws UnknownCatalogEntry.
const CatalogInstance& catalog_entry(const std::string& name);

std::vector<CatalogInstance> appendix_catalog();

/// Expected parameters of each entry, used by `ms catalog verify`.
struct CatalogExpectation {
  std::string name;
  MultispreadParams params;  // n = 0 for partitions
  std::int64_t nu = 0;       // partitions only
  std::vector<std::pair<int, std::int64_t>> dims;  // (dimension, count)
};

std::vector<CatalogExpectation> catalog_expectations();

/// Checks an entry against its expectation; returns an empty string when it
/// matches, else a description of the mismatch.
std::string check_catalog_entry(const CatalogExpectation& expected);

}  // namespace mspread
