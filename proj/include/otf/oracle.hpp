#pragma once

#include "otf/optimizer.hpp"

namespace otf {

inline constexpr int kOracleMaxM = 14;
inline constexpr int kOracleMaxN = 7;

struct OracleOptions {
  unsigned precision_bits = kDefaultPrecisionBits;
  /// Threads for the parallel variant; 0 lets OpenMP decide.
  int jobs = 0;
  /// Refuse instances above kOracleMaxM / kOracleMaxN.
  bool enforce_cap = true;
};

/// Kraaijevanger-style enumeration of every n-subset of {0..m}: isolate the
/// positive zeros of h(nodes; R) exactly, certify the sign of each weight
/// exactly, and keep the largest feasible zero. Ties go to the
/// lexicographically smallest node list.
ThresholdResult brute_force_threshold(int m, int n, const OracleOptions& opts = {});

/// Same computation with the subsets split across OpenMP threads.
ThresholdResult brute_force_threshold_parallel(int m, int n, const OracleOptions& opts = {});

}  // namespace otf
