#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otf/optimizer.hpp"

namespace otf {

struct TableCell {
  int m = 0;
  int n = 0;
  std::optional<ThresholdResult> result;
  /// Set when the computation threw; the cell renders as "ERR".
  std::string error;
  /// 3 for convergence-type failures, 2 for domain errors, 0 otherwise.
  int failure_code = 0;
  double elapsed_ms = 0;

  /// m < n: the cell is undefined and renders as "--".
  bool undefined() const noexcept { return m < n; }
  bool failed() const noexcept { return !undefined() && !result; }
};

struct TableOptions {
  ComputeOptions compute;
  /// Feed R_{m',n} from the previous row as a lower hint (serial sweep only).
  bool warm_start = true;
};

/// Row-major cells (m outer, n inner). Reference implementation: one cell at
/// a time, in request order.
std::vector<TableCell> compute_table_serial(const std::vector<int>& ms, const std::vector<int>& ns,
                                            const TableOptions& opts = {});

/// Same cells computed by an OpenMP pool of `threads` workers (0 lets OpenMP
/// decide). No warm start, so every cell is independent; the output order
/// and values match the serial sweep.
std::vector<TableCell> compute_table_parallel(const std::vector<int>& ms, const std::vector<int>& ns,
                                              const TableOptions& opts = {}, int threads = 0);

/// Computes one cell, catching the library's errors into the cell.
TableCell compute_cell(int m, int n, const ComputeOptions& opts);

/// "a:b:s", "a:b" (step 1), or a comma list, each element possibly a range.
std::vector<int> parse_int_list(const std::string& spec);

}  // namespace otf
