#include "otf/table.hpp"

#include <omp.h>

#include <chrono>
#include <map>
#include <sstream>

#include "otf/errors.hpp"

namespace otf {

TableCell compute_cell(int m, int n, const ComputeOptions& opts) {
  TableCell cell;
  cell.m = m;
  cell.n = n;
  if (cell.undefined()) return cell;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    cell.result = compute_threshold(m, n, opts);
  } catch (const DomainError& e) {
    cell.error = e.what();
    cell.failure_code = 2;
  } catch (const std::exception& e) {
    cell.error = e.what();
    cell.failure_code = 3;
  }
  cell.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return cell;
}

std::vector<TableCell> compute_table_serial(const std::vector<int>& ms, const std::vector<int>& ns,
                                            const TableOptions& opts) {
  std::vector<TableCell> out;
  out.reserve(ms.size() * ns.size());
  // Last accepted value per n, keyed by the m it came from.
  std::map<int, std::pair<int, HPFloat>> last;
  for (int m : ms) {
    for (int n : ns) {
      ComputeOptions co = opts.compute;
      if (opts.warm_start) {
        auto it = last.find(n);
        if (it != last.end() && it->second.first < m) co.lower_hint = it->second.second;
      }
      TableCell cell = compute_cell(m, n, co);
      if (cell.result) last[n] = {m, cell.result->r_value};
      out.push_back(std::move(cell));
    }
  }
  return out;
}

std::vector<TableCell> compute_table_parallel(const std::vector<int>& ms, const std::vector<int>& ns,
                                              const TableOptions& opts, int threads) {
  const long cols = static_cast<long>(ns.size());
  const long total = static_cast<long>(ms.size()) * cols;
  std::vector<TableCell> out(static_cast<size_t>(total));
  ComputeOptions co = opts.compute;
  co.lower_hint.reset();
  co.jobs = 1;
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (long i = 0; i < total; ++i) {
    out[static_cast<size_t>(i)] =
        compute_cell(ms[static_cast<size_t>(i / cols)], ns[static_cast<size_t>(i % cols)], co);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string item;
  auto to_int = [&](const std::string& s) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw DomainError("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw DomainError("not an integer: '" + s + "'");
    return v;
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw DomainError("empty element in list '" + spec + "'");
    std::vector<std::string> parts;
    std::stringstream is(item);
    std::string part;
    while (std::getline(is, part, ':')) parts.push_back(part);
    if (parts.size() == 1) {
      out.push_back(to_int(parts[0]));
      continue;
    }
    if (parts.size() > 3) throw DomainError("bad range '" + item + "'");
    const int a = to_int(parts[0]);
    const int b = to_int(parts[1]);
    const int s = parts.size() == 3 ? to_int(parts[2]) : 1;
    if (s <= 0) throw DomainError("range step must be positive in '" + item + "'");
    if (b < a) throw DomainError("empty range '" + item + "'");
    for (int v = a; v <= b; v += s) out.push_back(v);
  }
  if (out.empty()) throw DomainError("empty list");
  return out;
}

}  // namespace otf
