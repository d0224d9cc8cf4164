// otf: optimal threshold factors from the command line.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "otf/errors.hpp"
#include "otf/json_io.hpp"
#include "otf/optimizer.hpp"
#include "otf/oracle.hpp"
#include "otf/render.hpp"
#include "otf/table.hpp"
#include "otf/validate.hpp"

namespace {

using namespace otf;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr double kAgreement = 1e-9;

struct Flags {
  unsigned precision_bits = kDefaultPrecisionBits;
  std::string config_order = "lex";
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string format = "text";
  bool exact = false;
  int digits = -1;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

ComputeOptions compute_options(const Flags& f) {
  ComputeOptions o;
  o.precision_bits = f.precision_bits;
  o.order = f.config_order == "random" ? ConfigOrder::random : ConfigOrder::lex;
  o.seed = f.seed;
  o.jobs = f.jobs;
  return o;
}

Json flags_json(const Flags& f) {
  return Json{{"precision_bits", f.precision_bits}, {"config_order", f.config_order},
              {"seed", f.seed},                     {"jobs", f.jobs},
              {"exact", f.exact},                   {"digits", f.digits}};
}

std::string join(const std::vector<long long>& v, const char* sep = " ") {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

std::string config_str(const PConfiguration& c) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < c.entries.size(); ++i) os << (i ? "," : "") << c.entries[i];
  return os.str() + ")";
}

Json record(const std::string& command, Json request, const Flags& f, double ms) {
  request.update(flags_json(f));
  return Json{{"command", command}, {"request", std::move(request)}, {"elapsed_ms", ms}};
}

Json result_record(const std::string& command, int m, int n, const ThresholdResult& r,
                   const Flags& f, double ms, int digits) {
  Json j = record(command, Json{{"m", m}, {"n", n}}, f, ms);
  j["result"] = r;
  j["r_decimal"] = render_certified(r.enclosure, digits);
  j["precision_bits"] = r.precision_bits;
  j["configuration"] = r.configuration.entries;
  return j;
}

void print_result_text(const ThresholdResult& r, const Flags& f, double ms, int digits) {
  std::cout << "R_{" << r.m << "," << r.n << "} = " << render_certified(r.enclosure, digits) << "\n";
  std::cout << "exponents: " << join(r.exponents) << "\n";
  std::cout << "alphas:";
  for (const auto& a : r.alphas) std::cout << " " << a.str(std::max(digits, 6));
  std::cout << "\n";
  std::cout << "derivation: " << to_string(r.derivation);
  if (r.derivation == Derivation::direct) {
    std::cout << ", configuration " << config_str(r.configuration) << " (" << r.configurations_tried
              << " tried)";
  }
  std::cout << ", " << r.precision_bits << " bits, " << std::fixed << std::setprecision(3) << ms
            << " ms\n";
  std::cout.unsetf(std::ios::floatfield);
  if (r.flagged) std::cout << "note: a floor decision sat within the near-integer guard\n";
  if (f.exact) {
    std::cout << "defining polynomial: " << r.defining_poly.str("R") << "\n";
    if (r.enclosure.exact) {
      std::cout << "root: " << to_fraction_string(r.enclosure.lo) << " (exact)\n";
    } else {
      std::cout << "enclosure: [" << to_fraction_string(r.enclosure.lo) << ", "
                << to_fraction_string(r.enclosure.hi) << "]\n";
    }
  }
}

void check_order_args(int m, int n) {
  if (n < 1) throw DomainError("order n must be at least 1");
  if (m < n) throw DomainError("degree m must be at least the order n (got m=" + std::to_string(m) +
                               ", n=" + std::to_string(n) + ")");
}

int cmd_compute(int m, int n, const Flags& f) {
  check_order_args(m, n);
  const int digits = f.digits >= 0 ? f.digits : 20;
  const auto t0 = std::chrono::steady_clock::now();
  const ThresholdResult r = compute_threshold(m, n, compute_options(f));
  const double ms = ms_since(t0);
  if (f.format == "json") {
    std::cout << result_record("compute", m, n, r, f, ms, digits).dump(2) << "\n";
  } else if (f.format == "csv") {
    std::cout << "m,n,r_value\n" << m << "," << n << "," << render_certified(r.enclosure, digits) << "\n";
  } else {
    print_result_text(r, f, ms, digits);
  }
  return 0;
}

int cmd_oracle(int m, int n, const Flags& f) {
  check_order_args(m, n);
  const int digits = f.digits >= 0 ? f.digits : 20;
  OracleOptions oo;
  oo.precision_bits = f.precision_bits;
  oo.jobs = f.jobs;
  const auto t0 = std::chrono::steady_clock::now();
  const ThresholdResult r =
      f.jobs > 1 ? brute_force_threshold_parallel(m, n, oo) : brute_force_threshold(m, n, oo);
  const double ms = ms_since(t0);
  if (f.format == "json") {
    std::cout << result_record("oracle", m, n, r, f, ms, digits).dump(2) << "\n";
  } else if (f.format == "csv") {
    std::cout << "m,n,r_value\n" << m << "," << n << "," << render_certified(r.enclosure, digits) << "\n";
  } else {
    print_result_text(r, f, ms, digits);
  }
  return 0;
}

int cmd_check(int m, int n, const Flags& f) {
  check_order_args(m, n);
  const int digits = f.digits >= 0 ? f.digits : 20;
  OracleOptions oo;
  oo.precision_bits = f.precision_bits;
  oo.jobs = f.jobs;
  const auto t0 = std::chrono::steady_clock::now();
  const ThresholdResult brute =
      f.jobs > 1 ? brute_force_threshold_parallel(m, n, oo) : brute_force_threshold(m, n, oo);
  const ThresholdResult fast = compute_threshold(m, n, compute_options(f));
  const double ms = ms_since(t0);
  PrecisionGuard guard(f.precision_bits);
  const HPFloat diff = abs(fast.r_value - brute.r_value);
  const bool agree = diff <= HPFloat(kAgreement);
  if (f.format == "json") {
    Json j = record("check", Json{{"m", m}, {"n", n}}, f, ms);
    j["fast"] = fast;
    j["oracle"] = brute;
    j["difference"] = diff.str();
    j["agree"] = agree;
    std::cout << j.dump(2) << "\n";
  } else if (f.format == "csv") {
    std::cout << "m,n,fast,oracle,difference\n"
              << m << "," << n << "," << render_certified(fast.enclosure, digits) << ","
              << render_certified(brute.enclosure, digits) << "," << diff.str(6) << "\n";
  } else {
    std::cout << "fast:   " << render_certified(fast.enclosure, digits) << "  exponents "
              << join(fast.exponents) << "\n";
    std::cout << "oracle: " << render_certified(brute.enclosure, digits) << "  exponents "
              << join(brute.exponents) << "\n";
    std::cout << "difference: " << diff.str(6) << (agree ? " (agree)" : " (DISAGREE)") << "\n";
  }
  if (!agree) {
    std::cerr << "otf: fast path and brute force differ by " << diff.str(6) << "\n";
    return kExitNumeric;
  }
  return 0;
}

int cmd_bounds(int m, int n, const Flags& f) {
  check_order_args(m, n);
  const int digits = f.digits >= 0 ? f.digits : 20;
  PrecisionGuard guard(f.precision_bits);
  const auto t0 = std::chrono::steady_clock::now();
  const ThresholdBounds b = threshold_bounds(m, n);
  const double ms = ms_since(t0);
  const int p = (n + 1) / 2;
  const std::string lo = truncate_decimal(b.lower.to_rational(), digits);
  const std::string hi = truncate_decimal(b.upper.to_rational(), digits);
  if (f.format == "json") {
    Json j = record("bounds", Json{{"m", m}, {"n", n}}, f, ms);
    j["bounds"] = b;
    j["precision_bits"] = f.precision_bits;
    std::cout << j.dump(2) << "\n";
  } else if (f.format == "csv") {
    std::cout << "m,n,lower,upper\n" << m << "," << n << "," << lo << "," << hi << "\n";
  } else {
    std::cout << "l_" << p << "^(" << m - 2 * p + 1 << ") = " << lo << "  <=  R_{" << m << "," << n
              << "}  <=  l_" << p << "^(" << m - p << ") = " << hi << "\n";
  }
  return 0;
}

std::string cell_text(const TableCell& c, int digits) {
  if (c.undefined()) return "--";
  if (!c.result) return "ERR";
  return render_certified(c.result->enclosure, digits);
}

int cmd_table(const std::string& mspec, const std::string& nspec, const Flags& f) {
  const std::vector<int> ms = parse_int_list(mspec);
  const std::vector<int> ns = parse_int_list(nspec);
  for (int n : ns) {
    if (n < 1) throw DomainError("order n must be at least 1");
  }
  for (int m : ms) {
    if (m < 1) throw DomainError("degree m must be at least 1");
  }
  const int digits = f.digits >= 0 ? f.digits : 4;
  TableOptions to;
  to.compute = compute_options(f);
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<TableCell> cells =
      f.jobs > 1 ? compute_table_parallel(ms, ns, to, f.jobs) : compute_table_serial(ms, ns, to);
  const double ms_total = ms_since(t0);

  int code = 0;
  for (const auto& c : cells) {
    if (!c.failed()) continue;
    std::cerr << "otf: R_{" << c.m << "," << c.n << "} failed: " << c.error << "\n";
    code = std::max(code, c.failure_code == 2 ? kExitUsage : kExitNumeric);
  }

  const size_t cols = ns.size();
  if (f.format == "json") {
    Json j = record("table", Json{{"m", mspec}, {"n", nspec}}, f, ms_total);
    j["ms"] = ms;
    j["ns"] = ns;
    Json rows = Json::array();
    Json errors = Json::array();
    Json results = Json::array();
    for (size_t r = 0; r < ms.size(); ++r) {
      Json row = Json::array();
      for (size_t c = 0; c < cols; ++c) {
        const TableCell& cell = cells[r * cols + c];
        row.push_back(cell_text(cell, digits));
        if (cell.failed()) errors.push_back(Json{{"m", cell.m}, {"n", cell.n}, {"message", cell.error}});
        if (cell.result && f.exact) results.push_back(*cell.result);
      }
      rows.push_back(row);
    }
    j["cells"] = rows;
    j["errors"] = errors;
    if (f.exact) j["results"] = results;
    std::cout << j.dump(2) << "\n";
  } else if (f.format == "csv") {
    std::cout << "m";
    for (int n : ns) std::cout << "," << n;
    std::cout << "\n";
    for (size_t r = 0; r < ms.size(); ++r) {
      std::cout << ms[r];
      for (size_t c = 0; c < cols; ++c) std::cout << "," << cell_text(cells[r * cols + c], digits);
      std::cout << "\n";
    }
  } else {
    const int width = digits + 6;
    std::cout << std::setw(6) << "m";
    for (int n : ns) std::cout << std::setw(width) << ("n=" + std::to_string(n));
    std::cout << "\n";
    for (size_t r = 0; r < ms.size(); ++r) {
      std::cout << std::setw(6) << ms[r];
      for (size_t c = 0; c < cols; ++c) std::cout << std::setw(width) << cell_text(cells[r * cols + c], digits);
      std::cout << "\n";
    }
  }
  return code;
}

struct DemoArgs {
  int steps = 100;
  int trials = 50;
  int dimension = 20;
  int farkas_trials = 500;
};

int cmd_demo(int m, int n, const DemoArgs& d, const Flags& f) {
  check_order_args(m, n);
  const int digits = f.digits >= 0 ? f.digits : 10;
  const auto t0 = std::chrono::steady_clock::now();
  const ThresholdResult r = compute_threshold(m, n, compute_options(f));
  PrecisionGuard guard(r.precision_bits);
  const StabilityPolynomial phi = StabilityPolynomial::from_result(r);
  const OrderReport order = check_order(phi, n);
  const MonotonicReport mono = check_abs_monotonic(phi, m);
  PositivityOptions po;
  po.steps = d.steps;
  po.trials = d.trials;
  po.seed = f.seed;
  const PositivityReport pos = positivity_demo(phi, MetzlerSystem::upwind(d.dimension, 1.0), po);
  const ContractivityReport con = contractivity_demo(phi, 1.0, 400, f.seed);

  const bool odd = n % 2 == 1 && r.exponents.size() == static_cast<size_t>(n);
  std::optional<FarkasReport> below;
  std::optional<HPFloat> witness;
  const HPFloat eps(1e-3);
  if (odd) {
    below = farkas_check(m, n, r.r_value - eps, d.farkas_trials, f.seed);
    witness = charlier_integral(farkas_witness(r), r.r_value + eps);
  }
  const double ms = ms_since(t0);
  const bool hard_pass = order.pass && mono.pass && pos.preserved && con.contractive &&
                         (!below || below->negative == 0) && (!witness || witness->sign() < 0);

  if (f.format == "json") {
    Json j = result_record("demo", m, n, r, f, ms, digits);
    j["request"]["steps"] = d.steps;
    j["request"]["trials"] = d.trials;
    j["request"]["dimension"] = d.dimension;
    j["order"] = order;
    j["monotonic"] = mono;
    j["positivity"] = pos;
    j["contractivity"] = con;
    if (below) {
      j["farkas"] = Json{{"below", *below},
                         {"witness_R", (r.r_value + eps).str()},
                         {"witness_integral", witness->str()},
                         {"witness_negative", witness->sign() < 0}};
    }
    j["pass"] = hard_pass;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "R_{" << m << "," << n << "} = " << render_certified(r.enclosure, digits) << "\n";
    double worst = 0;
    for (const auto& res : order.residuals) worst = std::max(worst, std::abs(res.to_double()));
    std::cout << "order conditions l=0.." << n << ": " << (order.pass ? "pass" : "FAIL")
              << " (max residual " << worst << ")\n";
    std::cout << "absolute monotonicity: " << (mono.pass ? "pass" : "FAIL");
    if (!mono.offending.empty()) std::cout << " (negative at exponents " << join(mono.offending) << ")";
    std::cout << "\n";
    std::cout << "positivity, h = R/alpha = " << pos.h << ": " << (pos.preserved ? "pass" : "FAIL")
              << " (min component " << pos.min_component << ", " << pos.trials << " starts x "
              << pos.steps << " steps)\n";
    std::cout << "positivity, h = " << pos.violation_h << ": "
              << (pos.bound_active ? "negative component found" : "no negative component found")
              << " (min " << pos.violation_min << ")\n";
    std::cout << "contractivity (normal, Euclidean), h = R/rho: " << (con.contractive ? "pass" : "FAIL")
              << " (max gain " << con.max_gain << "); at h = " << con.violation_h << " max gain "
              << con.violation_gain << "\n";
    if (below) {
      std::cout << "Farkas at R - 1e-3: " << below->trials << " non-negative polynomials, "
                << below->negative << " negative integrals (min " << below->min_integral.str(6)
                << ")\n";
      std::cout << "witness at R + 1e-3: integral " << witness->str(6)
                << (witness->sign() < 0 ? " (negative)" : " (NOT negative)") << "\n";
    }
  }
  return hard_pass ? 0 : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal threshold factors R_{m,n} of absolutely monotonic stability polynomials"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--precision-bits", f.precision_bits, "Working precision in bits")
      ->check(CLI::Range(64u, kMaxPrecisionBits))
      ->capture_default_str();
  app.add_option("--config-order", f.config_order, "Configuration order after (1,...,1)")
      ->check(CLI::IsMember({"lex", "random"}))
      ->capture_default_str();
  app.add_option("--seed", f.seed, "Seed for randomized modes")->capture_default_str();
  app.add_option("--jobs", f.jobs, "Parallel cells / configurations")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  app.add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_flag("--exact", f.exact, "Include the defining polynomial and rational enclosure");
  app.add_option("--digits", f.digits, "Fractional digits to print (truncated)")->check(CLI::Range(0, 1000));

  int m = 0, n = 0;
  auto add_mn = [&](CLI::App* sub) {
    sub->add_option("m", m, "Degree")->required();
    sub->add_option("n", n, "Order")->required();
  };
  auto* compute = app.add_subcommand("compute", "Compute R_{m,n}");
  add_mn(compute);
  auto* oracle = app.add_subcommand("oracle", "Brute-force R_{m,n} (small m, n only)");
  add_mn(oracle);
  auto* check = app.add_subcommand("check", "Fast path and brute force side by side");
  add_mn(check);
  auto* bounds = app.add_subcommand("bounds", "Laguerre bounds for odd n");
  add_mn(bounds);

  std::string mspec, nspec;
  auto* table = app.add_subcommand("table", "Sweep R_{m,n} over lists of m and n");
  table->add_option("--m", mspec, "m values: a:b:s, a:b or a,b,c")->required();
  table->add_option("--n", nspec, "n values: list or range")->required();

  DemoArgs demo_args;
  auto* demo = app.add_subcommand("demo", "Validation report and positivity demo for Phi_{m,n}");
  add_mn(demo);
  demo->add_option("--steps", demo_args.steps, "Time steps")->check(CLI::Range(1, 100000));
  demo->add_option("--trials", demo_args.trials, "Random starting vectors")->check(CLI::Range(1, 100000));
  demo->add_option("--dimension", demo_args.dimension, "Size of the upwind system")->check(CLI::Range(1, 2000));
  demo->add_option("--farkas-trials", demo_args.farkas_trials, "Random non-negative polynomials")
      ->check(CLI::Range(0, 1000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*compute) return cmd_compute(m, n, f);
    if (*oracle) return cmd_oracle(m, n, f);
    if (*check) return cmd_check(m, n, f);
    if (*bounds) return cmd_bounds(m, n, f);
    if (*table) return cmd_table(mspec, nspec, f);
    if (*demo) return cmd_demo(m, n, demo_args, f);
  } catch (const DomainError& e) {
    std::cerr << "otf: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RefusalError& e) {
    std::cerr << "otf: refused: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "otf: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
