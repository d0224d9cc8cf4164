#include "otf/optimizer.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "otf/errors.hpp"
#include "otf/sturm.hpp"

namespace otf {

namespace {

constexpr double kAcceptNegative = -1e-25;
constexpr double kRejectNegative = -1e-10;

enum class Verdict { accept, reject, escalate };

Verdict judge(const std::vector<HPFloat>& alphas) {
  const HPFloat accept(kAcceptNegative);
  const HPFloat reject(kRejectNegative);
  Verdict v = Verdict::accept;
  for (const auto& a : alphas) {
    if (a < reject) return Verdict::reject;
    if (a < accept) v = Verdict::escalate;
  }
  return v;
}

void sort_terms(ThresholdResult& r) {
  std::vector<size_t> idx(r.exponents.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return r.exponents[a] < r.exponents[b]; });
  std::vector<long long> e;
  std::vector<HPFloat> al;
  for (size_t i : idx) {
    e.push_back(r.exponents[i]);
    al.push_back(r.alphas[i]);
  }
  r.exponents = std::move(e);
  r.alphas = std::move(al);
}

ThresholdResult closed_form_first_order(int m, unsigned bits) {
  PrecisionGuard guard(bits);
  ThresholdResult r;
  r.m = m;
  r.n = 1;
  r.exponents = {m};
  r.alphas = {HPFloat(1)};
  r.defining_poly = normalize_sign(polar_h_poly({m}, 1));
  r.enclosure.poly = r.defining_poly;
  r.enclosure.lo = r.enclosure.hi = Rational(m);
  r.enclosure.exact = true;
  r.enclosure.value = HPFloat(m);
  r.r_value = r.enclosure.value;
  r.derivation = Derivation::closed_form;
  r.precision_bits = bits;
  return r;
}

// One attempt at a fixed precision. Sets `escalate` when an alpha falls in
// the band that needs more bits to decide.
std::optional<ThresholdResult> attempt(const PConfiguration& cfg, int m, int n,
                                       const ComputeOptions& opts, unsigned bits, bool& escalate) {
  PrecisionGuard guard(bits);
  const int p = cfg.p();
  SpectrumSearchOptions so;
  if (opts.lower_hint) so.lower_hint = HPFloat(opts.lower_hint->to_rational());
  const OptimalSpectrum os = optimal_spectrum(cfg, m, so);

  std::vector<IntegralSpectrum> candidates{os.spectrum};
  if (os.alternate) candidates.push_back(*os.alternate);

  const HPFloat widen = epsilon_for(bits - 20) * max(HPFloat(1), os.r_hi);
  const Rational lo = (os.r_lo - widen).to_rational();
  const Rational hi = (os.r_hi + widen).to_rational();

  for (const auto& M : candidates) {
    if (std::any_of(M.values.begin(), M.values.end(), [&](long long v) { return v >= m; })) {
      continue;
    }
    std::vector<long long> nodes = M.values;
    nodes.push_back(m);
    RootEnclosure enc;
    try {
      enc = refine_root(nodes, lo, hi, bits);
    } catch (const BracketError&) {
      continue;
    } catch (const AmbiguityError&) {
      continue;
    }
    const Quadrature quad =
        gauss_quadrature(charlier_recurrence(enc.value, p), p, HPFloat(1));
    std::vector<HPFloat> alphas = compute_alphas(M, m, enc.value, quad);
    const Verdict v = judge(alphas);
    if (v == Verdict::escalate) {
      escalate = true;
      return std::nullopt;
    }
    if (v == Verdict::reject) continue;

    ThresholdResult r;
    r.m = m;
    r.n = n;
    r.exponents = nodes;
    r.alphas = std::move(alphas);
    r.defining_poly = enc.poly;
    r.r_value = enc.value;
    r.enclosure = std::move(enc);
    r.configuration = cfg;
    r.derivation = Derivation::direct;
    r.precision_bits = bits;
    r.flagged = os.near_integer;
    sort_terms(r);
    return r;
  }
  return std::nullopt;
}

struct Outcome {
  std::optional<ThresholdResult> result;
  bool convergence_failure = false;
  std::string message;
};

Outcome run_configuration(const PConfiguration& cfg, int m, int n, const ComputeOptions& opts) {
  Outcome out;
  try {
    out.result = try_configuration(cfg, m, n, opts);
  } catch (const ConvergenceError& e) {
    out.convergence_failure = true;
    out.message = e.what();
  } catch (const OutOfBracketError&) {
  } catch (const DegeneracyError&) {
  } catch (const BracketError&) {
  } catch (const AmbiguityError&) {
  }
  return out;
}

}  // namespace

std::string to_string(Derivation d) {
  switch (d) {
    case Derivation::direct: return "direct";
    case Derivation::even_reduced: return "even_reduced";
    case Derivation::closed_form: return "closed_form";
    case Derivation::brute_force: return "brute_force";
  }
  return "direct";
}

Derivation derivation_from_string(const std::string& s) {
  if (s == "direct") return Derivation::direct;
  if (s == "even_reduced") return Derivation::even_reduced;
  if (s == "closed_form") return Derivation::closed_form;
  if (s == "brute_force") return Derivation::brute_force;
  throw DomainError("unknown derivation '" + s + "'");
}

std::vector<HPFloat> compute_alphas(const IntegralSpectrum& M, int m, const HPFloat& R,
                                    const Quadrature& quad) {
  (void)R;
  std::vector<HPFloat> x;
  for (long long v : M.values) x.emplace_back(v);
  x.emplace_back(m);
  x.emplace_back(m + 1);
  const size_t count = x.size() - 1;
  std::vector<HPFloat> alphas;
  alphas.reserve(count);
  for (size_t k = 0; k < count; ++k) {
    HPFloat a(0);
    for (size_t i = 0; i < quad.nodes.size(); ++i) {
      HPFloat term = quad.weights[i];
      for (size_t j = 0; j < x.size(); ++j) {
        if (j == k) continue;
        term *= (x[j] - quad.nodes[i]) / (x[j] - x[k]);
      }
      a += term;
    }
    alphas.push_back(std::move(a));
  }
  return alphas;
}

std::vector<PConfiguration> configuration_list(int p, ConfigOrder order, std::uint64_t seed) {
  if (p < 1) throw DomainError("p must be at least 1");
  std::vector<PConfiguration> out;
  PConfiguration c;
  c.entries.assign(static_cast<size_t>(p - 1), 1);
  // Odometer over n_k in 1..p-k+1, last entry fastest.
  for (;;) {
    out.push_back(c);
    int k = p - 2;
    while (k >= 0) {
      auto& e = c.entries[static_cast<size_t>(k)];
      if (e < p - k) {
        ++e;
        break;
      }
      e = 1;
      --k;
    }
    if (k < 0) break;
  }
  if (order == ConfigOrder::random && out.size() > 2) {
    std::mt19937_64 rng(seed);
    std::shuffle(out.begin() + 1, out.end(), rng);
  }
  return out;
}

std::optional<ThresholdResult> try_configuration(const PConfiguration& cfg, int m, int n,
                                                 const ComputeOptions& opts) {
  unsigned bits = std::max(opts.precision_bits, 64u);
  for (;;) {
    bool escalate = false;
    auto r = attempt(cfg, m, n, opts, bits, escalate);
    if (!escalate) return r;
    if (bits >= kMaxPrecisionBits) return std::nullopt;
    bits = std::min(2 * bits, kMaxPrecisionBits);
  }
}

ThresholdResult build_phi_even(const ThresholdResult& odd) {
  if (odd.n % 2 == 0) throw DomainError("build_phi_even needs an odd-order result");
  PrecisionGuard guard(odd.precision_bits);
  ThresholdResult r = odd;
  r.m = odd.m + 1;
  r.n = odd.n + 1;
  r.derivation = Derivation::even_reduced;
  r.exponents.clear();
  r.alphas.clear();
  HPFloat rest(1);
  r.exponents.push_back(0);
  r.alphas.emplace_back(0);
  for (size_t k = 0; k < odd.exponents.size(); ++k) {
    const long long e = odd.exponents[k] + 1;
    HPFloat c = odd.alphas[k] * odd.r_value / HPFloat(e);
    rest -= c;
    r.exponents.push_back(e);
    r.alphas.push_back(std::move(c));
  }
  r.alphas[0] = rest;
  return r;
}

ThresholdBounds threshold_bounds(int m, int n) {
  if (n < 1) throw DomainError("order n must be at least 1");
  if (m < n) throw DomainError("degree m must be at least the order n");
  if (n % 2 == 0) {
    throw DomainError("bounds are stated for odd n; use R_{m,n} = R_{m-1,n-1} for even n");
  }
  const int p = (n + 1) / 2;
  return {laguerre_smallest_zero(p, HPFloat(m - 2 * p + 1)), laguerre_smallest_zero(p, HPFloat(m - p))};
}

bool has_pair_structure(const ThresholdResult& r) {
  if (r.n % 2 == 0) return false;
  const size_t count = r.exponents.size();
  if (count != static_cast<size_t>(r.n)) return false;
  if (r.exponents.back() != r.m) return false;
  for (size_t i = 0; i + 1 < count; i += 2) {
    if (r.exponents[i + 1] != r.exponents[i] + 1) return false;
    if (r.exponents[i] < 0) return false;
  }
  for (size_t i = 1; i < count; ++i) {
    if (r.exponents[i] <= r.exponents[i - 1]) return false;
  }
  return true;
}

ThresholdResult compute_threshold(int m, int n, const ComputeOptions& opts) {
  if (n < 1) throw DomainError("order n must be at least 1");
  if (m < n) throw DomainError("degree m must be at least the order n");
  const unsigned bits = std::max(opts.precision_bits, 64u);
  if (n == 1) return closed_form_first_order(m, bits);
  if (n % 2 == 0) {
    ComputeOptions sub = opts;
    sub.lower_hint.reset();
    return build_phi_even(compute_threshold(m - 1, n - 1, sub));
  }

  const int p = (n + 1) / 2;
  const auto configs = configuration_list(p, opts.order, opts.seed);
  bool convergence_failure = false;
  std::string last_message;
  const int jobs = std::max(opts.jobs, 1);
  int tried = 0;

  if (jobs == 1) {
    for (const auto& cfg : configs) {
      ++tried;
      Outcome o = run_configuration(cfg, m, n, opts);
      if (o.result) {
        o.result->configurations_tried = tried;
        return *o.result;
      }
      if (o.convergence_failure) {
        convergence_failure = true;
        last_message = o.message;
      }
    }
  } else {
    const size_t batch = static_cast<size_t>(jobs);
    for (size_t start = 0; start < configs.size(); start += batch) {
      const size_t end = std::min(configs.size(), start + batch);
      std::vector<Outcome> outs(end - start);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
      for (long i = static_cast<long>(start); i < static_cast<long>(end); ++i) {
        outs[static_cast<size_t>(i) - start] =
            run_configuration(configs[static_cast<size_t>(i)], m, n, opts);
      }
      for (size_t i = 0; i < outs.size(); ++i) {
        ++tried;
        if (outs[i].result) {
          outs[i].result->configurations_tried = tried;
          return *outs[i].result;
        }
        if (outs[i].convergence_failure) {
          convergence_failure = true;
          last_message = outs[i].message;
        }
      }
    }
  }
  if (convergence_failure) {
    throw ConvergenceError("no configuration accepted for R_{" + std::to_string(m) + "," +
                               std::to_string(n) + "}; last failure: " + last_message,
                           0.0, 0.0);
  }
  throw CompletenessError("every configuration was rejected for R_{" + std::to_string(m) + "," +
                          std::to_string(n) + "}");
}

}  // namespace otf
