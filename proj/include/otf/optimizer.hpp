#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otf/exact.hpp"
#include "otf/hpfloat.hpp"
#include "otf/orthopoly.hpp"
#include "otf/spectrum.hpp"

namespace otf {

enum class Derivation { direct, even_reduced, closed_form, brute_force };

std::string to_string(Derivation d);
Derivation derivation_from_string(const std::string& s);

/// Optimal threshold factor R_{m,n} with its stability polynomial
/// Phi(x) = sum alpha_k (1 + x/R)^{exponent_k}.
struct ThresholdResult {
  int m = 0;
  int n = 0;
  /// Ascending; zero-coefficient (missing) exponents are kept.
  std::vector<long long> exponents;
  std::vector<HPFloat> alphas;
  IntPoly defining_poly;
  RootEnclosure enclosure;
  HPFloat r_value;
  PConfiguration configuration;
  Derivation derivation = Derivation::direct;
  unsigned precision_bits = kDefaultPrecisionBits;
  int configurations_tried = 0;
  /// A floor decision was taken on a zero within the near-integer guard at
  /// the highest precision; worth an oracle cross-check.
  bool flagged = false;
};

enum class ConfigOrder { lex, random };

struct ComputeOptions {
  unsigned precision_bits = kDefaultPrecisionBits;
  ConfigOrder order = ConfigOrder::lex;
  std::uint64_t seed = 0;
  /// Configurations evaluated concurrently; 1 runs serially.
  int jobs = 1;
  /// Warm lower bound for R (e.g. R_{m-1,n} in an upward sweep).
  std::optional<HPFloat> lower_hint;
};

ThresholdResult compute_threshold(int m, int n, const ComputeOptions& opts = {});

/// alpha_k = sum_i w_i prod_{j != k} (x_j - l_i) / (x_j - x_k) over the nodes
/// x = (M..., m, m+1), for every node but m+1. Ordered like (M..., m).
std::vector<HPFloat> compute_alphas(const IntegralSpectrum& M, int m, const HPFloat& R,
                                    const Quadrature& quad);

/// Every p-configuration once, starting with (1, ..., 1). The rest follow in
/// lexicographic order, or shuffled with `seed` for ConfigOrder::random.
std::vector<PConfiguration> configuration_list(int p, ConfigOrder order = ConfigOrder::lex,
                                               std::uint64_t seed = 0);

/// Phi_{m+1,2p} = 1 + integral of Phi_{m,2p-1}. Same enclosure and R.
ThresholdResult build_phi_even(const ThresholdResult& odd);

/// Odd n: exponents are p-1 pairs (q, q+1) below a final exponent m.
bool has_pair_structure(const ThresholdResult& r);

struct ThresholdBounds {
  HPFloat lower;
  HPFloat upper;
};

/// Laguerre bounds l_p^{(m-2p+1)} <= R_{m,2p-1} <= l_p^{(m-p)}. Odd n only;
/// throws DomainError for even n.
ThresholdBounds threshold_bounds(int m, int n);

/// Attempts a single configuration; nullopt when it is rejected.
std::optional<ThresholdResult> try_configuration(const PConfiguration& cfg, int m, int n,
                                                 const ComputeOptions& opts);

}  // namespace otf
