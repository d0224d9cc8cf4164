#include "otf/json_io.hpp"

#include "otf/errors.hpp"

namespace otf {

namespace {

Json floats(const std::vector<HPFloat>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

std::vector<HPFloat> floats_from(const Json& a) {
  std::vector<HPFloat> out;
  for (const auto& x : a) out.emplace_back(std::string_view{x.get_ref<const std::string&>()});
  return out;
}

Json doubles(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

void to_json(Json& j, const IntPoly& p) {
  Json c = Json::array();
  for (const auto& x : p.coeffs()) c.push_back(x.str());
  j = Json{{"coeffs", c}};
}

void from_json(const Json& j, IntPoly& p) {
  std::vector<BigInt> c;
  for (const auto& x : j.at("coeffs")) {
    try {
      c.emplace_back(x.get<std::string>());
    } catch (const std::runtime_error&) {
      throw DomainError("bad integer coefficient " + x.dump());
    }
  }
  p = IntPoly(std::move(c));
}

void to_json(Json& j, const RootEnclosure& e) {
  j = Json{{"poly", e.poly},
           {"lo", to_fraction_string(e.lo)},
           {"hi", to_fraction_string(e.hi)},
           {"value", e.value.str()},
           {"exact", e.exact}};
}

RootEnclosure enclosure_from_json(const Json& j) {
  RootEnclosure e;
  e.poly = j.at("poly").get<IntPoly>();
  e.lo = parse_fraction(j.at("lo").get<std::string>());
  e.hi = parse_fraction(j.at("hi").get<std::string>());
  e.value = HPFloat(std::string_view{j.at("value").get_ref<const std::string&>()});
  e.exact = j.at("exact").get<bool>();
  return e;
}

void to_json(Json& j, const Quadrature& q) {
  j = Json{{"nodes", floats(q.nodes)}, {"weights", floats(q.weights)}};
}

Quadrature quadrature_from_json(const Json& j) {
  return {floats_from(j.at("nodes")), floats_from(j.at("weights"))};
}

void to_json(Json& j, const ThresholdResult& r) {
  j = Json{{"m", r.m},
           {"n", r.n},
           {"r_value", r.r_value.str()},
           {"exponents", r.exponents},
           {"alphas", floats(r.alphas)},
           {"defining_poly", r.defining_poly},
           {"enclosure", r.enclosure},
           {"configuration", r.configuration.entries},
           {"derivation", to_string(r.derivation)},
           {"precision_bits", r.precision_bits},
           {"configurations_tried", r.configurations_tried},
           {"flagged", r.flagged}};
}

void from_json(const Json& j, ThresholdResult& r) {
  r.precision_bits = j.at("precision_bits").get<unsigned>();
  PrecisionGuard guard(r.precision_bits);
  r.m = j.at("m").get<int>();
  r.n = j.at("n").get<int>();
  r.r_value = HPFloat(std::string_view{j.at("r_value").get_ref<const std::string&>()});
  r.exponents = j.at("exponents").get<std::vector<long long>>();
  r.alphas = floats_from(j.at("alphas"));
  r.defining_poly = j.at("defining_poly").get<IntPoly>();
  r.enclosure = enclosure_from_json(j.at("enclosure"));
  r.configuration.entries = j.at("configuration").get<std::vector<int>>();
  r.derivation = derivation_from_string(j.at("derivation").get<std::string>());
  r.configurations_tried = j.at("configurations_tried").get<int>();
  r.flagged = j.at("flagged").get<bool>();
  if (r.alphas.size() != r.exponents.size()) throw DomainError("alphas and exponents differ in length");
}

void to_json(Json& j, const ThresholdBounds& b) {
  j = Json{{"lower", b.lower.str()}, {"upper", b.upper.str()}};
}

void to_json(Json& j, const OrderReport& r) {
  j = Json{{"pass", r.pass},
           {"residuals", floats(r.residuals)},
           {"first_failure", r.first_failure},
           {"tolerance", r.tolerance}};
}

void to_json(Json& j, const MonotonicReport& r) {
  j = Json{{"pass", r.pass},
           {"offending", r.offending},
           {"offending_values", floats(r.offending_values)},
           {"max_exponent", r.max_exponent},
           {"degree_ok", r.degree_ok}};
}

void to_json(Json& j, const PositivityReport& r) {
  j = Json{{"pass", r.preserved},
           {"h", r.h},
           {"min_component", r.min_component},
           {"steps", r.steps},
           {"trials", r.trials},
           {"violation_h", r.violation_h},
           {"bound_active", r.bound_active},
           {"violation_min", r.violation_min},
           {"counterexample", doubles(r.counterexample)}};
}

void to_json(Json& j, const ContractivityReport& r) {
  j = Json{{"pass", r.contractive},
           {"h", r.h},
           {"rho", r.rho},
           {"max_gain", r.max_gain},
           {"samples", r.samples},
           {"violation_h", r.violation_h},
           {"violation_gain", r.violation_gain}};
}

void to_json(Json& j, const FarkasReport& r) {
  j = Json{{"pass", r.negative == 0},
           {"R", r.R.str()},
           {"trials", r.trials},
           {"negative", r.negative},
           {"min_integral", r.min_integral.str()},
           {"counterexample", r.counterexample ? Json(*r.counterexample) : Json(nullptr)}};
}

}  // namespace otf
