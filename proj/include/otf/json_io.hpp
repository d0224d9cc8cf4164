#pragma once

#include <json.hpp>

#include "otf/exact.hpp"
#include "otf/optimizer.hpp"
#include "otf/orthopoly.hpp"
#include "otf/spectrum.hpp"
#include "otf/validate.hpp"

namespace otf {

using Json = nlohmann::json;

// Lossless: BigInts and HPFloats travel as decimal strings, enclosure
// endpoints as "p/q". HPFloats are re-read at the record's precision_bits.

void to_json(Json& j, const IntPoly& p);
void from_json(const Json& j, IntPoly& p);

void to_json(Json& j, const RootEnclosure& e);
void to_json(Json& j, const Quadrature& q);
void to_json(Json& j, const ThresholdResult& r);
void from_json(const Json& j, ThresholdResult& r);

void to_json(Json& j, const ThresholdBounds& b);
void to_json(Json& j, const OrderReport& r);
void to_json(Json& j, const MonotonicReport& r);
void to_json(Json& j, const PositivityReport& r);
void to_json(Json& j, const ContractivityReport& r);
void to_json(Json& j, const FarkasReport& r);

/// Reads an enclosure; HPFloat fields take the calling thread's precision.
RootEnclosure enclosure_from_json(const Json& j);
Quadrature quadrature_from_json(const Json& j);

}  // namespace otf
