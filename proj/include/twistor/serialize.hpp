#pragma once

// JSON and CSV forms of the library's values, and the complex literal grammar
// used on the command line: "a+bi", "a-bi", "a", "bi", "i", "inf".

#include <string>
#include <string_view>

#include <json.hpp>

#include "twistor/incidence.hpp"

namespace twistor {

/// Throws Error(kParse) on anything outside the grammar or non-finite parts.
SpherePoint parse_complex(std::string_view text);
/// Shortest literal that parse_complex reads back exactly.
std::string format_complex(const SpherePoint& p);

/// -0 becomes 0; non-finite values become the strings "inf", "-inf", "nan".
nlohmann::json json_number(double v);
nlohmann::json to_json(Complex z);
/// The homogeneous pair [{re, im}, {re, im}].
nlohmann::json to_json(const SpherePoint& p);
/// {re, im}, or "inf" at infinity.
nlohmann::json affine_json(const SpherePoint& p);
nlohmann::json to_json(const SpacePoint& p);
nlohmann::json to_json(const LineParams& p);
nlohmann::json to_json(const ReducibleLimit& limit);
nlohmann::json to_json(const FiberZeroPoint& fp);
nlohmann::json to_json(const SolverTrace& trace);
nlohmann::json to_json(const GroupElement& g);
nlohmann::json to_json(const JacobianValue& j);

/// "re,im", or "inf,inf" at infinity.
std::string csv_affine(const SpherePoint& p);

}  // namespace twistor
