#include "twistor/serialize.hpp"

#include <charconv>
#include <cmath>

namespace twistor {

namespace {

[[noreturn]] void bad_literal(std::string_view text) {
  throw Error(ErrorKind::kParse, "not a complex literal: '" + std::string(text) + "'");
}

double parse_real(std::string_view part, std::string_view whole) {
  if (!part.empty() && part.front() == '+') part.remove_prefix(1);
  if (part.empty()) bad_literal(whole);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
  if (ec != std::errc() || end != part.data() + part.size() || !std::isfinite(v)) bad_literal(whole);
  return v;
}

// Coefficient of i: "" and "+" mean 1, "-" means -1.
double parse_imag(std::string_view part, std::string_view whole) {
  if (part.empty() || part == "+") return 1.0;
  if (part == "-") return -1.0;
  return parse_real(part, whole);
}

std::string number(double v) {
  nlohmann::json j = json_number(v);
  return j.dump();
}

}  // namespace

SpherePoint parse_complex(std::string_view text) {
  if (text == "inf") return SpherePoint::infinity();
  if (text.empty()) bad_literal(text);
  if (text.back() != 'i') return SpherePoint::finite(parse_real(text, text));
  const std::string_view body = text.substr(0, text.size() - 1);
  // The sign that separates the parts: not leading, not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return SpherePoint::finite(Complex(0.0, parse_imag(body, text)));
  return SpherePoint::finite(
      Complex(parse_real(body.substr(0, split), text), parse_imag(body.substr(split), text)));
}

std::string format_complex(const SpherePoint& p) {
  const auto z = p.affine();
  if (!z) return "inf";
  const double re = z->real() == 0.0 ? 0.0 : z->real();
  const double im = z->imag() == 0.0 ? 0.0 : z->imag();
  if (im == 0.0) return number(re);
  const std::string sign = im < 0.0 ? "" : "+";
  return number(re) + sign + number(im) + "i";
}

nlohmann::json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v == 0.0 ? 0.0 : v;
}

nlohmann::json to_json(Complex z) { return {{"re", json_number(z.real())}, {"im", json_number(z.imag())}}; }

nlohmann::json to_json(const SpherePoint& p) { return nlohmann::json::array({to_json(p.z0()), to_json(p.z1())}); }

nlohmann::json affine_json(const SpherePoint& p) {
  const auto z = p.affine();
  return z ? to_json(*z) : nlohmann::json("inf");
}

nlohmann::json to_json(const SpacePoint& p) {
  return {{"x", affine_json(p.x)}, {"y", affine_json(p.y)}, {"t", affine_json(p.t)}};
}

nlohmann::json to_json(const LineParams& p) {
  return {{"d", affine_json(p.d)}, {"a", affine_json(p.a)}, {"stratum", to_string(classify(p))}};
}

nlohmann::json to_json(const ReducibleLimit& limit) {
  nlohmann::json extras = nlohmann::json::array();
  for (const LimitComponent& c : limit.extra_components) {
    extras.push_back({{"degree", c.degree}, {"anchor", to_json(c.anchor)}});
  }
  return {{"vertical", {{"degree", {0, 0, 1}}, {"params", to_json(limit.vertical)}}},
          {"stratum", to_string(limit.stratum)},
          {"extra_components", extras}};
}

nlohmann::json to_json(const FiberZeroPoint& fp) { return {{"d", affine_json(fp.d)}, {"v", affine_json(fp.v)}}; }

nlohmann::json to_json(const SolverTrace& trace) {
  nlohmann::json cs = nlohmann::json::array(), ps = nlohmann::json::array();
  for (const SpherePoint& c : trace.c_candidates) cs.push_back(affine_json(c));
  for (const LineParams& p : trace.params_candidates) ps.push_back(to_json(p));
  return {{"b", affine_json(trace.b)},
          {"c_candidates", cs},
          {"params_candidates", ps},
          {"chosen_family", to_string(trace.chosen_family)},
          {"R", json_number(trace.R)},
          {"rotated", trace.rotated},
          {"ill_conditioned", trace.ill_conditioned},
          {"roundtrip_error", json_number(trace.roundtrip_error)}};
}

nlohmann::json to_json(const GroupElement& g) {
  return {{"alpha", to_json(g.alpha())}, {"beta", to_json(g.beta())}, {"g3", to_json(g.g3())}};
}

nlohmann::json to_json(const JacobianValue& j) {
  return {{"value", json_number(j.value)}, {"chart", to_string(j.chart)}};
}

std::string csv_affine(const SpherePoint& p) {
  const auto z = p.affine();
  if (!z) return "inf,inf";
  return number(z->real()) + "," + number(z->imag());
}

}  // namespace twistor
