#include "twistor/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <ostream>

#include "twistor/serialize.hpp"
#include "twistor/verifier.hpp"

namespace twistor {

namespace {

constexpr const char* kExitCodes =
    "Exit codes: 0 ok, 1 verification failed, 2 usage or parse error,\n"
    "3 domain rejection (on the diagonal, on Q, outside the operation's domain),\n"
    "4 numerical failure.";

struct Config {
  std::string format = "json";
  double tolerance = 1e-9;
  std::uint64_t seed = 42;
  bool trace = false;
};

using Flat = std::vector<std::pair<std::string, std::string>>;

void flatten(const nlohmann::json& j, const std::string& path, Flat& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

void emit(const nlohmann::json& j, const Config& cfg, std::ostream& out) {
  if (cfg.format == "json") {
    out << j.dump(2) << "\n";
    return;
  }
  Flat flat;
  flatten(j, "", flat);
  if (cfg.format == "csv") {
    for (std::size_t i = 0; i < flat.size(); ++i) out << (i ? "," : "") << flat[i].first;
    out << "\n";
    for (std::size_t i = 0; i < flat.size(); ++i) out << (i ? "," : "") << flat[i].second;
    out << "\n";
    return;
  }
  std::size_t width = 0;
  for (const auto& [k, v] : flat) width = std::max(width, k.size());
  for (const auto& [k, v] : flat) out << k << std::string(width + 2 - k.size(), ' ') << v << "\n";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kInvalidFiber:
      return kExitUsage;
    case ErrorKind::kNumericalFailure:
      return kExitNumerical;
    default:
      return kExitDomain;
  }
}

Family parse_family(const std::string& s) { return s == "m-" ? Family::kMinus : Family::kPlus; }

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("TWISTOR_SEED");
  if (s == nullptr) return std::nullopt;
  const std::string_view v(s);
  std::uint64_t seed = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
  if (ec != std::errc() || end != v.data() + v.size()) {
    throw Error(ErrorKind::kParse, "TWISTOR_SEED is not an unsigned integer: '" + std::string(v) + "'");
  }
  return seed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Real rational curve families in P1 x P1 x P1: evaluate, solve, verify."};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  auto* format_opt = app.add_option("--format", cfg.format, "Output format (trajectory: csv unless given)")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  auto* tol_opt = app.add_option("--tol", cfg.tolerance, "Chordal tolerance (verify: every suite's tolerance)")
                      ->check(CLI::PositiveNumber)
                      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Sampling seed (TWISTOR_SEED overrides)")->capture_default_str();
  app.add_flag("--trace", cfg.trace, "Print solver intermediates");

  std::string d, a, t, x, y, v, family = "m+", dir = "zero";
  std::string alpha, beta, g3 = "1", d_dst, a_dst;
  std::size_t samples = 8;
  double radius = 1.0;

  const char* complex_help = "complex literal: a+bi, a-bi, a, bi, inf";

  auto* eval = app.add_subcommand("eval", "Point of L_{d,a} over t");
  eval->add_option("--d", d, complex_help)->required();
  eval->add_option("--a", a, complex_help)->required();
  eval->add_option("--t", t, complex_help)->required();

  auto* solve = app.add_subcommand("solve", "The member of a family through (x, y, t)");
  solve->add_option("--x", x, complex_help)->required();
  solve->add_option("--y", y, complex_help)->required();
  solve->add_option("--t", t, complex_help)->required();
  solve->add_option("--family", family, "m+ or m-")->check(CLI::IsMember({"m+", "m-"}))->capture_default_str();

  auto* jac = app.add_subcommand("jacobian", "Jacobian determinant of (d, a) -> (x, y) over t");
  jac->add_option("--d", d, complex_help)->required();
  jac->add_option("--a", a, complex_help)->required();
  jac->add_option("--t", t, complex_help)->required();

  auto* fiber = app.add_subcommand("fiber", "Point (d, v) of the t = 0 fiber; with --v, the member through it");
  fiber->add_option("--d", d, complex_help)->required();
  auto* fiber_a = fiber->add_option("--a", a, complex_help);
  auto* fiber_v = fiber->add_option("--v", v, complex_help);
  fiber_a->excludes(fiber_v);
  fiber->add_option("--family", family, "m+ or m-")->check(CLI::IsMember({"m+", "m-"}))->capture_default_str();

  auto* limit = app.add_subcommand("limit", "Reducible limit of L_{d,a} as a -> 0 or a -> infinity");
  limit->add_option("--d", d, complex_help)->required();
  limit->add_option("--dir", dir, "zero or inf")->check(CLI::IsMember({"zero", "inf"}))->capture_default_str();

  auto* traj = app.add_subcommand("trajectory", "CSV samples of the trajectory curve of d in the fiber over t");
  traj->add_option("--d", d, complex_help)->required();
  traj->add_option("--t", t, complex_help)->required();
  traj->add_option("--samples", samples, "Number of rows")->check(CLI::PositiveNumber)->capture_default_str();
  traj->add_option("--radius", radius, "x runs over |x - d| = radius |conj(d) x + 1|")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* swap = app.add_subcommand("swap", "The involution (d, a) -> (d, 1/conj(a))");
  swap->add_option("--d", d, complex_help)->required();
  swap->add_option("--a", a, complex_help)->required();

  auto* act = app.add_subcommand("act", "Image of (d, a) under the group element (alpha, beta, g3)");
  act->add_option("--alpha", alpha, complex_help)->required();
  act->add_option("--beta", beta, complex_help)->required();
  act->add_option("--g3", g3, complex_help)->capture_default_str();
  act->add_option("--d", d, complex_help)->required();
  act->add_option("--a", a, complex_help)->required();

  auto* transport = app.add_subcommand("transport", "A group element carrying (d, a) to (d-dst, a-dst) on K");
  transport->add_option("--d", d, complex_help)->required();
  transport->add_option("--a", a, complex_help)->required();
  transport->add_option("--d-dst", d_dst, complex_help)->required();
  transport->add_option("--a-dst", a_dst, complex_help)->required();

  VerificationPlan plan;
  std::vector<std::string> suites;
  auto* verify = app.add_subcommand("verify", "Run the verification suites and print the report");
  verify->add_option("--samples", plan.samples_per_suite, "Samples per suite")->capture_default_str();
  verify->add_option("--shells", plan.t_shells, "Comma-separated |t| shells")->delimiter(',');
  verify->add_option("--suite", suites, "Suite to run (repeatable); default all");
  verify->add_option("--inject-diagonal", plan.inject_diagonal, "On-diagonal points added to foliation");
  verify->add_option("--threads", plan.threads, "Worker threads (0: all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (const auto s = env_seed()) cfg.seed = *s;
    const ChordalTolerance tol(cfg.tolerance);

    if (eval->parsed()) {
      emit(to_json(eval_line({parse_complex(d), parse_complex(a)}, parse_complex(t))), cfg, out);
    } else if (solve->parsed()) {
      const SpacePoint p{parse_complex(x), parse_complex(y), parse_complex(t)};
      try {
        const SolveResult r = solve_line_through(p, parse_family(family), tol);
        nlohmann::json j = to_json(r.params);
        if (cfg.trace) j = {{"params", j}, {"trace", to_json(r.trace)}};
        emit(j, cfg, out);
      } catch (const SolveError& e) {
        if (cfg.trace) err << to_json(e.trace()).dump(2) << "\n";
        throw;
      }
    } else if (jac->parsed()) {
      emit(to_json(jacobian({parse_complex(d), parse_complex(a)}, parse_complex(t))), cfg, out);
    } else if (fiber->parsed()) {
      const SpherePoint dp = parse_complex(d);
      if (*fiber_v) {
        emit(to_json(solve_fiber_zero({dp, parse_complex(v)}, parse_family(family))), cfg, out);
      } else if (*fiber_a) {
        emit(to_json(fiber_zero_point({dp, parse_complex(a)})), cfg, out);
      } else {
        throw Error(ErrorKind::kParse, "fiber needs --a or --v");
      }
    } else if (limit->parsed()) {
      const auto direction = dir == "zero" ? LimitDirection::kTowardZero : LimitDirection::kTowardInfinity;
      emit(to_json(limit_curve(parse_complex(d), direction)), cfg, out);
    } else if (traj->parsed()) {
      if (!*format_opt) cfg.format = "csv";
      const SpherePoint dp = parse_complex(d), tp = parse_complex(t);
      const FractionalMap m = trajectory_map(dp, tp);
      // The circle |x - d| = r |conj(d) x + 1| is the image of |w| = r under
      // w -> (w + d) / (1 - conj(d) w).
      const FractionalMap from_w(dp.z1(), dp.z0(), -std::conj(dp.z0()), std::conj(dp.z1()));
      nlohmann::json rows = nlohmann::json::array();
      if (cfg.format != "json") out << "t_re,t_im,x_re,x_im,y_re,y_im\n";
      for (std::size_t k = 0; k < samples; ++k) {
        const Complex w = std::polar(radius, 2 * std::numbers::pi * double(k) / double(samples));
        const SpherePoint xp = from_w(SpherePoint::finite(w));
        const SpherePoint yp = m(xp);
        if (cfg.format == "json") {
          rows.push_back({{"t", affine_json(tp)}, {"x", affine_json(xp)}, {"y", affine_json(yp)}});
        } else {
          out << csv_affine(tp) << "," << csv_affine(xp) << "," << csv_affine(yp) << "\n";
        }
      }
      if (cfg.format == "json") out << rows.dump(2) << "\n";
    } else if (swap->parsed()) {
      emit(to_json(swap_involution({parse_complex(d), parse_complex(a)})), cfg, out);
    } else if (act->parsed()) {
      const SpherePoint pa = parse_complex(alpha), pb = parse_complex(beta), pg = parse_complex(g3);
      if (pa.is_infinity() || pb.is_infinity() || pg.is_infinity()) {
        throw Error(ErrorKind::kParse, "group element entries must be finite");
      }
      const GroupElement g(*pa.affine(), *pb.affine(), *pg.affine());
      emit({{"group_element", to_json(g)}, {"params", to_json(act_on_params(g, {parse_complex(d), parse_complex(a)}))}},
           cfg, out);
    } else if (transport->parsed()) {
      const GroupElement g =
          transport_on_K({parse_complex(d), parse_complex(a)}, {parse_complex(d_dst), parse_complex(a_dst)});
      emit(to_json(g), cfg, out);
    } else if (verify->parsed()) {
      for (const std::string& s : suites) {
        if (!is_suite(s)) {
          err << "unknown suite: " << s << "\n";
          return kExitUsage;
        }
      }
      plan.seed = cfg.seed;
      plan.suites = suites;
      if (*tol_opt) {
        for (const std::string& s : suites.empty() ? suite_names() : suites) plan.tolerances[s] = cfg.tolerance;
      }
      try {
        validate(plan);
      } catch (const Error& e) {
        err << "invalid plan: " << e.what() << "\n";
        return kExitUsage;
      }
      const VerificationReport report = verify_all(plan);
      if (cfg.format == "table") {
        out << to_table(report);
      } else {
        out << to_json(report).dump(2) << "\n";
      }
      return report.passed() ? kExitOk : kExitVerifyFailed;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return kExitOk;
}

}  // namespace twistor
