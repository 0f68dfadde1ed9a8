// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "oracles.hpp"
#include "twistor/cli.hpp"
#include "twistor/incidence.hpp"
#include "twistor/verifier.hpp"

using namespace twistor;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %d %-28s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SuiteRecord suite(const std::string& name, std::size_t samples, double tolerance) {
  VerificationPlan plan;
  plan.samples_per_suite = samples;
  plan.tolerances[name] = tolerance;
  return verify_suite(name, plan);
}

std::string summary(const SuiteRecord& s) {
  return fmt("%s: %zu samples, max %.2e <= %.0e, %zu failures", s.name.c_str(), s.samples, s.max_error, s.tolerance,
             s.failure_count);
}

void foliation() {
  VerificationPlan plan;  // 2000 per shell over {0.5, 1, 2}
  const SuiteRecord s = verify_foliation(plan);
  const auto generic = s.details["generic_points"].get<std::size_t>();
  const auto fiber0 = s.details["fiber_zero_points"].get<std::size_t>();
  const bool ok = s.passed() && s.tolerance == 1e-9 && generic >= 6000 && fiber0 >= 500;
  report(1, "foliation", ok, summary(s) + fmt(" (%zu generic, %zu t=0)", generic, fiber0));
}

void jacobian_criterion() {
  const SuiteRecord fd = suite("jacobian_fd", 1000, 1e-5);
  const SuiteRecord zero = suite("jacobian_zero_set", 1000, 1e-8);
  report(2, "jacobian", fd.passed() && zero.passed(), summary(fd) + "; " + summary(zero));
}

void k_in_q() {
  const SuiteRecord s = suite("k_in_q", 1000, 1e-12);
  report(3, "K in Q", s.passed(), summary(s));
}

void reality() {
  const SuiteRecord s = suite("reality", 1000, 1e-12);
  report(4, "reality", s.passed(), summary(s));
}

void swap() {
  const SuiteRecord s = suite("swap", 1000, 1e-12);
  report(5, "swap involution", s.passed(), summary(s));
}

void equivariance() {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  double worst = 0.0, worst_modulus = 0.0;
  bool strata = true;
  for (int gi = 0; gi < 100; ++gi) {
    const GroupElement g({n(rng), n(rng)}, {n(rng), n(rng)}, oracle::random_complex(rng, 1, 1));
    for (int pi = 0; pi < 10; ++pi) {
      const LineParams p{SpherePoint(oracle::random_complex(rng, 0.1, 10), oracle::random_complex(rng, 0.1, 10)),
                         SpherePoint::finite(oracle::random_complex(rng, 1e-2, 1e2))};
      const LineParams q = act_on_params(g, p);
      strata = strata && classify(q) == classify(p);
      worst_modulus = std::max(worst_modulus, std::abs(q.a.modulus() - p.a.modulus()) / p.a.modulus());
      for (int ti = 0; ti < 5; ++ti) {
        const SpherePoint t = SpherePoint::finite(oracle::random_complex(rng, 0.1, 10));
        const SpherePoint gt(g.g3() * t.z0(), t.z1());
        worst = std::max(worst, chordal_distance(eval_line(q, gt), act_on_space(g, eval_line(p, t))));
      }
    }
  }
  const SuiteRecord law = suite("group_law", 1000, 1e-11);
  // |a'| = |a| up to the rounding of unit-modulus products.
  const bool ok = worst <= 1e-10 && strata && worst_modulus <= 1e-15 && law.passed();
  report(6, "symmetry equivariance", ok,
         fmt("5000 checks, max %.2e <= 1e-10, max rel ||a'|-|a|| %.1e; ", worst, worst_modulus) + summary(law));
}

void degeneration() {
  const SuiteRecord rate = suite("degeneration", 1000, 0.1);
  const SuiteRecord limits = suite("limit_structure", 1000, 0.5);
  report(7, "degeneration", rate.passed() && limits.passed(),
         fmt("min slope %.4f >= 0.9; ", 1.0 - rate.max_error) + summary(limits));
}

void transport() {
  const SuiteRecord s = suite("transport_k", 200, 1e-10);
  const GroupElement g = transport_on_K(LineParams::finite(0, 1.0), LineParams::finite(0, 1.0));
  std::mt19937_64 rng(8);
  double iso = 0.0;
  for (int i = 0; i < 100; ++i) {
    const LineParams k{SpherePoint(oracle::random_complex(rng, 0.1, 10), oracle::random_complex(rng, 0.1, 10)),
                       SpherePoint::finite(oracle::random_complex(rng, 1, 1))};
    iso = std::max(iso, line_distance(act_on_params(g, k), k));
  }
  report(8, "transport on K", s.passed() && iso <= 1e-10, summary(s) + fmt("; isotropy at (0,1): %.1e", iso));
}

nlohmann::json cli_json(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return code == 0 ? nlohmann::json::parse(out.str()) : nlohmann::json();
}

void cli_goldens() {
  const nlohmann::json half{{"re", -0.5}, {"im", 0.0}}, two{{"re", -2.0}, {"im", 0.0}};
  int c1 = 0, c2 = 0, c3 = 0, c4 = 0;
  const auto e = cli_json({"eval", "--d", "0", "--a", "0.5", "--t", "1"}, c1);
  const auto s = cli_json({"solve", "--x", "-0.5", "--y", "-2", "--t", "1", "--family", "m-"}, c2);
  const auto f = cli_json({"fiber", "--d", "0", "--a", "0.5"}, c3);
  const bool eval_ok = c1 == 0 && e["x"] == half && e["y"] == two;
  const bool solve_ok = c2 == 0 && s["d"] == "inf" && s["a"] == two;
  const bool fiber_ok = c3 == 0 && f["v"] == nlohmann::json{{"re", -1.5}, {"im", 0.0}};
  std::ostringstream out, err;
  c4 = run_cli({"verify"}, out, err);
  report(9, "cli goldens", eval_ok && solve_ok && fiber_ok && c4 == 0,
         fmt("eval %s, solve m- %s, fiber %s, verify exit %d", eval_ok ? "ok" : "bad", solve_ok ? "ok" : "bad",
             fiber_ok ? "ok" : "bad", c4));
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  foliation();
  jacobian_criterion();
  k_in_q();
  reality();
  swap();
  equivariance();
  degeneration();
  transport();
  cli_goldens();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 9 criteria failed, %.1f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
