#pragma once

// Randomized verification suites over every module, with a deterministic
// report. Each sample is generated from (seed, suite, index) alone and
// evaluated by a pure function of its recorded inputs, so any recorded
// failure can be re-run on its own with rerun_sample().

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace twistor {

struct VerificationPlan {
  std::uint64_t seed = 42;
  std::size_t samples_per_suite = 2000;
  std::vector<double> t_shells = {0.5, 1.0, 2.0};
  /// Overrides of the per-suite default tolerances.
  std::map<std::string, double> tolerances;
  /// Suites to run, in report order; empty runs all.
  std::vector<std::string> suites;
  /// Extra on-diagonal points added to the foliation suite; they must be
  /// rejected by the solver and are counted, not failed.
  std::size_t inject_diagonal = 0;
  /// Worker threads; 0 uses the hardware concurrency.
  unsigned threads = 0;
};

struct FailureRecord {
  std::size_t index;
  std::vector<double> inputs;
  double error;
  std::string message;  // empty unless the sample threw
};

struct SuiteRecord {
  std::string name;
  std::size_t samples = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::size_t failure_count = 0;
  std::vector<FailureRecord> failures;  // the first kMaxRecordedFailures
  nlohmann::json details = nlohmann::json::object();
  bool passed() const { return failure_count == 0 && max_error <= tolerance; }
};

struct VerificationReport {
  VerificationPlan plan;
  std::vector<SuiteRecord> suites;
  bool passed() const;
};

inline constexpr std::size_t kMaxRecordedFailures = 16;
inline constexpr std::size_t kMinStatisticalSamples = 100;

/// Names of all suites in their default order.
const std::vector<std::string>& suite_names();
double default_tolerance(const std::string& suite);
bool is_suite(const std::string& name);

/// Throws Error(kDomain) for unknown suites, non-positive tolerances, empty or
/// non-positive shells, or fewer than kMinStatisticalSamples samples.
void validate(const VerificationPlan& plan);

VerificationReport verify_all(const VerificationPlan& plan);
SuiteRecord verify_suite(const std::string& name, const VerificationPlan& plan);
/// The foliation suite alone.
SuiteRecord verify_foliation(const VerificationPlan& plan);

/// Inputs of one sample, as generated by the suite.
std::vector<double> sample_inputs(const std::string& suite, const VerificationPlan& plan,
                                  std::size_t index);
/// Error of one sample from its inputs (the same value the suite records).
/// Throws whatever the evaluated operation throws.
double rerun_sample(const std::string& suite, std::span<const double> inputs);

nlohmann::json to_json(const VerificationPlan& plan);
nlohmann::json to_json(const VerificationReport& report);
std::string to_table(const VerificationReport& report);

}  // namespace twistor
