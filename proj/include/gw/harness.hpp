#ifndef GW_HARNESS_HPP
#define GW_HARNESS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gw/extinction.hpp"
#include "gw/gibbs.hpp"
#include "gw/process.hpp"

namespace gw {

// One estimator entry in a benchmark scenario.
struct EstimatorConfig {
  enum class Kind {
    Mle,
    HeydeImproper,
    Dirichlet,   // agnostic Dirichlet prior, needs k (known or sample max)
    Dp,          // DP prior with agnostic Poisson base
    GibbsDirichlet,
    GibbsDp,
  };
  Kind kind = Kind::Mle;
  double a = 1.0;             // DP concentration
  bool heyde_cumulative = false;
  bool estimate_support = false;  // Dp only: also report support-size hits
  std::string name() const;
};

struct Scenario {
  std::string name;
  OffspringDistribution offspring;
  int generations = 10;
  int replications = 500;
  bool known_k = true;        // whether estimators may use the true support
  bool incomplete = false;    // estimate from generation totals via Gibbs
  int k_trunc = 10;           // truncation when k unknown (incomplete data)
  std::vector<EstimatorConfig> estimators;
};

struct EstimatorResult {
  std::string name;
  std::map<std::string, double> params;
  double proportion_correct = 0.0;
  double se_mhat = 0.0;       // std. deviation of the m estimates
  std::optional<double> support_correct;
  int failures = 0;           // estimator errors, reported, never dropped
};

struct BenchResult {
  std::string scenario;
  double m_true = 0.0;
  int replications = 0;
  std::uint64_t seed = 0;
  std::vector<EstimatorResult> estimators;
};

BenchResult run_scenario(const Scenario& sc, std::uint64_t seed);

// Built-in catalog mirroring the reference simulation design: finite
// laws at m in {0.9, 1.0, 1.2, 1.5} and Poisson laws at the same means,
// in complete/incomplete and known/unknown-k variants.
std::vector<Scenario> scenario_catalog();

std::string bench_result_json(const BenchResult& r);

// ---- epidemic case-study pipeline ----

struct CaseSeries {
  std::vector<std::string> dates;       // ISO yyyy-mm-dd, ordered
  std::vector<long long> daily_counts;
  std::vector<std::pair<int, int>> waves;  // [start, end) index windows

  // window's counts as generation totals, truncated at the first zero
  GenerationSeries wave_series(int wave, int days = -1) const;
};

// CSV header "date,count".  Wave windows are given as start dates plus a
// common length; windows outside the data range are rejected.
CaseSeries load_case_series(const std::string& path,
                            const std::vector<std::string>& wave_starts,
                            int wave_days);

enum class OffspringFamilyForQ { Geometric, Poisson };

// q for a fitted mean: geometric min(1, 1/m), Poisson smallest root of
// exp(m(q-1)) = q.
double extinction_for_mean(double m_hat, OffspringFamilyForQ family);

struct EarlyDetectionCell {
  int day = 0;
  std::string estimator;
  bool available = false;
  double m_hat = 0.0;             // P(m>1) for the improper prior
  bool is_probability = false;
  Classification classification = Classification::SubcriticalOrCritical;
  double q = 1.0;
};

// For each n in days and each estimator: estimate from the first n days
// of the wave, classify, and attach the extinction probability for the
// chosen offspring family.
std::vector<EarlyDetectionCell> early_detection_report(
    const CaseSeries& cs, int wave, const std::vector<int>& days,
    const std::vector<EstimatorConfig>& estimators, OffspringFamilyForQ family,
    std::uint64_t seed = 1, int k_trunc = 10);

std::string early_detection_text(const std::vector<EarlyDetectionCell>& cells);
std::string early_detection_json(const std::vector<EarlyDetectionCell>& cells);

}  // namespace gw

#endif
