// Acceptance gate: one PASS/FAIL line per criterion, exit code = #failures.
// Every check is run even after a failure so the full scoreboard prints.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "gw/dp.hpp"
#include "gw/extinction.hpp"
#include "gw/gibbs.hpp"
#include "gw/harness.hpp"

using namespace gw;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%2d] %s  %-38s %s\n", idx, ok ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// ---- 1. extinction arithmetic on the case-study MLE columns ----
void c1() {
  struct Row {
    double m_hat, q_expected;
  };
  const std::vector<Row> rows = {
      {2.0, 0.500},          {1.0, 1.000},          {1.3, 0.769},
      {23.0 / 17.0, 0.739},  {34.0 / 29.0, 0.853},  // first wave
      {1.4, 0.714},          {38.0 / 27.0, 0.711},  {71.0 / 55.0, 0.775},
  };
  bool ok = true;
  double worst = 0.0;
  for (const auto& r : rows) {
    double q = extinction_for_mean(r.m_hat, OffspringFamilyForQ::Geometric);
    worst = std::max(worst, std::fabs(q - r.q_expected));
    if (std::fabs(q - r.q_expected) > 0.001) ok = false;
  }
  report(1, "extinction arithmetic (case tables)", ok,
         fmt("max |q - table| = %.2e (bar 1e-3)", worst));
}

// ---- 2. fixed-point residual + independent oracle ----
void c2() {
  bool ok = true;
  double worst_resid = 0.0;
  for (double lambda : {1.1, 1.5, 2.5}) {
    auto r = extinction_probability(OffspringDistribution::poisson(lambda));
    worst_resid = std::max(worst_resid, r.residual);
    if (r.residual > 1e-12) ok = false;
  }
  for (const auto& d : {OffspringDistribution::poisson(1.0),
                        OffspringDistribution::poisson(0.7),
                        OffspringDistribution::geometric(0.5),
                        OffspringDistribution::finite({0.4, 0.3, 0.2, 0.1})}) {
    if (extinction_probability(d).q != 1.0) ok = false;
  }
  // oracle: plain bisection on G(q) - q, written independently of the library
  auto d = OffspringDistribution::poisson(1.5);
  double lo = 0.0, hi = 1.0 - 1e-9;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (d.pgf(mid) - mid > 0 ? lo : hi) = mid;
  }
  double q_oracle = 0.5 * (lo + hi);
  double q = extinction_probability(d).q;
  if (std::fabs(q - 0.417188) > 1e-5) ok = false;
  if (std::fabs(q - q_oracle) > 1e-9) ok = false;
  report(2, "fixed-point residual + oracle", ok,
         fmt("max residual %.1e; poisson(1.5) q=%.6f (oracle %.6f)", worst_resid,
             q, q_oracle));
}

// ---- 3. agnostic calibration ----
void c3() {
  bool ok = true;
  auto poi = calibrate_agnostic_base(AgnosticFamily::Poisson);
  auto geo = calibrate_agnostic_base(AgnosticFamily::Geometric);
  if (poi.base.median() != 1) ok = false;
  if (geo.base.median() != 1) ok = false;

  auto prior = agnostic_dirichlet_prior(4, AgnosticVariant::A);
  RngStream rng(SeedSpec{33, 0});
  const int n = 100000;
  std::vector<double> ms(n);
  for (int i = 0; i < n; ++i) {
    auto pi = rng.dirichlet(prior.alpha);
    double m = 0.0;
    for (std::size_t j = 0; j < pi.size(); ++j) m += j * pi[j];
    ms[i] = m;
  }
  std::nth_element(ms.begin(), ms.begin() + n / 2, ms.end());
  double med = ms[n / 2];
  if (std::fabs(med - 1.0) > 0.02) ok = false;
  report(3, "agnostic calibration", ok,
         fmt("median(Poi)=%lld median(Geo)=%lld, MC median(m)=%.4f",
             poi.base.median(), geo.base.median(), med));
}

// ---- 4. conjugacy oracle ----
void c4() {
  bool exact_ok = true;
  double worst = 0.0;
  RngStream gen(SeedSpec{44, 0});
  for (int k = 1; k <= 5; ++k) {
    // a few random finite bases per support size
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<double> base_w(k + 1);
      double s = 0.0;
      for (double& w : base_w) s += (w = 0.05 + gen.uniform());
      for (double& w : base_w) w /= s;
      auto base = OffspringDistribution::finite(base_w);
      double a = 0.5 + 3.0 * gen.uniform();
      DpPrior prior(a, base);

      // random counts, N <= 20 parents
      int n_parents = 1 + static_cast<int>(gen.uniform() * 20);
      std::vector<long long> row(k + 1, 0);
      for (int p = 0; p < n_parents; ++p) ++row[base.sample(gen)];
      OffspringCounts counts{{row}};

      auto post = dp_posterior(prior, counts);
      auto dir = dirichlet_posterior(dirichlet_equivalent(prior, k), counts);
      for (int j = 0; j <= k; ++j) {
        double lhs = posterior_mean_pmf(post, j);
        double rhs = dir.alpha[j] / dir.total();
        worst = std::max(worst, std::fabs(lhs - rhs));
        if (std::fabs(lhs - rhs) > 1e-12) exact_ok = false;
      }
    }
  }
  // stick-breaking MC vs closed form on one representative posterior
  DpPrior prior(1.0, OffspringDistribution::poisson(0.6954));
  OffspringCounts counts{{{2, 1, 1}}};
  auto post = dp_posterior(prior, counts);
  RngStream rng(SeedSpec{45, 0});
  const int draws = 10000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < draws; ++i) {
    double m = sample_realization(post, 1e-8, rng).mean();
    sum += m;
    sumsq += m * m;
  }
  double mc = sum / draws;
  double se = std::sqrt((sumsq / draws - mc * mc) / draws);
  double target = posterior_mean_m(post);
  bool mc_ok = std::fabs(mc - target) < 3 * se;
  report(4, "DP/Dirichlet conjugacy oracle", exact_ok && mc_ok,
         fmt("max pmf gap %.1e; stick MC %.4f vs %.4f (3se=%.4f)", worst, mc,
             target, 3 * se));
}

// ---- 5. constrained multinomial vs enumeration ----
void c5() {
  bool ok = true;
  double worst_tv = 0.0;
  RngStream rng(SeedSpec{55, 0});
  const std::vector<std::vector<double>> prob_sets = {
      {0.5, 0.5},
      {0.2, 0.5, 0.3},
      {0.4, 0.3, 0.2, 0.1},
  };
  for (const auto& probs : prob_sets) {
    int k = static_cast<int>(probs.size()) - 1;
    for (long long z_i = 1; z_i <= 4; ++z_i) {
      for (long long z_next = 0; z_next <= k * z_i; ++z_next) {
        // brute force: every parent draws 0..k independently
        std::map<std::vector<long long>, double> law;
        std::vector<int> assign(z_i, 0);
        double feasible_mass = 0.0;
        while (true) {
          long long total = std::accumulate(assign.begin(), assign.end(), 0LL);
          if (total == z_next) {
            std::vector<long long> countv(k + 1, 0);
            double p = 1.0;
            for (int v : assign) {
              ++countv[v];
              p *= probs[v];
            }
            law[countv] += p;
            feasible_mass += p;
          }
          int pos = 0;
          while (pos < z_i && assign[pos] == k) assign[pos++] = 0;
          if (pos == static_cast<int>(z_i)) break;
          ++assign[pos];
        }
        for (auto& [v, p] : law) p /= feasible_mass;

        const int n = 100000;
        std::map<std::vector<long long>, long long> hist;
        for (int i = 0; i < n; ++i)
          ++hist[constrained_multinomial(z_i, z_next, probs, rng, 10000000)];
        double tv = 0.0;
        for (const auto& [v, p] : law)
          tv += std::fabs(p - hist[v] / double(n));
        for (const auto& [v, c] : hist)
          if (!law.count(v)) tv += c / double(n);
        tv *= 0.5;
        worst_tv = std::max(worst_tv, tv);
        if (tv >= 0.02) ok = false;
      }
    }
  }
  report(5, "constrained-multinomial oracle", ok,
         fmt("worst TV distance %.4f (bar 0.02)", worst_tv));
}

// ---- 6. Gibbs forced-imputation equivalence ----
void c6() {
  GibbsConfig gc;
  gc.iterations = 5500;
  gc.burn_in = 500;
  gc.k_trunc = 3;
  gc.prior = DirichletParams({1, 1, 1, 1});
  auto chain = run_chain(GenerationSeries({1, 2, 0}), gc, SeedSpec{66, 0});
  double mean = 0.0;
  for (double m : chain.m_samples) mean += m;
  mean /= chain.m_samples.size();
  auto [exact_mean, exact_var] =
      posterior_m_moments(DirichletParams({3, 1, 2, 1}));
  double se = std::sqrt(exact_var / chain.m_samples.size());
  bool ok = chain.m_samples.size() == 5000 &&
            std::fabs(mean - exact_mean) < 3 * se;
  report(6, "Gibbs forced-imputation equivalence", ok,
         fmt("chain %.5f vs closed form %.5f (3se=%.5f)", mean, exact_mean,
             3 * se));
}

// ---- 7. classification regression (critical row + directional rows) ----
void c7() {
  auto make = [](std::vector<double> pi, const char* name) {
    Scenario sc{name, OffspringDistribution::finite(std::move(pi))};
    sc.replications = 500;
    sc.generations = 10;
    sc.estimators = {{EstimatorConfig::Kind::Mle},
                     {EstimatorConfig::Kind::HeydeImproper},
                     {EstimatorConfig::Kind::Dp, 1.0},
                     {EstimatorConfig::Kind::Dp, 100.0}};
    return sc;
  };
  auto crit = run_scenario(make({0.4, 0.3, 0.2, 0.1}, "critical"), 7001);
  double mle = crit.estimators[0].proportion_correct;
  double improper = crit.estimators[1].proportion_correct;
  double dp1 = crit.estimators[2].proportion_correct;
  double dp100 = crit.estimators[3].proportion_correct;

  bool ok = true;
  if (std::fabs(mle - 0.840) > 0.07) ok = false;
  if (std::fabs(dp1 - 0.858) > 0.07) ok = false;
  if (improper < 0.99) ok = false;  // known red: printed formula tops out ~0.96
  if (dp100 < 0.99) ok = false;
  // ordering of methods on the critical row
  if (!(dp100 >= dp1 && dp1 >= mle)) ok = false;

  // directional: strongly informative / improper methods collapse toward 0
  // correct classification on a mildly supercritical row
  auto sup = run_scenario(make({0.35, 0.25, 0.25, 0.15}, "m1.2"), 7002);
  double improper_sup = sup.estimators[1].proportion_correct;
  double dp100_sup = sup.estimators[3].proportion_correct;
  if (improper_sup > 0.10) ok = false;  // known red: printed formula ~0.20
  if (dp100_sup > 0.10) ok = false;

  report(7, "classification regression", ok,
         fmt("crit: mle=%.3f improper=%.3f dp1=%.3f dp100=%.3f | m1.2: "
             "improper=%.3f dp100=%.3f",
             mle, improper, dp1, dp100, improper_sup, dp100_sup));
}

// ---- 8. support-size monotonicity ----
void c8() {
  const std::vector<std::vector<double>> laws = {
      {0.45, 0.3, 0.15, 0.1},
      {0.4, 0.3, 0.2, 0.1},
      {0.35, 0.25, 0.25, 0.15},
      {0.25, 0.25, 0.25, 0.25},
  };
  std::vector<double> props;
  for (std::size_t l = 0; l < laws.size(); ++l) {
    auto law = OffspringDistribution::finite(laws[l]);
    const int reps = 100;
    int hits = 0;
    for (int r = 0; r < reps; ++r) {
      auto counts = simulate_complete(law, 1, 10,
                                      SeedSpec{800 + l, (std::uint64_t)r});
      DpPrior prior(1.0, calibrate_agnostic_base(AgnosticFamily::Poisson).base);
      auto post = dp_posterior(prior, counts);
      if (post.n_obs == 0) continue;
      long long k_hat = support_size_estimate(
          post, 100, 0, SeedSpec{900 + l, (std::uint64_t)r});
      if (k_hat == 4) ++hits;
    }
    props.push_back(hits / 100.0);
  }
  bool ok = true;
  for (std::size_t i = 1; i < props.size(); ++i)
    if (props[i] < props[i - 1]) ok = false;
  if (props.back() <= props.front() + 0.1) ok = false;
  report(8, "support-size monotonicity", ok,
         fmt("P(K=4): %.2f -> %.2f -> %.2f -> %.2f", props[0], props[1],
             props[2], props[3]));
}

// ---- 9. MLE invariance in exact integer arithmetic ----
void c9() {
  bool ok = true;
  int checked = 0;
  const OffspringDistribution laws[] = {
      OffspringDistribution::finite({0.45, 0.3, 0.15, 0.1}),
      OffspringDistribution::finite({0.4, 0.3, 0.2, 0.1}),
      OffspringDistribution::poisson(1.2),
      OffspringDistribution::geometric(0.4),
  };
  for (int r = 0; r < 250; ++r) {
    for (std::size_t l = 0; l < 4; ++l) {
      auto counts =
          simulate_complete(laws[l], 1, 10, SeedSpec{910 + l, (std::uint64_t)r});
      long long children = 0, parents = 0;
      for (const auto& row : counts.rows)
        for (std::size_t j = 0; j < row.size(); ++j) {
          parents += row[j];
          children += static_cast<long long>(j) * row[j];
        }
      if (parents == 0) continue;
      auto [c2, p2] = mle_ratio(collapse(counts));
      // exact rational equality: children/parents == c2/p2
      if (children * p2 != c2 * parents) ok = false;
      ++checked;
    }
  }
  report(9, "MLE complete/incomplete invariance", ok,
         fmt("%d simulated datasets, exact ratio equality", checked));
}

// ---- 10. Heyde spot value ----
void c10() {
  double p = heyde_p_supercritical(GenerationSeries({1, 2, 3}));
  double target = 3.0 * std::exp(-2.0);
  bool ok = std::fabs(p - target) <= 1e-10;
  report(10, "improper-prior spot value", ok,
         fmt("P*=%.12f vs 3e^-2=%.12f", p, target));
}

}  // namespace

int main() {
  std::printf("acceptance criteria\n-------------------\n");
  c1();
  c2();
  c3();
  c4();
  c5();
  c6();
  c7();
  c8();
  c9();
  c10();
  std::printf("-------------------\n%d of 10 criteria failed\n", g_failures);
  return g_failures;
}
