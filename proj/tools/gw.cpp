// gw — Galton-Watson inference toolkit
//
// Subcommands: simulate, extinction, estimate, bench, covid.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gw/dp.hpp"
#include "gw/estimators.hpp"
#include "gw/extinction.hpp"
#include "gw/gibbs.hpp"
#include "gw/harness.hpp"
#include "gw/process.hpp"

namespace {

using namespace gw;

int cmd_simulate(const std::string& spec, long long z0, int generations,
                 std::uint64_t seed, bool complete, const std::string& out) {
  auto dist = OffspringDistribution::parse(spec);
  auto counts = simulate_complete(dist, z0, generations, SeedSpec{seed, 0});
  std::ostringstream os;
  if (complete)
    write_complete_csv(os, counts);
  else
    write_series_csv(os, collapse(counts));
  if (out.empty() || out == "-") {
    std::cout << os.str();
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << os.str();
  }
  return 0;
}

int cmd_extinction(const std::string& spec, double tol) {
  auto dist = OffspringDistribution::parse(spec);
  auto r = extinction_probability(dist, tol);
  std::cout << "q " << r.q << "\nresidual " << r.residual << "\nmethod "
            << (r.method == ExtinctionResult::Method::ClosedForm ? "closed_form"
                                                                 : "bisection")
            << "\n";
  return 0;
}

struct EstimateOpts {
  std::string input;
  std::string method = "mle";
  std::string k = "auto";
  std::string variant = "A";
  double a = 1.0;
  std::string base = "poisson:agnostic";
  bool support_size = false;
  bool heyde_cumulative = false;
  int k_trunc = 10;
  int iters = 2000;
  int burnin = 500;
  long long max_tries = 1'000'000;
  std::uint64_t seed = 1;
};

int cmd_estimate(const EstimateOpts& o) {
  std::ifstream f(o.input);
  if (!f) throw std::runtime_error("cannot open " + o.input);
  std::string header;
  std::getline(f, header);
  f.seekg(0);
  const bool complete = header.rfind("generation,j0", 0) == 0;

  std::optional<OffspringCounts> counts;
  std::optional<GenerationSeries> series;
  if (complete) {
    counts = read_complete_csv(f);
    series = collapse(*counts);
  } else {
    series = read_series_csv(f);
  }

  auto print_mean = [](double m, double var = -1.0) {
    std::cout << "m_hat " << m << "\n";
    if (var >= 0.0) std::cout << "m_var " << var << "\n";
    std::cout << "classification "
              << (classify_mean(m) == Classification::Supercritical
                      ? "supercritical"
                      : "subcritical_or_critical")
              << "\n";
  };

  if (o.method == "mle") {
    print_mean(mle_mean(*series));
  } else if (o.method == "heyde") {
    double p = heyde_p_supercritical(*series, o.heyde_cumulative);
    std::cout << "p_supercritical " << p << "\nclassification "
              << (classify_prob(p) == Classification::Supercritical
                      ? "supercritical"
                      : "subcritical_or_critical")
              << "\n";
  } else if (o.method == "dirichlet") {
    if (!counts)
      throw std::runtime_error("dirichlet method needs complete data (use gibbs-dir)");
    int k;
    if (o.k == "auto") {
      k = counts->max_offspring();
      auto sums = counts->column_sums();
      while (k > 0 && sums[k] == 0) --k;
    } else {
      k = std::stoi(o.k);
    }
    k = std::max(k, 2);
    auto variant = o.variant == "B" ? AgnosticVariant::B : AgnosticVariant::A;
    auto post = dirichlet_posterior(agnostic_dirichlet_prior(k, variant), *counts);
    auto [mean, var] = posterior_m_moments(post);
    print_mean(mean, var);
  } else if (o.method == "dp") {
    if (!counts)
      throw std::runtime_error("dp method needs complete data (use gibbs-dp)");
    DpPrior prior(o.a, OffspringDistribution::parse(o.base));
    auto post = dp_posterior(prior, *counts);
    print_mean(posterior_mean_m(post));
    if (o.support_size) {
      std::cout << "support_size "
                << support_size_estimate(post, 100, 0, SeedSpec{o.seed, 0})
                << "\n";
    }
  } else if (o.method == "gibbs-dir" || o.method == "gibbs-dp") {
    GibbsConfig gc;
    gc.iterations = o.iters;
    gc.burn_in = o.burnin;
    gc.k_trunc = o.k_trunc;
    gc.max_tries = o.max_tries;
    if (o.method == "gibbs-dir")
      gc.prior = agnostic_dirichlet_prior(
          o.k_trunc, o.variant == "B" ? AgnosticVariant::B : AgnosticVariant::A);
    else
      gc.prior = DpPrior(o.a, OffspringDistribution::parse(o.base));
    auto summary = chain_summary(run_chain(*series, gc, SeedSpec{o.seed, 0}));
    print_mean(summary.m_hat, summary.m_var);
  } else {
    throw std::runtime_error("unknown method " + o.method);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galton-Watson branching-process inference"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "simulate a GW realization");
  std::string sim_spec;
  long long sim_z0 = 1;
  int sim_gens = 10;
  std::uint64_t sim_seed = 1;
  bool sim_complete = false, sim_incomplete = false;
  std::string sim_out = "-";
  sim->add_option("--offspring", sim_spec, "offspring spec, e.g. poisson:1.2")
      ->required();
  sim->add_option("--z0", sim_z0, "initial population");
  sim->add_option("--generations", sim_gens, "max generations");
  sim->add_option("--seed", sim_seed, "rng seed");
  sim->add_flag("--complete", sim_complete, "emit Z_ij counts");
  sim->add_flag("--incomplete", sim_incomplete, "emit generation totals");
  sim->add_option("--out", sim_out, "output path (default stdout)");

  // extinction
  auto* ext = app.add_subcommand("extinction", "extinction probability");
  std::string ext_spec;
  double ext_tol = 1e-12;
  ext->add_option("--offspring", ext_spec)->required();
  ext->add_option("--tol", ext_tol);

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate the offspring mean");
  EstimateOpts eo;
  est->add_option("--input", eo.input, "complete or incomplete CSV")->required();
  est->add_option("--method", eo.method,
                  "mle|heyde|dirichlet|dp|gibbs-dir|gibbs-dp");
  est->add_option("--k", eo.k, "support bound or 'auto' (sample maximum)");
  est->add_option("--variant", eo.variant, "agnostic Dirichlet variant A|B");
  est->add_option("--a", eo.a, "DP concentration");
  est->add_option("--base", eo.base, "DP base measure spec");
  est->add_flag("--support-size", eo.support_size, "also estimate support size");
  est->add_flag("--heyde-cumulative", eo.heyde_cumulative,
                "cumulative-sums variant of the improper-prior formula");
  est->add_option("--k-trunc", eo.k_trunc);
  est->add_option("--iters", eo.iters);
  est->add_option("--burnin", eo.burnin);
  est->add_option("--max-tries", eo.max_tries);
  est->add_option("--seed", eo.seed);

  // bench
  auto* bench = app.add_subcommand("bench", "Monte Carlo benchmark");
  std::string bench_scenario = "all";
  int bench_reps = 500;
  std::uint64_t bench_seed = 1;
  std::string bench_out;
  bench->add_option("--scenario", bench_scenario, "catalog name or 'all'");
  bench->add_option("--reps", bench_reps);
  bench->add_option("--seed", bench_seed);
  bench->add_option("--out", bench_out, "JSON output path (default stdout)");

  // covid
  auto* covid = app.add_subcommand("covid", "epidemic early-detection report");
  std::string covid_input, covid_wave_start, covid_family = "geometric";
  int covid_wave_days = 10, covid_ktrunc = 10;
  std::vector<int> covid_days = {2, 4, 6, 8, 10};
  std::uint64_t covid_seed = 1;
  bool covid_json = false;
  covid->add_option("--input", covid_input, "CSV with header date,count")
      ->required();
  covid->add_option("--wave-start", covid_wave_start, "ISO start date")
      ->required();
  covid->add_option("--wave-days", covid_wave_days);
  covid->add_option("--days", covid_days, "report days")->delimiter(',');
  covid->add_option("--offspring-family", covid_family, "geometric|poisson");
  covid->add_option("--k-trunc", covid_ktrunc);
  covid->add_option("--seed", covid_seed);
  covid->add_flag("--json", covid_json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed())
      return cmd_simulate(sim_spec, sim_z0, sim_gens, sim_seed,
                          sim_complete && !sim_incomplete, sim_out);
    if (ext->parsed()) return cmd_extinction(ext_spec, ext_tol);
    if (est->parsed()) return cmd_estimate(eo);
    if (bench->parsed()) {
      std::ostringstream os;
      os << "[";
      bool first = true;
      for (auto& sc : gw::scenario_catalog()) {
        if (bench_scenario != "all" && sc.name != bench_scenario) continue;
        sc.replications = bench_reps;
        auto result = gw::run_scenario(sc, bench_seed);
        if (!first) os << ",\n";
        os << gw::bench_result_json(result);
        first = false;
      }
      os << "]\n";
      if (first)
        throw std::runtime_error("no scenario named " + bench_scenario);
      if (bench_out.empty() || bench_out == "-") {
        std::cout << os.str();
      } else {
        std::ofstream f(bench_out);
        if (!f) throw std::runtime_error("cannot write " + bench_out);
        f << os.str();
      }
      return 0;
    }
    if (covid->parsed()) {
      auto cs = gw::load_case_series(covid_input, {covid_wave_start},
                                     covid_wave_days);
      std::vector<gw::EstimatorConfig> estimators;
      estimators.push_back({gw::EstimatorConfig::Kind::Mle});
      // the cumulative-sums form is the one the published case-study
      // arithmetic follows
      estimators.push_back({gw::EstimatorConfig::Kind::HeydeImproper, 1.0, true});
      estimators.push_back({gw::EstimatorConfig::Kind::GibbsDirichlet});
      estimators.push_back({gw::EstimatorConfig::Kind::GibbsDp, 1.0});
      auto family = covid_family == "poisson"
                        ? gw::OffspringFamilyForQ::Poisson
                        : gw::OffspringFamilyForQ::Geometric;
      auto cells = gw::early_detection_report(cs, 0, covid_days, estimators,
                                              family, covid_seed, covid_ktrunc);
      std::cout << (covid_json ? gw::early_detection_json(cells)
                               : gw::early_detection_text(cells));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
