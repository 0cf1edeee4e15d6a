#include "gw/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gw {

namespace {

using nlohmann::json;

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (v.size() - 1));
}

int sample_max_offspring(const OffspringCounts& counts) {
  int k = 0;
  for (const auto& row : counts.rows)
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] > 0) k = std::max<int>(k, static_cast<int>(j));
  return k;
}

}  // namespace

std::string EstimatorConfig::name() const {
  switch (kind) {
    case Kind::Mle:
      return "mle";
    case Kind::HeydeImproper:
      return heyde_cumulative ? "bayes.improper.cumulative" : "bayes.improper";
    case Kind::Dirichlet:
      return "bayes.dir";
    case Kind::Dp: {
      std::ostringstream os;
      os << "bayes.dp(a=" << a << ")";
      return os.str();
    }
    case Kind::GibbsDirichlet:
      return "gibbs.dir";
    case Kind::GibbsDp: {
      std::ostringstream os;
      os << "gibbs.dp(a=" << a << ")";
      return os.str();
    }
  }
  return "?";
}

BenchResult run_scenario(const Scenario& sc, std::uint64_t seed) {
  if (sc.replications < 1 || sc.generations < 1)
    throw std::invalid_argument("run_scenario: bad scenario");
  const double m_true = sc.offspring.mean();
  const bool truth_supercritical = m_true > 1.0 + 1e-9;
  long long true_support = -1;
  if (sc.offspring.family() == OffspringDistribution::Family::Finite)
    true_support = static_cast<long long>(sc.offspring.probs().size());
  int known_k =
      sc.offspring.family() == OffspringDistribution::Family::Finite
          ? static_cast<int>(sc.offspring.probs().size()) - 1
          : -1;

  struct Acc {
    long long correct = 0;
    long long counted = 0;
    std::vector<double> m_hats;
    long long support_hits = 0;
    long long support_counted = 0;
    int failures = 0;
  };
  std::vector<Acc> accs(sc.estimators.size());

  for (int r = 0; r < sc.replications; ++r) {
    SeedSpec rep_seed{seed, static_cast<std::uint64_t>(r)};
    OffspringCounts counts =
        simulate_complete(sc.offspring, 1, sc.generations, rep_seed);
    GenerationSeries series = collapse(counts);

    for (std::size_t e = 0; e < sc.estimators.size(); ++e) {
      const EstimatorConfig& cfg = sc.estimators[e];
      Acc& acc = accs[e];
      try {
        Classification cls;
        double stat;
        switch (cfg.kind) {
          case EstimatorConfig::Kind::Mle: {
            stat = mle_mean(series);
            cls = classify_mean(stat);
            break;
          }
          case EstimatorConfig::Kind::HeydeImproper: {
            stat = heyde_p_supercritical(series, cfg.heyde_cumulative);
            cls = classify_prob(stat);
            break;
          }
          case EstimatorConfig::Kind::Dirichlet: {
            int k = sc.known_k && known_k >= 0 ? known_k
                                               : sample_max_offspring(counts);
            k = std::max(k, 2);  // agnostic prior needs a mass point above 1
            auto prior = agnostic_dirichlet_prior(k, AgnosticVariant::A);
            auto post = dirichlet_posterior(prior, counts);
            stat = posterior_m_moments(post).first;
            cls = classify_mean(stat);
            break;
          }
          case EstimatorConfig::Kind::Dp: {
            DpPrior prior(cfg.a,
                          calibrate_agnostic_base(AgnosticFamily::Poisson).base);
            auto post = dp_posterior(prior, counts);
            stat = posterior_mean_m(post);
            cls = classify_mean(stat);
            if (cfg.estimate_support && true_support > 0) {
              SeedSpec sup_seed{seed ^ 0x5C5C5C5CULL,
                                static_cast<std::uint64_t>(r)};
              long long k_hat = support_size_estimate(post, 100, 0, sup_seed);
              if (k_hat == true_support) ++acc.support_hits;
              ++acc.support_counted;
            }
            break;
          }
          case EstimatorConfig::Kind::GibbsDirichlet:
          case EstimatorConfig::Kind::GibbsDp: {
            GibbsConfig gc;
            gc.k_trunc = sc.known_k && known_k >= 1 ? known_k : sc.k_trunc;
            if (cfg.kind == EstimatorConfig::Kind::GibbsDirichlet)
              gc.prior = agnostic_dirichlet_prior(std::max(gc.k_trunc, 2),
                                                  AgnosticVariant::A);
            else
              gc.prior = DpPrior(
                  cfg.a, calibrate_agnostic_base(AgnosticFamily::Poisson).base);
            gc.k_trunc = std::max(gc.k_trunc, 2);
            SeedSpec chain_seed{seed ^ 0xA3A3A3A3ULL,
                                static_cast<std::uint64_t>(r)};
            auto summary = chain_summary(run_chain(series, gc, chain_seed));
            stat = summary.m_hat;
            cls = summary.classification;
            break;
          }
          default:
            throw std::logic_error("unknown estimator");
        }
        acc.m_hats.push_back(stat);
        ++acc.counted;
        if ((cls == Classification::Supercritical) == truth_supercritical)
          ++acc.correct;
      } catch (const std::exception&) {
        ++acc.failures;
      }
    }
  }

  BenchResult out;
  out.scenario = sc.name;
  out.m_true = m_true;
  out.replications = sc.replications;
  out.seed = seed;
  for (std::size_t e = 0; e < sc.estimators.size(); ++e) {
    EstimatorResult er;
    er.name = sc.estimators[e].name();
    if (sc.estimators[e].kind == EstimatorConfig::Kind::Dp ||
        sc.estimators[e].kind == EstimatorConfig::Kind::GibbsDp)
      er.params["a"] = sc.estimators[e].a;
    er.proportion_correct =
        accs[e].counted > 0
            ? static_cast<double>(accs[e].correct) / accs[e].counted
            : 0.0;
    er.se_mhat = sample_sd(accs[e].m_hats);
    if (accs[e].support_counted > 0)
      er.support_correct = static_cast<double>(accs[e].support_hits) /
                           accs[e].support_counted;
    er.failures = accs[e].failures;
    out.estimators.push_back(std::move(er));
  }
  return out;
}

std::vector<Scenario> scenario_catalog() {
  struct FiniteCase {
    const char* tag;
    std::vector<double> pi;
  };
  // the critical vector is the reference choice; the perturbed vectors
  // for m = 0.9, 1.2, 1.5 are ours
  const std::vector<FiniteCase> finite_cases = {
      {"finite-m0.9", {0.45, 0.3, 0.15, 0.1}},
      {"finite-m1.0", {0.4, 0.3, 0.2, 0.1}},
      {"finite-m1.2", {0.35, 0.25, 0.25, 0.15}},
      {"finite-m1.5", {0.25, 0.25, 0.25, 0.25}},
  };
  const std::vector<double> poisson_means = {0.9, 1.0, 1.2, 1.5};

  auto complete_estimators = [](bool with_support) {
    std::vector<EstimatorConfig> es;
    es.push_back({EstimatorConfig::Kind::Mle});
    es.push_back({EstimatorConfig::Kind::HeydeImproper});
    es.push_back({EstimatorConfig::Kind::Dirichlet});
    es.push_back({EstimatorConfig::Kind::Dp, 1.0, false, with_support});
    es.push_back({EstimatorConfig::Kind::Dp, 100.0, false, false});
    return es;
  };
  auto incomplete_estimators = []() {
    std::vector<EstimatorConfig> es;
    es.push_back({EstimatorConfig::Kind::Mle});
    es.push_back({EstimatorConfig::Kind::HeydeImproper});
    es.push_back({EstimatorConfig::Kind::GibbsDirichlet});
    es.push_back({EstimatorConfig::Kind::GibbsDp, 1.0});
    return es;
  };

  std::vector<Scenario> out;
  for (const auto& fc : finite_cases) {
    for (bool known : {true, false}) {
      Scenario sc{std::string(fc.tag) + "-complete-" + (known ? "known" : "unknown"),
                  OffspringDistribution::finite(fc.pi)};
      sc.known_k = known;
      sc.estimators = complete_estimators(!known);
      out.push_back(sc);

      Scenario si{std::string(fc.tag) + "-incomplete-" + (known ? "known" : "unknown"),
                  OffspringDistribution::finite(fc.pi)};
      si.known_k = known;
      si.incomplete = true;
      si.estimators = incomplete_estimators();
      out.push_back(si);
    }
  }
  for (double lambda : poisson_means) {
    std::ostringstream name;
    name << "poisson-m" << lambda;
    Scenario sc{name.str() + "-complete", OffspringDistribution::poisson(lambda)};
    sc.known_k = false;
    sc.estimators = complete_estimators(false);
    out.push_back(sc);

    Scenario si{name.str() + "-incomplete", OffspringDistribution::poisson(lambda)};
    si.known_k = false;
    si.incomplete = true;
    si.estimators = incomplete_estimators();
    out.push_back(si);
  }
  return out;
}

std::string bench_result_json(const BenchResult& r) {
  json j;
  j["scenario"] = r.scenario;
  j["m_true"] = r.m_true;
  j["replications"] = r.replications;
  j["seed"] = r.seed;
  j["estimators"] = json::array();
  for (const auto& e : r.estimators) {
    json je;
    je["name"] = e.name;
    je["params"] = json::object();
    for (const auto& [key, v] : e.params) je["params"][key] = v;
    je["proportion_correct"] = e.proportion_correct;
    je["se_mhat"] = e.se_mhat;
    if (e.support_correct) je["support_correct"] = *e.support_correct;
    je["failures"] = e.failures;
    j["estimators"].push_back(je);
  }
  return j.dump(2);
}

GenerationSeries CaseSeries::wave_series(int wave, int days) const {
  if (wave < 0 || wave >= static_cast<int>(waves.size()))
    throw std::invalid_argument("wave index out of range");
  auto [start, end] = waves[wave];
  if (days >= 0) end = std::min(end, start + days);
  std::vector<long long> z;
  for (int i = start; i < end; ++i) {
    z.push_back(daily_counts[i]);
    if (daily_counts[i] == 0) break;  // absorbing
  }
  return GenerationSeries(std::move(z));
}

CaseSeries load_case_series(const std::string& path,
                            const std::vector<std::string>& wave_starts,
                            int wave_days) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(is, line) || line.rfind("date,count", 0) != 0)
    throw std::runtime_error(path + ": expected header 'date,count'");
  CaseSeries cs;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad row");
    std::string date = line.substr(0, comma);
    long long count;
    try {
      count = std::stoll(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unparseable count");
    }
    if (count < 0)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": negative count");
    cs.dates.push_back(std::move(date));
    cs.daily_counts.push_back(count);
  }
  if (wave_days < 1) throw std::invalid_argument("wave_days must be >= 1");
  for (const auto& start_date : wave_starts) {
    auto it = std::find(cs.dates.begin(), cs.dates.end(), start_date);
    if (it == cs.dates.end())
      throw std::runtime_error("wave start " + start_date + " not in data");
    int start = static_cast<int>(it - cs.dates.begin());
    int end = start + wave_days;
    if (end > static_cast<int>(cs.dates.size()))
      throw std::runtime_error("wave window starting " + start_date +
                               " extends beyond data end");
    if (cs.daily_counts[start] < 1)
      throw std::runtime_error("wave starting " + start_date +
                               " begins with zero cases");
    cs.waves.emplace_back(start, end);
  }
  return cs;
}

double extinction_for_mean(double m_hat, OffspringFamilyForQ family) {
  if (m_hat <= 1.0) return 1.0;
  if (family == OffspringFamilyForQ::Geometric) return 1.0 / m_hat;
  // Poisson: smallest root of exp(m(q-1)) = q
  double lo = 0.0, hi = 1.0 - 1e-9;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (std::exp(m_hat * (mid - 1.0)) - mid > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<EarlyDetectionCell> early_detection_report(
    const CaseSeries& cs, int wave, const std::vector<int>& days,
    const std::vector<EstimatorConfig>& estimators, OffspringFamilyForQ family,
    std::uint64_t seed, int k_trunc) {
  auto [start, end] = cs.waves.at(wave);
  const int wave_len = end - start;
  std::vector<EarlyDetectionCell> cells;
  for (int n : days) {
    for (std::size_t e = 0; e < estimators.size(); ++e) {
      const EstimatorConfig& cfg = estimators[e];
      EarlyDetectionCell cell;
      cell.day = n;
      cell.estimator = cfg.name();
      if (n > wave_len || n < 2) {
        cells.push_back(cell);  // unavailable
        continue;
      }
      GenerationSeries series = cs.wave_series(wave, n);
      switch (cfg.kind) {
        case EstimatorConfig::Kind::Mle:
          cell.m_hat = mle_mean(series);
          cell.classification = classify_mean(cell.m_hat);
          break;
        case EstimatorConfig::Kind::HeydeImproper:
          cell.m_hat = heyde_p_supercritical(series, cfg.heyde_cumulative);
          cell.is_probability = true;
          cell.classification = classify_prob(cell.m_hat);
          break;
        case EstimatorConfig::Kind::GibbsDirichlet:
        case EstimatorConfig::Kind::GibbsDp: {
          GibbsConfig gc;
          gc.k_trunc = k_trunc;
          if (cfg.kind == EstimatorConfig::Kind::GibbsDirichlet)
            gc.prior = agnostic_dirichlet_prior(k_trunc, AgnosticVariant::A);
          else
            gc.prior = DpPrior(
                cfg.a, calibrate_agnostic_base(AgnosticFamily::Poisson).base);
          auto summary = chain_summary(
              run_chain(series, gc, SeedSpec{seed, (e + 1) * 100 + static_cast<std::uint64_t>(n)}));
          cell.m_hat = summary.m_hat;
          cell.classification = summary.classification;
          break;
        }
        default:
          throw std::invalid_argument(
              "early_detection_report: unsupported estimator " + cfg.name());
      }
      cell.available = true;
      if (!cell.is_probability) cell.q = extinction_for_mean(cell.m_hat, family);
      cells.push_back(cell);
    }
  }
  return cells;
}

std::string early_detection_text(const std::vector<EarlyDetectionCell>& cells) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << "day  estimator                     estimate  class          q\n";
  for (const auto& c : cells) {
    os.width(3);
    os << c.day << "  ";
    os << c.estimator;
    for (std::size_t i = c.estimator.size(); i < 30; ++i) os << ' ';
    if (!c.available) {
      os << "   n/a\n";
      continue;
    }
    os.width(8);
    os << c.m_hat << "  ";
    os << (c.classification == Classification::Supercritical ? "supercritical "
                                                             : "(sub)critical ");
    if (c.is_probability)
      os << "    -";
    else {
      os.width(5);
      os << c.q;
    }
    os << '\n';
  }
  return os.str();
}

std::string early_detection_json(const std::vector<EarlyDetectionCell>& cells) {
  json arr = json::array();
  for (const auto& c : cells) {
    json j;
    j["day"] = c.day;
    j["estimator"] = c.estimator;
    j["available"] = c.available;
    if (c.available) {
      j[c.is_probability ? "p_supercritical" : "m_hat"] = c.m_hat;
      j["classification"] =
          c.classification == Classification::Supercritical ? "supercritical"
                                                            : "subcritical_or_critical";
      if (!c.is_probability) j["q"] = c.q;
    }
    arr.push_back(j);
  }
  return arr.dump(2);
}

}  // namespace gw
