#include "gw/offspring.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gw {

namespace {

std::vector<double> trim_and_check(std::vector<double> probs) {
  while (probs.size() > 1 && probs.back() == 0.0) probs.pop_back();
  if (probs.empty()) throw std::invalid_argument("finite pmf: empty");
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw std::invalid_argument("finite pmf: negative entry");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("finite pmf: entries must sum to 1");
  for (double& p : probs) p /= sum;
  return probs;
}

}  // namespace

OffspringDistribution::OffspringDistribution(Family f, double param,
                                             std::vector<double> probs)
    : family_(f), param_(param), probs_(std::move(probs)) {}

OffspringDistribution OffspringDistribution::finite(std::vector<double> probs) {
  return {Family::Finite, 0.0, trim_and_check(std::move(probs))};
}

OffspringDistribution OffspringDistribution::poisson(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("poisson: lambda must be > 0");
  return {Family::Poisson, lambda, {}};
}

OffspringDistribution OffspringDistribution::geometric(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("geometric: p must be in (0,1)");
  return {Family::Geometric, p, {}};
}

double OffspringDistribution::pmf(long long j) const {
  if (j < 0) throw std::invalid_argument("pmf: j must be >= 0");
  switch (family_) {
    case Family::Finite:
      return j < static_cast<long long>(probs_.size()) ? probs_[j] : 0.0;
    case Family::Poisson:
      return std::exp(-param_ + j * std::log(param_) - std::lgamma(j + 1.0));
    case Family::Geometric:
      return param_ * std::pow(1.0 - param_, static_cast<double>(j));
  }
  return 0.0;
}

double OffspringDistribution::cdf(long long j) const {
  if (j < 0) return 0.0;
  switch (family_) {
    case Family::Finite: {
      double acc = 0.0;
      for (long long i = 0; i <= j && i < static_cast<long long>(probs_.size()); ++i)
        acc += probs_[i];
      return std::min(acc, 1.0);
    }
    case Family::Poisson: {
      double acc = 0.0;
      for (long long i = 0; i <= j; ++i) acc += pmf(i);
      return std::min(acc, 1.0);
    }
    case Family::Geometric:
      return 1.0 - std::pow(1.0 - param_, static_cast<double>(j) + 1.0);
  }
  return 0.0;
}

double OffspringDistribution::mean() const {
  switch (family_) {
    case Family::Finite: {
      double m = 0.0;
      for (std::size_t j = 0; j < probs_.size(); ++j) m += j * probs_[j];
      return m;
    }
    case Family::Poisson:
      return param_;
    case Family::Geometric:
      return (1.0 - param_) / param_;
  }
  return 0.0;
}

double OffspringDistribution::pgf(double s) const {
  if (s < 0.0 || s > 1.0) throw std::invalid_argument("pgf: s must be in [0,1]");
  switch (family_) {
    case Family::Finite: {
      // Horner
      double acc = 0.0;
      for (auto it = probs_.rbegin(); it != probs_.rend(); ++it) acc = acc * s + *it;
      return acc;
    }
    case Family::Poisson:
      return std::exp(param_ * (s - 1.0));
    case Family::Geometric:
      return param_ / (1.0 - (1.0 - param_) * s);
  }
  return 0.0;
}

long long OffspringDistribution::median() const {
  // 1e-12 slack: exact half points (e.g. geometric with 1-p = sqrt(2)/2)
  // must not be pushed up by the last rounding error
  const double target = 0.5 - 1e-12;
  long long bound = support_bound(1e-15);
  double acc = 0.0;
  for (long long j = 0;; ++j) {
    acc += pmf(j);
    if (acc >= target) return j;
    if (j > bound + 1) return j;  // unreachable for valid laws
  }
}

long long OffspringDistribution::sample(RngStream& rng) const {
  switch (family_) {
    case Family::Finite:
      return rng.categorical(probs_);
    case Family::Poisson:
      return rng.poisson(param_);
    case Family::Geometric:
      return rng.geometric(param_);
  }
  return 0;
}

long long OffspringDistribution::support_bound(double tail_tol) const {
  switch (family_) {
    case Family::Finite:
      return static_cast<long long>(probs_.size()) - 1;
    case Family::Poisson:
    case Family::Geometric: {
      double acc = 0.0;
      for (long long j = 0; j < 100000; ++j) {
        acc += pmf(j);
        if (1.0 - acc < tail_tol) return j;
      }
      throw std::runtime_error("support_bound: tail does not vanish");
    }
  }
  return 0;
}

const std::vector<double>& OffspringDistribution::probs() const {
  if (family_ != Family::Finite)
    throw std::logic_error("probs(): not a finite pmf");
  return probs_;
}

std::string OffspringDistribution::to_string() const {
  std::ostringstream os;
  os.precision(12);
  switch (family_) {
    case Family::Finite: {
      os << "finite:";
      for (std::size_t j = 0; j < probs_.size(); ++j) {
        if (j) os << ',';
        os << probs_[j];
      }
      break;
    }
    case Family::Poisson:
      os << "poisson:" << param_;
      break;
    case Family::Geometric:
      os << "geometric:" << param_;
      break;
  }
  return os.str();
}

OffspringDistribution OffspringDistribution::parse(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("offspring spec: expected <family>:<params>");
  std::string family = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  if (family == "poisson") {
    if (rest == "agnostic")
      return calibrate_agnostic_base(AgnosticFamily::Poisson).base;
    return poisson(std::stod(rest));
  }
  if (family == "geometric") {
    if (rest == "agnostic")
      return calibrate_agnostic_base(AgnosticFamily::Geometric).base;
    return geometric(std::stod(rest));
  }
  if (family == "finite") {
    std::vector<double> probs;
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) probs.push_back(std::stod(tok));
    return finite(std::move(probs));
  }
  throw std::invalid_argument("offspring spec: unknown family '" + family + "'");
}

AgnosticBase calibrate_agnostic_base(AgnosticFamily family, int k) {
  switch (family) {
    case AgnosticFamily::Poisson:
      return {OffspringDistribution::poisson(kAgnosticPoissonLambda), {}};
    case AgnosticFamily::Geometric:
      return {OffspringDistribution::geometric(1.0 - std::sqrt(2.0) / 2.0), {}};
    case AgnosticFamily::Discrete: {
      if (k < 2)
        throw std::invalid_argument(
            "agnostic discrete base: k must be >= 2 (needs a mass point above 1)");
      double a = 1.0 + std::log(2.0) / std::log(static_cast<double>(k));
      std::vector<double> probs(k + 1, 0.0);
      probs[0] = 1.0 / a;
      probs[k] = (a - 1.0) / a;
      return {OffspringDistribution::finite(std::move(probs)), a};
    }
  }
  throw std::invalid_argument("agnostic base: unknown family");
}

}  // namespace gw
