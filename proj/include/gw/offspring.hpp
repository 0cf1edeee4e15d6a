#ifndef GW_OFFSPRING_HPP
#define GW_OFFSPRING_HPP

#include <optional>
#include <string>
#include <vector>

#include "gw/rng.hpp"

namespace gw {

// An offspring law: finite PMF on {0..k}, Poisson(lambda), or
// Geometric(p) with P(X=j) = p(1-p)^j, j >= 0.  Immutable after
// construction; all members are pure.
class OffspringDistribution {
 public:
  enum class Family { Finite, Poisson, Geometric };

  static OffspringDistribution finite(std::vector<double> probs);
  static OffspringDistribution poisson(double lambda);
  static OffspringDistribution geometric(double p);

  // CLI format: poisson:<l> | geometric:<p> | finite:<p0,p1,...> |
  // poisson:agnostic | geometric:agnostic
  static OffspringDistribution parse(const std::string& spec);

  Family family() const { return family_; }
  double pmf(long long j) const;
  double cdf(long long j) const;
  double mean() const;
  double pgf(double s) const;

  // smallest M with CDF(M) >= 1/2, from the exact CDF (with a 1e-12
  // slack so analytically-exact half points are not missed to rounding)
  long long median() const;

  long long sample(RngStream& rng) const;

  // last support point with cumulative mass above 1 - tail_tol;
  // exact upper bound for finite laws
  long long support_bound(double tail_tol = 1e-12) const;

  // finite family only
  const std::vector<double>& probs() const;
  // lambda or p
  double param() const { return param_; }

  std::string to_string() const;

 private:
  OffspringDistribution(Family f, double param, std::vector<double> probs);
  Family family_;
  double param_;
  std::vector<double> probs_;
};

enum class AgnosticFamily { Poisson, Geometric, Discrete };

struct AgnosticBase {
  OffspringDistribution base;
  // DP concentration that reproduces the reference Dirichlet prior;
  // set for the discrete family only
  std::optional<double> concentration;
};

// Base measures whose induced prior on the offspring mean has median 1.
// Poisson uses the reference value lambda = 0.6954; the geometric
// parameter is kept at full precision 1 - sqrt(2)/2.  The discrete
// family needs k >= 2 and returns G0(0) = 1/a, G0(k) = (a-1)/a with
// a = 1 + log(2)/log(k).
AgnosticBase calibrate_agnostic_base(AgnosticFamily family, int k = 0);

inline constexpr double kAgnosticPoissonLambda = 0.6954;

}  // namespace gw

#endif
