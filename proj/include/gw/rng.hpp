#ifndef GW_RNG_HPP
#define GW_RNG_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace gw {

// Identifies one reproducible random stream.  Distinct (seed, stream)
// pairs give independent generator states, so replication r of a Monte
// Carlo run uses stream r and may execute on any thread.
struct SeedSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Splittable counter-style generator built on splitmix64 (Steele, Lea &
// Flood 2014; Vigna's fixed-increment variant).  The stream index is
// folded into the initial state through the same finalizer, which is the
// generator contract the regression suite is pinned to.
class RngStream {
 public:
  explicit RngStream(SeedSpec s);

  std::uint64_t next_u64();
  // uniform on (0, 1)
  double uniform();

  double normal();
  double exponential();
  long long poisson(double lambda);
  long long geometric(double p);  // P(X=j) = p(1-p)^j, j >= 0
  double gamma(double shape);     // unit scale, shape > 0
  double beta(double a, double b);
  std::vector<double> dirichlet(std::span<const double> alpha);
  // index into probs; probs need not be normalized
  int categorical(std::span<const double> probs);

 private:
  std::uint64_t state_;
  bool have_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace gw

#endif
