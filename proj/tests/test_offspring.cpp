#include <doctest.h>

#include <cmath>

#include "gw/offspring.hpp"
#include "gw/rng.hpp"

using namespace gw;

TEST_CASE("pmf basics") {
  auto fin = OffspringDistribution::finite({0.4, 0.3, 0.2, 0.1});
  CHECK(fin.pmf(2) == doctest::Approx(0.2));
  CHECK(fin.pmf(7) == 0.0);
  auto poi = OffspringDistribution::poisson(1.0);
  CHECK(poi.pmf(0) == doctest::Approx(std::exp(-1.0)));
  auto geo = OffspringDistribution::geometric(0.5);
  CHECK(geo.pmf(1) == doctest::Approx(0.25));
}

TEST_CASE("mean") {
  CHECK(OffspringDistribution::finite({0.4, 0.3, 0.2, 0.1}).mean() ==
        doctest::Approx(1.0));
  CHECK(OffspringDistribution::poisson(0.6954).mean() == doctest::Approx(0.6954));
  CHECK(OffspringDistribution::geometric(0.5).mean() == doctest::Approx(1.0));
}

TEST_CASE("pgf values and properties") {
  auto fin = OffspringDistribution::finite({0.4, 0.3, 0.2, 0.1});
  CHECK(fin.pgf(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fin.pgf(0.5) == doctest::Approx(0.6125));
  auto poi = OffspringDistribution::poisson(1.0);
  CHECK(poi.pgf(0.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(poi.pgf(1.0) == doctest::Approx(1.0).epsilon(1e-14));

  // nondecreasing + convex on a grid; derivative at 1 equals the mean
  for (const auto& d :
       {fin, poi, OffspringDistribution::geometric(0.3)}) {
    double prev = d.pgf(0.0);
    double prev_diff = -1.0;
    for (int i = 1; i <= 100; ++i) {
      double s = i / 100.0;
      double v = d.pgf(s);
      CHECK(v >= prev - 1e-12);
      double diff = v - prev;
      CHECK(diff >= prev_diff - 1e-12);  // convexity
      prev = v;
      prev_diff = diff;
    }
    double h = 1e-6;
    double deriv = (d.pgf(1.0) - d.pgf(1.0 - h)) / h;
    CHECK(deriv == doctest::Approx(d.mean()).epsilon(1e-4));
  }
}

TEST_CASE("finite mean matches sum j*pmf(j)") {
  auto fin = OffspringDistribution::finite({0.1, 0.2, 0.3, 0.25, 0.15});
  double m = 0.0;
  for (int j = 0; j <= 4; ++j) m += j * fin.pmf(j);
  CHECK(fin.mean() == doctest::Approx(m).epsilon(1e-15));
}

TEST_CASE("pmf sums to one") {
  for (const auto& d : {OffspringDistribution::poisson(0.6954),
                        OffspringDistribution::poisson(2.5),
                        OffspringDistribution::geometric(0.3)}) {
    long long jmax = d.support_bound(1e-12);
    double acc = 0.0;
    for (long long j = 0; j <= jmax; ++j) acc += d.pmf(j);
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("median") {
  CHECK(OffspringDistribution::poisson(0.6954).median() == 1);
  CHECK(OffspringDistribution::geometric(1.0 - std::sqrt(2.0) / 2.0).median() == 1);
  CHECK(OffspringDistribution::poisson(0.5).median() == 0);
  // CDF bracket for the calibrated Poisson: F(0) < 1/2 <= F(1)
  auto poi = OffspringDistribution::poisson(0.6954);
  CHECK(poi.cdf(0) < 0.5);
  CHECK(poi.cdf(1) >= 0.5);
}

TEST_CASE("agnostic bases") {
  auto poi = calibrate_agnostic_base(AgnosticFamily::Poisson);
  CHECK(poi.base.param() == doctest::Approx(0.6954));
  CHECK(poi.base.median() == 1);

  auto geo = calibrate_agnostic_base(AgnosticFamily::Geometric);
  CHECK(geo.base.param() == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK(geo.base.median() == 1);

  auto disc = calibrate_agnostic_base(AgnosticFamily::Discrete, 4);
  REQUIRE(disc.concentration.has_value());
  CHECK(*disc.concentration == doctest::Approx(1.5));
  CHECK(disc.base.pmf(0) == doctest::Approx(2.0 / 3.0));
  CHECK(disc.base.pmf(4) == doctest::Approx(1.0 / 3.0));
  CHECK(disc.base.pmf(2) == 0.0);

  CHECK_THROWS(calibrate_agnostic_base(AgnosticFamily::Discrete, 1));
}

TEST_CASE("finite pmf validation and trailing-zero trim") {
  CHECK_THROWS(OffspringDistribution::finite({0.5, 0.6}));
  CHECK_THROWS(OffspringDistribution::finite({-0.1, 1.1}));
  auto d = OffspringDistribution::finite({0.5, 0.5, 0.0, 0.0});
  CHECK(d.probs().size() == 2);
}

TEST_CASE("parse") {
  CHECK(OffspringDistribution::parse("poisson:1.5").param() == doctest::Approx(1.5));
  CHECK(OffspringDistribution::parse("geometric:0.25").param() == doctest::Approx(0.25));
  CHECK(OffspringDistribution::parse("finite:0.4,0.3,0.2,0.1").probs().size() == 4);
  CHECK(OffspringDistribution::parse("poisson:agnostic").param() ==
        doctest::Approx(0.6954));
  CHECK_THROWS(OffspringDistribution::parse("zeta:1.2"));
}

TEST_CASE("sampling matches pmf") {
  RngStream rng(SeedSpec{42, 0});
  auto d = OffspringDistribution::finite({0.4, 0.3, 0.2, 0.1});
  const int n = 200000;
  std::vector<int> hist(4, 0);
  for (int i = 0; i < n; ++i) ++hist[d.sample(rng)];
  for (int j = 0; j < 4; ++j) {
    double p = d.pmf(j);
    double se = std::sqrt(p * (1 - p) / n);
    CHECK(std::fabs(hist[j] / double(n) - p) < 4 * se);
  }
}
