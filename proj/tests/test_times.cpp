#include <doctest.h>

#include <cmath>

#include "qwalk/errors.hpp"
#include "qwalk/times.hpp"

using namespace qwalk;

namespace {

const WalkParams kFig3{200, kPi / 4, kPi / 3, kPi / 6, 1.0};
const CoinDensity kMixed{0.5, 0.5, {}};

// density_seminorm measured from I/2 is the spectral norm of the traceless part.
double from_center(const CoinDensity& delta) {
  return density_seminorm({0.5 + delta.p_left, 0.5 + delta.p_right, delta.q}, kMixed);
}

CoinDensity scaled_offset(const CoinDensity& rho, const CoinDensity& ref, double lambda) {
  return {lambda * (rho.p_left - ref.p_left), lambda * (rho.p_right - ref.p_right),
          lambda * (rho.q - ref.q)};
}

}  // namespace

TEST_CASE("density_seminorm") {
  const CoinDensity pure{1.0, 0.0, {}};
  const CoinDensity other{0.8, 0.2, cplx(0.1, -0.2)};
  CHECK(density_seminorm(other, other) == 0.0);
  CHECK(density_seminorm(pure, kMixed) == doctest::Approx(0.5));
  CHECK(density_seminorm(pure, other) == density_seminorm(other, pure));
}

TEST_CASE("seminorm axioms along a trajectory") {
  const WalkParams p{7, 0.5, 1.4, 0.9, 1.0};
  AveragedDensitySeries series(decompose(localized_initial_state(p), p.theta));
  const CoinDensity lim = series.asymptotic();
  CoinDensity prev = series.next();
  for (int t = 2; t <= 400; ++t) {
    const CoinDensity cur = series.next();
    const CoinDensity d1 = scaled_offset(cur, lim, 1.0);
    const CoinDensity d2 = scaled_offset(prev, lim, -0.7);
    for (double lambda : {-1.0, 0.25, 0.5}) {
      CHECK(from_center(scaled_offset(cur, lim, lambda)) ==
            doctest::Approx(std::abs(lambda) * from_center(d1)).epsilon(1e-12));
    }
    const CoinDensity sum{d1.p_left + d2.p_left, d1.p_right + d2.p_right, d1.q + d2.q};
    CHECK(from_center(sum) <= from_center(d1) + from_center(d2) + 1e-15);
    CHECK(density_seminorm(cur, lim) <= density_seminorm(cur, prev) + density_seminorm(prev, lim) + 1e-15);
    prev = cur;
  }
}

TEST_CASE("linearization_constant") {
  CHECK(linearization_constant(0.0, 1.0) == 2.0);
  CHECK(linearization_constant(0.5, 2.0) == doctest::Approx(2 * std::pow(std::cosh(1.0), 2)));
}

TEST_CASE("mixing_time") {
  SUBCASE("thresholds at or above 1/2 are met immediately") {
    for (double eps : {0.5, 0.6, 10.0}) {
      const auto r = mixing_time({5, 0.4, 2.0, 1.0, 1.0}, eps, 1000);
      CHECK(r.tau == 1);
      CHECK(r.last_violation == 0);
      CHECK(r.satisfied);
    }
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(mixing_time(kFig3, 0.0, 10), DomainError);
    CHECK_THROWS_AS(mixing_time(kFig3, 1e-3, 0), DomainError);
  }
  SUBCASE("a short horizon is flagged, not accepted") {
    const auto r = mixing_time(kFig3, 1e-4, 100);
    CHECK_FALSE(r.satisfied);
    CHECK(r.last_violation == 100);
    CHECK(r.t_max == 100);
  }
  SUBCASE("roughly 1/epsilon at large N") {
    const double eps[] = {2e-3, 1e-3, 2e-4, 1e-4};
    const auto scan = scan_convergence(kFig3, eps, {}, 200000);
    for (const auto& r : scan.mixing) CHECK(r.satisfied);
    const auto& m = scan.mixing;
    const double halving_small = double(m[3].tau) / double(m[2].tau);
    const double decade = double(m[3].tau) / double(m[1].tau);
    CHECK(halving_small > 1.4);
    CHECK(halving_small < 2.8);
    CHECK(decade > 5.0);
    CHECK(decade < 20.0);
  }
  SUBCASE("independent of N for large N") {
    WalkParams small = kFig3;
    small.n_sites = 50;
    const auto a = mixing_time(small, 1e-2, 100000);
    const auto b = mixing_time(kFig3, 1e-2, 100000);
    CHECK(std::abs(double(a.tau - b.tau)) <= 0.1 * double(b.tau));
  }
  SUBCASE("monotone in epsilon") {
    const double eps[] = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4};
    const auto scan = scan_convergence({20, 0.7, 2.0, 0.3, 1.0}, eps, eps, 100000);
    for (std::size_t i = 1; i < scan.mixing.size(); ++i) {
      CHECK(scan.mixing[i].tau >= scan.mixing[i - 1].tau);
      CHECK(scan.thermalization[i].tau >= scan.thermalization[i - 1].tau);
    }
  }
}

TEST_CASE("thermalization_time") {
  SUBCASE("a source already at its limit thermalizes at t = 1") {
    const CoinDensity lim{0.7, 0.3, cplx(0.05, 0.1)};
    const double eps[] = {1e-8};
    const auto scan = scan_convergence([&](std::int64_t) { return lim; }, lim, 1.0, eps, eps, 1000);
    CHECK(scan.mixing[0].tau == 1);
    CHECK(scan.thermalization[0].tau == 1);
  }
  SUBCASE("pure limit has no finite beta") {
    const CoinDensity pure{1.0, 0.0, {}};
    const double eps[] = {1e-3};
    CHECK_THROWS_AS(scan_convergence([&](std::int64_t) { return pure; }, pure, 1.0, {}, eps, 10),
                    DomainError);
    CHECK_NOTHROW(scan_convergence([&](std::int64_t) { return pure; }, pure, 1.0, eps, {}, 10));
  }
  SUBCASE("mixing at eps matches thermalization at c * eps") {
    for (double e : {1e-2, 1e-3, 1e-4}) {
      const auto mix = mixing_time(kFig3, e, 200000);
      const auto c = mix.c_constant;
      const auto th = thermalization_time(kFig3, c * e, 200000);
      CAPTURE(e);
      CHECK(std::abs(double(mix.tau - th.tau)) <= 3);
      CHECK(c == doctest::Approx(th.c_constant));
    }
  }
  SUBCASE("for small epsilon thermalization is slower by about c") {
    const auto mix = mixing_time(kFig3, 1e-4, 400000);
    const auto th = thermalization_time(kFig3, 1e-4, 400000);
    const double ratio = double(th.tau) / double(mix.tau);
    CHECK(ratio == doctest::Approx(mix.c_constant).epsilon(0.35));
  }
}

TEST_CASE("deviation series follow the linearized relation") {
  const auto dev = deviation_series(kFig3, 20000);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 2000; i < dev.beta.size(); ++i) {
    sxx += dev.beta[i] * dev.beta[i];
    sxy += dev.beta[i] * dev.lambda_plus[i];
  }
  const double slope = sxy / sxx;
  CHECK(slope == doctest::Approx(1.0 / dev.c_constant).epsilon(0.05));
}
