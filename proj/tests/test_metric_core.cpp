#include <doctest.h>

#include <cmath>
#include <random>

#include "flatspace/errors.hpp"
#include "flatspace/metric_core.hpp"

using namespace flatspace;

namespace {

double max_gamma_error(const SpacetimeMetric& m) {
  double e = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e = std::max(e, std::abs(m.gamma[i][j] - (i == j ? 1.0 : 0.0)));
  return e;
}

double max_inverse_error(const SpacetimeMetric& m) {
  double e = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += m.g[i][k] * m.ginv[k][j];
      e = std::max(e, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return e;
}

}  // namespace

TEST_CASE("metric of a vanishing potential is Minkowski") {
  const SpacetimeMetric m = build_metric(PotentialValue{});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double eta = i != j ? 0.0 : (i == 0 ? 1.0 : -1.0);
      CHECK(m.g[i][j] == eta);
    }
}

TEST_CASE("central metric component") {
  const double r_o = 1480.0, r = 7e8;
  const SpacetimeMetric m = build_metric(central_potential(r_o), {r, 0.0, 0.0});
  CHECK(m.g[0][0] == doctest::Approx(1.0 / ((1.0 + r_o / r) * (1.0 + r_o / r))).epsilon(1e-15));
}

TEST_CASE("random potentials keep the spatial metric flat") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> g0(-1.0, 0.6), gi(-0.5, 0.5);
  double worst_gamma = 0.0, worst_inv = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const SpacetimeMetric m = build_metric(PotentialValue{g0(rng), {gi(rng), gi(rng), gi(rng)}});
    worst_gamma = std::max(worst_gamma, max_gamma_error(m));
    worst_inv = std::max(worst_inv, max_inverse_error(m));
  }
  CHECK(worst_gamma < 1e-12);
  CHECK(worst_inv < 1e-12);
}

TEST_CASE("gauge shifts keep the spatial metric flat") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0), pos(-5.0, 5.0);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double a = coef(rng), b = coef(rng), c = coef(rng);
    const FourPotential base = rotating_central_potential(0.3, 0.2, {0.0, 0.1 * a, 0.1});
    const FourPotential shifted = gauge_shift(base, [=](const Vec3& x) {
      return 0.05 * (a * x.x * x.y + b * std::sin(x.z) + c * x.x);
    });
    Vec3 at{pos(rng), pos(rng), pos(rng)};
    if (norm(at) < 1.0) at = at + Vec3{2.0, 0.0, 0.0};
    worst = std::max(worst, max_gamma_error(build_metric(shifted, at)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("gauge shift changes the metric") {
  const FourPotential base = central_potential(1.0);
  const FourPotential shifted = gauge_shift(base, [](const Vec3& x) { return 0.1 * x.x; });
  const Vec3 at{3.0, 1.0, 0.0};
  CHECK(std::abs(shifted.at(at).gi.x - 0.1) < 1e-8);
  CHECK(build_metric(shifted, at).g[0][1] != build_metric(base, at).g[0][1]);
}

TEST_CASE("potential range is enforced") {
  CHECK_THROWS_AS(build_metric(PotentialValue{1.0, {}}), Error);
  CHECK_THROWS_AS(build_metric(PotentialValue{std::nan(""), {}}), Error);
  CHECK_THROWS_AS(central_potential(1.0).at({0.0, 0.0, 0.0}), Error);
  CHECK_THROWS_AS(potential_preset("no-such", {}), Error);
}

TEST_CASE("finite-difference connection matches the central field") {
  const double r_o = 1.0, r = 10.0;
  const Connection fd = christoffels(central_potential(r_o), {r, 0.0, 0.0});
  const double q = 1.0 + r_o / r;
  // Gamma^r_tt = 1/2 d_r g00 and Gamma^t_tr = 1/2 d_r ln g00 for g00 = q^-2.
  CHECK(fd[1][0][0] == doctest::Approx(r_o / (r * r * q * q * q)).epsilon(1e-8));
  CHECK(fd[0][0][1] == doctest::Approx(r_o / (r * r * q)).epsilon(1e-8));
  CHECK(fd[0][1][0] == doctest::Approx(fd[0][0][1]).epsilon(1e-12));
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j)
      for (int k = 1; k < 4; ++k) CHECK(std::abs(fd[i][j][k]) < 1e-12);
}

TEST_CASE("closed-form spherical connection") {
  const double r_o = 2.0, r = 5.0, th = 0.7;
  const ChristoffelSet c = christoffels_central(r_o, r, th);
  const double q = 1.0 + r_o / r;
  CHECK(c.r_tt == doctest::Approx(r_o / (r * r * q * q * q)));
  CHECK(c.t_tr == doctest::Approx(r_o / (r * r * q)));
  CHECK(c.r_rr == 0.0);
  CHECK(c.r_thth == doctest::Approx(-r));
  CHECK(c.r_phph == doctest::Approx(-r * std::sin(th) * std::sin(th)));
  CHECK(c.th_rth == doctest::Approx(1.0 / r));
  CHECK(c.ph_rph == doctest::Approx(1.0 / r));
  CHECK(c.th_phph == doctest::Approx(-std::sin(th) * std::cos(th)));
  CHECK(c.ph_phth == doctest::Approx(std::cos(th) / std::sin(th)));
  const Connection full = c.full();
  CHECK(full[2][1][2] == full[2][2][1]);
}

TEST_CASE("grid potential interpolates linear data exactly") {
  PotentialGrid g;
  g.origin = {-1.0, -1.0, -1.0};
  g.spacing = 0.5;
  g.nx = g.ny = g.nz = 5;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        const Vec3 x = g.origin + g.spacing * Vec3{double(i), double(j), double(k)};
        g.g0.push_back(-0.1 + 0.01 * x.x - 0.02 * x.y + 0.03 * x.z);
        g.gi.push_back({0.01 * x.z, 0.0, -0.01 * x.x});
      }
  const FourPotential p = grid_potential(g);
  const PotentialValue v = p.at({0.3, -0.2, 0.45});
  CHECK(v.g0 == doctest::Approx(-0.1 + 0.003 + 0.004 + 0.0135).epsilon(1e-13));
  CHECK(v.gi.x == doctest::Approx(0.0045).epsilon(1e-13));
  CHECK(std::abs(max_gamma_error(build_metric(v))) < 1e-12);
}

TEST_CASE("proper time rate reaches the circular value") {
  for (double k : {1e-8, 1e-4, 0.01, 0.1, 0.3, 0.5}) {
    const double E = 1.0 / std::sqrt(1.0 + k);
    const double l = std::sqrt(k) / std::pow(1.0 + k, 1.5);
    const ProperTimeRate p = proper_time_rate(l, k, E);
    CHECK(std::abs(p.rate - 1.0 / (1.0 + k)) < 1e-12);
    CHECK(p.iterations <= 50);
  }
}

TEST_CASE("proper time rate at rest and bounds") {
  CHECK(proper_time_rate(0.0, 0.0, 1.0).rate == 1.0);
  CHECK(proper_time_rate(0.0, 0.2, 1.0).rate == doctest::Approx(0.8).epsilon(1e-14));
  CHECK_THROWS_AS(proper_time_rate(1.0, 0.1, 1.0), Error);
  CHECK_THROWS_AS(proper_time_rate(-0.1, 0.1, 1.0), Error);
}
