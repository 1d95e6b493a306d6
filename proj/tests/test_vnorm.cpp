#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "varleb/vnorm.hpp"

using namespace varleb;

namespace {

SampledField const_field(const Lattice& lat, double v) {
  return make_field(lat, [v](std::array<double, 3>) { return v; });
}

ExponentProfile const_profile(const Lattice& lat, double p) {
  return summarize_exponent(const_field(lat, p), p);
}

Cube right_unit_cube() {
  Cube q;
  q.dim = 1;
  q.center = {0.5, 0.0, 0.0};
  q.edge = 1.0;
  return q;
}

SampledField lognormal_field(const Lattice& lat, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 0.7);
  SampledField f = const_field(lat, 1.0);
  for (long i = 0; i < lat.num_points(); ++i) f[i] = std::exp(gauss(rng));
  return f;
}

}  // namespace

TEST_CASE("modular of a constant at constant exponent is exact") {
  const Lattice lat = build_lattice(1, 1.0, 64);
  const ExponentProfile prof = const_profile(lat, 3.0);
  const SampledField f = const_field(lat, 2.0);
  CHECK(modular(f, prof, right_unit_cube()) == 8.0);
  CHECK(modular(f, prof) == 16.0);
}

TEST_CASE("quadratic norm against the closed form") {
  const Lattice lat = build_lattice(1, 1.0, 1024);
  const ExponentProfile prof = const_profile(lat, 2.0);
  const SampledField f =
      make_field(lat, [](std::array<double, 3> x) { return x[0]; });
  const NormResult r = norm(f, prof, right_unit_cube());
  CHECK(r.value == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-5));
  CHECK(r.iterations > 0);
  CHECK(r.bracket_lo <= r.value);
  CHECK(r.bracket_hi >= r.value);
}

TEST_CASE("norm root against an independent solve") {
  // with p(x) = 1 + x on (0,1] and w = k^{1/p(.)}, the norm solves
  // k = t^2 log(t) / (t - 1); run Newton on that equation separately
  const Lattice lat = build_lattice(1, 1.0, 16384);
  const SampledField p =
      make_field(lat, [](std::array<double, 3> x) { return 1.0 + std::abs(x[0]); });
  const ExponentProfile prof = summarize_exponent(p, 2.0);
  const double k = 2.0;
  SampledField w = p;
  for (long i = 0; i < lat.num_points(); ++i) w[i] = std::pow(k, 1.0 / p[i]);
  const double measured = norm(w, prof, right_unit_cube()).value;

  double t = 1.6;
  for (int it = 0; it < 60; ++it) {
    const double g = t * t * std::log(t) / (t - 1.0) - k;
    const double dg = (2.0 * t * std::log(t) + t) / (t - 1.0) -
                      t * t * std::log(t) / ((t - 1.0) * (t - 1.0));
    t -= g / dg;
  }
  CHECK(measured == doctest::Approx(t).epsilon(1e-6));
}

TEST_CASE("unit modular at the norm") {
  const Lattice lat = build_lattice(1, 1.0, 256);
  const Cube box = box_cube(lat);
  const SampledField f = lognormal_field(lat, 99);
  const SampledField ramp =
      make_field(lat, [](std::array<double, 3> x) { return 1.0 + std::abs(x[0]); });
  const ExponentProfile profs[] = {const_profile(lat, 2.0),
                                   summarize_exponent(ramp, 2.0)};
  for (const ExponentProfile& prof : profs)
    for (double scale : {1.0, 1e-2, 1e3}) {
      SampledField g = f;
      for (long i = 0; i < lat.num_points(); ++i) g[i] *= scale;
      const NormResult r = norm(g, prof, box);
      CHECK(std::abs(r.modular_at_value - 1.0) <= 1e-8);
    }
}

TEST_CASE("norm sits inside the modular power bracket") {
  const Lattice lat = build_lattice(1, 1.0, 256);
  const Cube box = box_cube(lat);
  const SampledField ramp =
      make_field(lat, [](std::array<double, 3> x) { return 1.5 + x[0] * x[0]; });
  const ExponentProfile prof = summarize_exponent(ramp, 1.5);
  for (double scale : {1e-2, 0.5, 1.0, 40.0}) {
    SampledField g = lognormal_field(lat, 7);
    for (long i = 0; i < lat.num_points(); ++i) g[i] *= scale;
    const double rho = modular(g, prof, box);
    const double v = norm(g, prof, box).value;
    const double a = std::pow(rho, 1.0 / prof.p_plus);
    const double b = std::pow(rho, 1.0 / prof.p_minus);
    const double lo = std::min(a, b), hi = std::max(a, b);
    CHECK(v >= lo * (1.0 - 1e-10));
    CHECK(v <= hi * (1.0 + 1e-10));
  }
}

TEST_CASE("norm homogeneity") {
  const Lattice lat = build_lattice(1, 1.0, 256);
  const Cube box = box_cube(lat);
  const SampledField ramp =
      make_field(lat, [](std::array<double, 3> x) { return 2.0 + x[0]; });
  const ExponentProfile prof = summarize_exponent(ramp, 2.0);
  const SampledField f = lognormal_field(lat, 11);
  const double base = norm(f, prof, box).value;
  for (double c : {1e-3, 1.0, 1e3}) {
    SampledField g = f;
    for (long i = 0; i < lat.num_points(); ++i) g[i] *= c;
    const double scaled = norm(g, prof, box).value;
    CHECK(scaled == doctest::Approx(c * base).epsilon(1e-10));
  }
}

TEST_CASE("norm monotonicity") {
  const Lattice lat = build_lattice(1, 1.0, 256);
  const Cube box = box_cube(lat);
  const ExponentProfile prof = const_profile(lat, 2.5);
  const SampledField f = lognormal_field(lat, 13);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SampledField g = f;
  for (long i = 0; i < lat.num_points(); ++i) g[i] *= 1.0 + u(rng);
  CHECK(norm(f, prof, box).value <=
        norm(g, prof, box).value * (1.0 + 1e-12));
}

TEST_CASE("zero field has zero norm") {
  const Lattice lat = build_lattice(1, 1.0, 64);
  const ExponentProfile prof = const_profile(lat, 2.0);
  const NormResult r = norm(const_field(lat, 0.0), prof, box_cube(lat));
  CHECK(r.value == 0.0);
  CHECK(r.modular_at_value == 0.0);
  CHECK(r.iterations == 0);
}

TEST_CASE("overflowing modular raises") {
  const Lattice lat = build_lattice(1, 1.0, 64);
  const ExponentProfile prof = const_profile(lat, 3.0);
  const SampledField f = const_field(lat, 1e200);
  CHECK_THROWS_AS(norm(f, prof, box_cube(lat)), numeric_error);
}

TEST_CASE("indicator norm and its volume-power squeeze") {
  const Lattice lat = build_lattice(1, 1.0, 1024);
  const ExponentProfile prof = const_profile(lat, 2.0);
  const IndicatorCheck box = indicator_norm_check(prof, box_cube(lat));
  CHECK(box.norm_value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(box.ratio_pq == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(box.floor_ok);

  const SampledField ramp = make_field(
      lat, [](std::array<double, 3> x) { return 3.0 - 2.0 * std::abs(x[0]); });
  const ExponentProfile vprof = summarize_exponent(ramp, 1.0);
  const IndicatorCheck c = indicator_norm_check(vprof, right_unit_cube());
  CHECK(c.norm_value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c.p_q == doctest::Approx(2.0 / std::log(3.0)).epsilon(1e-6));
  CHECK(c.floor_ok);
}

TEST_CASE("nested indicator norms respect the volume-power envelope") {
  const Lattice lat = build_lattice(1, 1.0, 1024);
  const SampledField ramp = make_field(
      lat, [](std::array<double, 3> x) { return 3.0 - 2.0 * std::abs(x[0]); });
  const ExponentProfile prof = summarize_exponent(ramp, 1.0);
  const CubeFamily fam = dyadic_family(lat, 2, 2, false);
  const Cube big = box_cube(lat);
  const double norm_big = indicator_norm(prof, big).value;
  for (const Cube& q : fam.cubes) {
    const double ratio = indicator_norm(prof, q).value / norm_big;
    const double vr = q.volume() / big.volume();
    CHECK(ratio >= std::pow(vr, 1.0 / prof.p_minus) / 36.0);
    CHECK(ratio <= std::pow(vr, 1.0 / prof.p_plus) * 36.0);
  }
}

TEST_CASE("pairing against conjugate norms") {
  const Lattice lat = build_lattice(1, 1.0, 4096);
  const ExponentProfile prof = const_profile(lat, 2.0);
  const SampledField f =
      make_field(lat, [](std::array<double, 3> x) { return x[0]; });
  const SampledField g =
      make_field(lat, [](std::array<double, 3> x) { return 1.0 - x[0]; });
  const HolderReport rep = holder_pairing(f, g, prof, right_unit_cube());
  CHECK(rep.integral == doctest::Approx(1.0 / 6.0).epsilon(1e-5));
  CHECK(rep.norm_f == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-5));
  CHECK(rep.ratio == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(rep.within_budget);
}

TEST_CASE("norm convexification identity") {
  const Lattice lat = build_lattice(1, 1.0, 512);
  const SampledField ramp = make_field(
      lat, [](std::array<double, 3> x) { return 3.0 - 2.0 * std::abs(x[0]); });
  const ExponentProfile prof = summarize_exponent(ramp, 1.0);
  const SampledField f =
      make_field(lat, [](std::array<double, 3> x) { return std::exp(x[0]); });
  for (double r : {0.5, 1.0, 2.0}) {
    const ConvexifyReport rep = convexify_check(f, prof, r, box_cube(lat));
    CHECK(rep.rel_gap <= 1e-8);
    CHECK(rep.lhs == doctest::Approx(rep.rhs).epsilon(1e-8));
  }
}
