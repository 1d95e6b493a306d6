#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "varleb/exponents.hpp"

using namespace varleb;

namespace {

SampledField const_field(const Lattice& lat, double v) {
  return make_field(lat, [v](std::array<double, 3>) { return v; });
}

}  // namespace

TEST_CASE("constant profile summary") {
  const Lattice lat = build_lattice(1, 1.0, 64);
  const ExponentProfile prof = summarize_exponent(const_field(lat, 2.5), 2.5);
  CHECK(prof.p_minus == doctest::Approx(2.5));
  CHECK(prof.p_plus == doctest::Approx(2.5));
  CHECK(prof.p_infty == doctest::Approx(2.5));
  CHECK(!prof.p_infty_estimated);
  CHECK(prof.c0 == doctest::Approx(0.0));
  CHECK(prof.c_infty == doctest::Approx(0.0));
}

TEST_CASE("estimated limit exponent comes from the outer shell") {
  const Lattice lat = build_lattice(1, 2.0, 256);
  const SampledField p =
      make_field(lat, [](std::array<double, 3> x) { return 1.0 + std::abs(x[0]); });
  const ExponentProfile prof = summarize_exponent(p, std::nullopt);
  CHECK(prof.p_infty_estimated);
  CHECK(prof.p_infty == doctest::Approx(3.0).epsilon(0.01));
  CHECK(prof.p_minus == doctest::Approx(1.0 + 0.5 * lat.spacing()));
  CHECK(prof.p_plus == doctest::Approx(3.0 - 0.5 * lat.spacing()));
}

TEST_CASE("profile validation") {
  const Lattice lat = build_lattice(1, 1.0, 16);
  SampledField p = const_field(lat, 2.0);
  p[3] = 0.0;
  CHECK_THROWS_AS(summarize_exponent(p, 2.0), config_error);
  p[3] = -1.0;
  CHECK_THROWS_AS(summarize_exponent(p, 2.0), config_error);
}

TEST_CASE("conjugate exponent") {
  const Lattice lat = build_lattice(1, 1.0, 64);
  const ExponentProfile prof = summarize_exponent(const_field(lat, 3.0), 3.0);
  const ExponentProfile conj = conjugate_exponent(prof);
  CHECK(conj.p_minus == doctest::Approx(1.5));
  CHECK(conj.p_infty == doctest::Approx(1.5));

  const SampledField varying =
      make_field(lat, [](std::array<double, 3> x) { return 2.0 + x[0]; });
  const ExponentProfile vp = summarize_exponent(varying, 2.0);
  const ExponentProfile vc = conjugate_exponent(vp);
  for (long i = 0; i < lat.num_points(); i += 7)
    CHECK(1.0 / vp.p[i] + 1.0 / vc.p[i] == doctest::Approx(1.0));

  const ExponentProfile at_one = summarize_exponent(const_field(lat, 1.0), 1.0);
  CHECK_THROWS_AS(conjugate_exponent(at_one), config_error);
}

TEST_CASE("scaled exponent") {
  const Lattice lat = build_lattice(1, 1.0, 64);
  const SampledField p =
      make_field(lat, [](std::array<double, 3> x) { return 2.0 + x[0]; });
  const ExponentProfile prof = summarize_exponent(p, 2.0);
  const ExponentProfile half = scale_exponent(prof, 0.5);
  CHECK(half.p_minus == doctest::Approx(0.5 * prof.p_minus));
  CHECK(half.p_plus == doctest::Approx(0.5 * prof.p_plus));
  CHECK(half.p_infty == doctest::Approx(1.0));
  CHECK(half.p[10] == doctest::Approx(0.5 * prof.p[10]));
  CHECK_THROWS_AS(scale_exponent(prof, 0.0), config_error);
  CHECK_THROWS_AS(scale_exponent(prof, -1.0), config_error);
}

TEST_CASE("harmonic mean exponent closed form") {
  // p(x) = 3 - 2x on (0,1]: the mean of 1/p is log(3)/2
  const Lattice lat = build_lattice(1, 1.0, 16384);
  const SampledField p = make_field(
      lat, [](std::array<double, 3> x) { return 3.0 - 2.0 * std::abs(x[0]); });
  const ExponentProfile prof = summarize_exponent(p, 1.0);
  Cube q;
  q.dim = 1;
  q.center = {0.5, 0.0, 0.0};
  q.edge = 1.0;
  CHECK(harmonic_mean_exponent(prof, q) ==
        doctest::Approx(2.0 / std::log(3.0)).epsilon(1e-7));
}

TEST_CASE("exponent range over a cube") {
  const Lattice lat = build_lattice(1, 1.0, 64);
  const SampledField p =
      make_field(lat, [](std::array<double, 3> x) { return 2.0 + x[0]; });
  const ExponentProfile prof = summarize_exponent(p, 2.0);
  Cube q;
  q.dim = 1;
  q.center = {0.75, 0.0, 0.0};
  q.edge = 0.5;
  const auto [lo, hi] = exponent_range(prof, q);
  CHECK(lo == doctest::Approx(2.5 + 0.5 * lat.spacing()));
  CHECK(hi == doctest::Approx(3.0 - 0.5 * lat.spacing()));
}

TEST_CASE("regularity constants stay within caps for smooth profiles") {
  const Lattice lat = build_lattice(1, 2.0, 256);
  const SampledField p = make_field(
      lat, [](std::array<double, 3> x) { return 2.0 + 0.5 * std::sin(x[0]); });
  const ExponentProfile prof = summarize_exponent(p, 2.0);
  const LhReport rep = lh_check(prof);
  CHECK(rep.within_caps);
  CHECK(rep.c0 > 0.0);
  CHECK(rep.c0 < 100.0);
  CHECK(std::isfinite(rep.c_infty));

  const LhReport tight = lh_check(prof, prof.c0 * 0.5, 100.0);
  CHECK(!tight.within_caps);
}
