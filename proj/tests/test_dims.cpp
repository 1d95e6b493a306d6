#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "varleb/dims.hpp"

using namespace varleb;

namespace {

ExponentProfile const_profile(const Lattice& lat, double p) {
  return summarize_exponent(
      make_field(lat, [p](std::array<double, 3>) { return p; }), p);
}

Eigen::MatrixXd diag2(double a, double b) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = a;
  d(1, 1) = b;
  return d;
}

}  // namespace

TEST_CASE("default probe counts") {
  CHECK(default_directions(1) == 64);
  CHECK(default_directions(2) == 64);
  CHECK(default_directions(4) == 128);
}

TEST_CASE("centered base cubes") {
  const Lattice lat = build_lattice(1, 2.0, 256);
  const auto cubes = centered_base_cubes(lat, 3, 5);
  REQUIRE(cubes.size() == 3);
  CHECK(cubes[0].edge == doctest::Approx(0.5));
  CHECK(cubes[2].edge == doctest::Approx(0.125));
  for (const Cube& q : cubes) {
    CHECK(q.center[0] == doctest::Approx(0.0));
    CHECK(cube_aligned(lat, q));
  }
  CHECK_THROWS_AS(centered_base_cubes(lat, 3, 9), config_error);
}

TEST_CASE("unit dilation reproduces the plain cube value") {
  const Lattice lat = build_lattice(1, 2.0, 128);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const MatrixField wm = make_matrix_field(lat, 2, [](std::array<double, 3> x) {
    return Eigen::MatrixXd(diag2(1.0 + std::abs(x[0]), 2.0));
  });
  const Cube q = centered_base_cubes(lat, 2, 2).front();
  const double plain = matrix_apinfty_cube_value(wm, p2, q).value;
  CHECK(dim_lower_value(wm, p2, q, 1.0) == doctest::Approx(plain).epsilon(1e-12));
  CHECK(dim_upper_value(wm, p2, q, 1.0) == doctest::Approx(plain).epsilon(1e-12));
}

TEST_CASE("constant fields have flat dilation profiles") {
  const Lattice lat = build_lattice(1, 2.0, 256);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const MatrixField wm = make_matrix_field(
      lat, 2, [](std::array<double, 3>) { return Eigen::MatrixXd(diag2(2.0, 5.0)); });
  const auto base = centered_base_cubes(lat, 3, 5);
  const DimsEstimate est = estimate_dimensions(wm, p2, base, {1.0, 2.0, 4.0, 8.0});
  CHECK(est.lower.d <= 1e-8);
  CHECK(est.upper.d <= 1e-8);
  CHECK(est.lower.power_law_ok);
  CHECK(est.upper.power_law_ok);
  CHECK(est.lower.rows.size() == base.size() * 4);
}

TEST_CASE("dilation fits need four usable factors per cube") {
  const Lattice lat = build_lattice(1, 2.0, 256);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const MatrixField wm = make_matrix_field(
      lat, 2, [](std::array<double, 3>) { return Eigen::MatrixXd(diag2(2.0, 5.0)); });
  // every factor except 1 pushes the box cube outside itself
  CHECK_THROWS_AS(
      lower_dim_estimate(wm, p2, {box_cube(lat)}, {1.0, 2.0, 4.0, 8.0}),
      config_error);
}

TEST_CASE("growth exponent of a varying one-by-one field") {
  const Lattice lat = build_lattice(1, 2.0, 256);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const MatrixField wm =
      make_matrix_field(lat, 1, [](std::array<double, 3> x) {
        return Eigen::MatrixXd::Constant(1, 1, 1.0 + x[0] * x[0]);
      });
  const auto base = centered_base_cubes(lat, 3, 5);
  const DimsEstimate est = estimate_dimensions(wm, p2, base, {1.0, 2.0, 4.0, 8.0});
  CHECK(est.lower.d >= 0.0);
  CHECK(est.upper.d >= 0.0);
  CHECK(est.upper.d <= 1.0 / p2.p_minus + 1e-6);  // scalar growth cap for n = 1
  CHECK(std::isfinite(est.lower.residual));
}

TEST_CASE("pair bound with equal operators") {
  const Lattice lat = build_lattice(1, 2.0, 128);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const MatrixField wm = make_matrix_field(
      lat, 2, [](std::array<double, 3>) { return Eigen::MatrixXd(diag2(2.0, 5.0)); });
  std::vector<Cube> cubes = centered_base_cubes(lat, 2, 4);
  const CubeFamily off = dyadic_family(lat, 2, 2, false);
  cubes.push_back(off.cubes[0]);
  const CubeReport rep = qp3_bound_check(wm, p2, cubes, 0.2, 0.2);
  CHECK(rep.rows.size() == cubes.size() * cubes.size());
  CHECK(rep.all_pass);
  // a constant field gives identical operators, so every ratio is the bound's
  // distance/scale factor alone and the diagonal is exactly one
  const size_t n = cubes.size();
  for (size_t i = 0; i < n; ++i)
    CHECK(rep.rows[i * n + i].lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.smallest_c == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("lower growth stays under the volume exponent") {
  const Lattice lat = build_lattice(1, 2.0, 256);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const MatrixField wm = make_matrix_field(lat, 2, [](std::array<double, 3> x) {
    return Eigen::MatrixXd(diag2(std::pow(std::abs(x[0]), 0.3), 1.0));
  });
  const auto base = centered_base_cubes(lat, 3, 5);
  const DimsEstimate est = estimate_dimensions(wm, p2, base, {1.0, 2.0, 4.0, 8.0});
  CHECK(est.lower.d < 1.0 / p2.p_minus + 0.05);
}
