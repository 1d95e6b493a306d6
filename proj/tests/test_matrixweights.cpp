#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "varleb/matrixweights.hpp"
#include "varleb/scalarweights.hpp"
#include "varleb/vnorm.hpp"

using namespace varleb;

namespace {

ExponentProfile const_profile(const Lattice& lat, double p) {
  return summarize_exponent(
      make_field(lat, [p](std::array<double, 3>) { return p; }), p);
}

MatrixField const_matrix(const Lattice& lat, const Eigen::MatrixXd& m) {
  return make_matrix_field(lat, int(m.rows()),
                           [&](std::array<double, 3>) { return m; });
}

Eigen::MatrixXd rot2(double angle) {
  Eigen::MatrixXd r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

Eigen::MatrixXd diag2(double a, double b) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = a;
  d(1, 1) = b;
  return d;
}

}  // namespace

TEST_CASE("operator norm") {
  Eigen::MatrixXd one(1, 1);
  one(0, 0) = -3.0;
  CHECK(op_norm(one) == doctest::Approx(3.0));
  CHECK(op_norm(diag2(3.0, 4.0)) == doctest::Approx(4.0));
  const Eigen::MatrixXd conj = rot2(0.7) * diag2(3.0, 4.0) * rot2(0.7).transpose();
  CHECK(op_norm(conj) == doctest::Approx(4.0).epsilon(1e-12));
  // symmetric factors can swap without changing the norm
  std::mt19937 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd x(2, 2), y(2, 2);
    for (int i = 0; i < 4; ++i) {
      x(i / 2, i % 2) = g(rng);
      y(i / 2, i % 2) = g(rng);
    }
    const Eigen::MatrixXd a = x * x.transpose() + 0.1 * Eigen::MatrixXd::Identity(2, 2);
    const Eigen::MatrixXd b = y * y.transpose() + 0.1 * Eigen::MatrixXd::Identity(2, 2);
    CHECK(op_norm(a * b) == doctest::Approx(op_norm(b * a)).epsilon(1e-10));
  }
}

TEST_CASE("square roots and inverses of definite matrices") {
  const Eigen::MatrixXd a = rot2(0.3) * diag2(2.0, 9.0) * rot2(0.3).transpose();
  const Eigen::MatrixXd s = spd_sqrt(a);
  CHECK((s * s - a).cwiseAbs().maxCoeff() <= 1e-12);
  const Eigen::MatrixXd inv = spd_inverse(a);
  CHECK((inv * a - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);

  Eigen::MatrixXd indef(2, 2);
  indef << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3 and -1
  CHECK_THROWS_AS(spd_sqrt(indef), numeric_error);
  CHECK_THROWS_AS(spd_inverse(indef), numeric_error);
}

TEST_CASE("matrix field validation") {
  const Lattice lat = build_lattice(1, 1.0, 16);
  Eigen::MatrixXd skew(2, 2);
  skew << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(const_matrix(lat, skew), config_error);
  CHECK_THROWS_AS(const_matrix(lat, diag2(1.0, 0.0)), numeric_error);
  CHECK_THROWS_AS(
      make_matrix_field(lat, 2, [](std::array<double, 3>) {
        return Eigen::MatrixXd::Identity(3, 3);
      }),
      config_error);

  const MatrixField w = const_matrix(lat, diag2(2.0, 5.0));
  CHECK(w.at(3)(1, 1) == doctest::Approx(5.0));

  const SampledField s =
      make_field(lat, [](std::array<double, 3> x) { return 2.0 + x[0]; });
  const MatrixField lifted = matrix_from_scalar(s);
  CHECK(lifted.m == 1);
  CHECK(lifted.at(5)(0, 0) == doctest::Approx(s[5]));
}

TEST_CASE("probe directions are unit and well spread") {
  const auto one = probe_directions(1, 10);
  REQUIRE(one.size() == 1);
  CHECK(one[0](0) == doctest::Approx(1.0));
  for (int m : {2, 3, 5}) {
    const auto dirs = probe_directions(m, 32);
    CHECK(dirs.size() == 32);
    for (const auto& z : dirs) CHECK(z.norm() == doctest::Approx(1.0));
    double closest = 2.0;
    for (size_t i = 0; i < dirs.size(); ++i)
      for (size_t j = i + 1; j < dirs.size(); ++j)
        closest = std::min(closest, (dirs[i] - dirs[j]).norm());
    CHECK(closest > 1e-3);
  }
}

TEST_CASE("directional norm reduces to the scalar norm ratio") {
  const Lattice lat = build_lattice(1, 1.0, 256);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const SampledField w =
      make_field(lat, [](std::array<double, 3> x) { return std::exp(x[0]); });
  const MatrixField wm = matrix_from_scalar(w);
  const Cube box = box_cube(lat);
  Eigen::VectorXd z(1);
  z << 1.0;
  const double want =
      norm(w, p2, box).value / indicator_norm(p2, box).value;
  CHECK(rho_q(wm, p2, box, z) == doctest::Approx(want).epsilon(1e-9));
  // scaling the direction scales the value
  Eigen::VectorXd z3(1);
  z3 << 3.0;
  CHECK(rho_q(wm, p2, box, z3) == doctest::Approx(3.0 * want).epsilon(1e-9));
}

TEST_CASE("directional norms obey the triangle bound above p = 1") {
  const Lattice lat = build_lattice(1, 1.0, 128);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const MatrixField wm = make_matrix_field(lat, 2, [](std::array<double, 3> x) {
    return Eigen::MatrixXd(rot2(x[0]) * diag2(1.0 + x[0] * x[0], 2.0) *
                           rot2(x[0]).transpose());
  });
  const Cube box = box_cube(lat);
  Eigen::VectorXd z1(2), z2(2);
  z1 << 1.0, 0.5;
  z2 << -0.25, 1.0;
  const double lhs = rho_q(wm, p2, box, Eigen::VectorXd(z1 + z2));
  CHECK(lhs <= rho_q(wm, p2, box, z1) + rho_q(wm, p2, box, z2) + 1e-9);
}

TEST_CASE("projection fields") {
  const Lattice lat = build_lattice(1, 1.0, 32);
  const MatrixField wm = const_matrix(lat, diag2(2.0, 5.0));
  Eigen::VectorXd z(2);
  z << 1.0, 1.0;
  const SampledField pz = scalar_projection(wm, z);
  CHECK(pz[7] == doctest::Approx(std::sqrt(4.0 + 25.0)));
  const SampledField pm = scalar_projection_mat(wm, Eigen::MatrixXd::Identity(2, 2));
  CHECK(pm[7] == doctest::Approx(5.0));
}

TEST_CASE("fitted operator of a constant field") {
  const Lattice lat = build_lattice(1, 1.0, 64);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const Eigen::MatrixXd d = rot2(0.5) * diag2(2.0, 5.0) * rot2(0.5).transpose();
  const MatrixField wm = const_matrix(lat, d);
  const ReducingResult rr = reducing_operator(wm, p2, box_cube(lat), 64);
  CHECK((rr.a - d).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK(rr.fit_lo == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rr.fit_hi == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fitted operator scales linearly in the weight") {
  const Lattice lat = build_lattice(1, 1.0, 64);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const MatrixField wm = make_matrix_field(lat, 2, [](std::array<double, 3> x) {
    return Eigen::MatrixXd(diag2(1.0 + std::abs(x[0]), 2.0 - x[0]));
  });
  MatrixField scaled = wm;
  for (long i = 0; i < lat.num_points(); ++i)
    scaled.set(i, Eigen::MatrixXd(3.0 * wm.at(i)));
  const Cube box = box_cube(lat);
  const ReducingResult a = reducing_operator(wm, p2, box, 32);
  const ReducingResult b = reducing_operator(scaled, p2, box, 32);
  CHECK((b.a - 3.0 * a.a).cwiseAbs().maxCoeff() <= 1e-8 * b.a.norm());
}

TEST_CASE("ellipsoid oracle on axis-aligned points") {
  std::vector<Eigen::VectorXd> pts;
  for (double s : {1.0, -1.0}) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(2), b = Eigen::VectorXd::Zero(2);
    a(0) = 2.0 * s;
    b(1) = 5.0 * s;
    pts.push_back(a);
    pts.push_back(b);
  }
  const Eigen::MatrixXd g = mvee_oracle(pts);
  CHECK(std::abs(g(0, 0) - 0.25) <= 1e-6);
  CHECK(std::abs(g(1, 1) - 0.04) <= 1e-6);
  CHECK(std::abs(g(0, 1)) <= 1e-6);

  std::vector<Eigen::VectorXd> turned;
  for (const auto& p : pts) turned.push_back(Eigen::VectorXd(rot2(0.6) * p));
  const Eigen::MatrixXd gt = mvee_oracle(turned);
  const Eigen::MatrixXd want = rot2(0.6) * g * rot2(0.6).transpose();
  CHECK((gt - want).cwiseAbs().maxCoeff() <= 1e-5);

  CHECK_THROWS_AS(mvee_oracle({}), config_error);
}

TEST_CASE("fit agrees with the ellipsoid oracle") {
  const Lattice lat = build_lattice(1, 1.0, 64);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const MatrixField wm = make_matrix_field(lat, 2, [](std::array<double, 3> x) {
    return Eigen::MatrixXd(rot2(0.4 * x[0]) * diag2(1.0 + std::abs(x[0]), 3.0) *
                           rot2(0.4 * x[0]).transpose());
  });
  const Cube box = box_cube(lat);
  const ReducingResult rr = reducing_operator(wm, p2, box, 64);
  std::vector<Eigen::VectorXd> pts;
  for (const auto& z : probe_directions(2, 64))
    pts.push_back(Eigen::VectorXd(z / rho_q(wm, p2, box, z)));
  const Eigen::MatrixXd a_mv = spd_sqrt(mvee_oracle(pts));
  CHECK(op_norm(rr.a * spd_inverse(a_mv)) <= 4.0);
  CHECK(op_norm(a_mv * spd_inverse(rr.a)) <= 4.0);
}

TEST_CASE("inverse tracking of a constant field") {
  const Lattice lat = build_lattice(1, 1.0, 64);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const Eigen::MatrixXd d = diag2(2.0, 5.0);
  const MatrixField wm = const_matrix(lat, d);
  const auto [lo, hi] = inverse_reducing_check(wm, p2, box_cube(lat), d, 32);
  CHECK(lo == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(hi == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("log-mean cube values of a constant field are one") {
  const Lattice lat = build_lattice(1, 1.0, 64);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const ExponentProfile conj = conjugate_exponent(p2);
  const Eigen::MatrixXd d = rot2(0.2) * diag2(2.0, 5.0) * rot2(0.2).transpose();
  const MatrixField wm = const_matrix(lat, d);
  const Cube box = box_cube(lat);
  CHECK(matrix_apinfty_cube_value(wm, p2, box).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(matrix_a1infty_cube_value(wm, box).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(matrix_apvar_cube_value(wm, p2, conj, box).value ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("one-by-one cube values reduce to the scalar ones") {
  const Lattice lat = build_lattice(1, 1.0, 128);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const ExponentProfile conj = conjugate_exponent(p2);
  const SampledField w =
      make_field(lat, [](std::array<double, 3> x) { return std::exp(x[0]); });
  const MatrixField wm = matrix_from_scalar(w);
  Cube q;
  q.dim = 1;
  q.center = {0.5, 0.0, 0.0};
  q.edge = 1.0;
  CHECK(matrix_apinfty_cube_value(wm, p2, q).value ==
        doctest::Approx(apinfty_cube_value(w, p2, q)).epsilon(1e-9));
  CHECK(matrix_a1infty_cube_value(wm, q).value ==
        doctest::Approx(ainfty_cube_value(w, q)).epsilon(1e-9));
  CHECK(matrix_apvar_cube_value(wm, p2, conj, q).value ==
        doctest::Approx(apvar_cube_value(w, p2, conj, q)).epsilon(1e-9));
}

TEST_CASE("mixed cube value strides once the inner loop saturates") {
  const Lattice lat = build_lattice(1, 1.0, 256);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const MatrixField wm = const_matrix(lat, diag2(2.0, 5.0));
  Constants tight;
  tight.max_inner_samples = 16;
  const MatrixCubeValue v = matrix_apinfty_cube_value(wm, p2, box_cube(lat), tight);
  CHECK(v.stride == 16);  // 256 points / 16 samples
  CHECK(v.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("family reports for matrix functionals") {
  const Lattice lat = build_lattice(1, 1.0, 64);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const CubeFamily fam = dyadic_family(lat, 0, 2, false);
  const MatrixField wm = make_matrix_field(lat, 2, [](std::array<double, 3> x) {
    return Eigen::MatrixXd(diag2(1.0 + std::abs(x[0]), 2.0));
  });
  for (MatrixKind k : {MatrixKind::apvar, MatrixKind::apinfty, MatrixKind::a1infty}) {
    const CubeReport rep = matrix_family_constant(k, wm, p2, fam);
    CHECK(rep.rows.size() == fam.cubes.size());
    CHECK(rep.estimate >= 1.0 - 1e-9);
    CHECK(!to_string(k).empty());
  }
}

TEST_CASE("norm comparison of the lifted log-linear weight") {
  const Lattice lat = build_lattice(1, 0.5, 256);
  const ExponentProfile p2 = const_profile(lat, 2.0);
  const SampledField w =
      make_field(lat, [](std::array<double, 3> x) { return std::exp(x[0]); });
  const MatrixField wm = matrix_from_scalar(w);
  const CubeFamily fam = dyadic_family(lat, 0, 0, false);
  const std::vector<Eigen::MatrixXd> ident{Eigen::MatrixXd::Identity(1, 1)};

  const CubeReport rep = wm_reverse_check(wm, p2, fam, ident);
  REQUIRE(rep.rows.size() == 1);
  // ||e^x||_2 / (||1||_2 mean(e^x)) on a unit box, e.g. (0,1] after shifting
  const double e = std::exp(1.0);
  CHECK(rep.rows[0].value ==
        doctest::Approx(std::sqrt((e * e - 1.0) / 2.0) / (e - 1.0)).epsilon(1e-5));

  const CubeReport rh = matrix_rh_verify(wm, p2, 1.5, fam, {}, 1.0);
  CHECK(rh.rows.size() == 4);  // default probe matrices per cube
  for (const CubeRow& row : rh.rows) CHECK(std::isfinite(row.value));
}
