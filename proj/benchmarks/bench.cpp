#include <benchmark/benchmark.h>

#include <cmath>

#include "varleb/dims.hpp"
#include "varleb/exponents.hpp"
#include "varleb/lattice.hpp"
#include "varleb/matrixweights.hpp"
#include "varleb/vnorm.hpp"

namespace {

using varleb::Constants;
using varleb::Cube;
using varleb::Lattice;

// norm bisection on an oscillating field with a varying exponent
void bm_norm(benchmark::State& state) {
  const Lattice lat = varleb::build_lattice(1, 1.0, state.range(0));
  const auto p = varleb::make_field(
      lat, [](std::array<double, 3> x) { return 2.0 + std::fabs(x[0]); });
  const auto prof = varleb::summarize_exponent(p, 2.0);
  const auto f = varleb::make_field(lat, [](std::array<double, 3> x) {
    return 0.1 + std::fabs(std::sin(7.0 * x[0]));
  });
  const Constants cst;
  for (auto _ : state)
    benchmark::DoNotOptimize(varleb::norm(f, prof, cst).value);
}
BENCHMARK(bm_norm)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);

// quadratic-cost matrix log-mean value on one cube (stride capped)
void bm_matrix_apinfty(benchmark::State& state) {
  const Lattice lat = varleb::build_lattice(2, 1.0, state.range(0));
  const auto p = varleb::make_field(lat, [](std::array<double, 3>) {
    return 2.0;
  });
  const auto prof = varleb::summarize_exponent(p, 2.0);
  const auto w = varleb::make_matrix_field(
      lat, 2, [](std::array<double, 3> x) {
        const double c = std::cos(0.4 * x[0]), s = std::sin(0.4 * x[0]);
        Eigen::Matrix2d rot;
        rot << c, -s, s, c;
        Eigen::Matrix2d diag = Eigen::Matrix2d::Zero();
        diag(0, 0) = 1.0 + x[0] * x[0];
        diag(1, 1) = 3.0;
        return Eigen::MatrixXd(rot * diag * rot.transpose());
      });
  const Cube q = varleb::dilate(varleb::box_cube(lat), 0.5);
  const Constants cst;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        varleb::matrix_apinfty_cube_value(w, prof, q, cst).value);
}
BENCHMARK(bm_matrix_apinfty)->Arg(1 << 5)->Arg(1 << 6);

// ellipsoid fit for the reducing operator on one cube
void bm_reducing(benchmark::State& state) {
  const Lattice lat = varleb::build_lattice(2, 1.0, 1 << 6);
  const auto p = varleb::make_field(lat, [](std::array<double, 3>) {
    return 2.0;
  });
  const auto prof = varleb::summarize_exponent(p, 2.0);
  const auto w = varleb::make_matrix_field(
      lat, 2, [](std::array<double, 3> x) {
        Eigen::Matrix2d diag = Eigen::Matrix2d::Zero();
        diag(0, 0) = 2.0 + x[0];
        diag(1, 1) = 5.0;
        return Eigen::MatrixXd(diag);
      });
  const Cube q = varleb::dilate(varleb::box_cube(lat), 0.5);
  const Constants cst;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        varleb::reducing_operator(w, prof, q, int(state.range(0)), cst)
            .fit_hi);
}
BENCHMARK(bm_reducing)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
