#pragma once

#include "varleb/matrixweights.hpp"

namespace varleb {

inline int default_directions(int m) { return std::max(64, 8 * m * m); }

// dilation profiles of the matrix log-mean functional: v(Q, lambda) with the
// y average moved to lambda Q (lower) or the norm moved to lambda Q (upper);
// lambda = 1 gives the plain cube value either way
double dim_lower_value(const MatrixField& w, const ExponentProfile& prof,
                       const Cube& q, double lambda, const Constants& cst = {});
double dim_upper_value(const MatrixField& w, const ExponentProfile& prof,
                       const Cube& q, double lambda, const Constants& cst = {});

// Least-squares slope of log v against log lambda, cube by cube; d is the
// largest slope over the base cubes, clamped at zero. Dilations leaving the
// box (or off the cell grid) are skipped; cubes with fewer than four usable
// dilations are excluded from the fit.
struct DimFit {
  std::vector<CubeRow> rows;  // one per (cube, lambda): value = v, aux = lambda
  double d = 0.0;
  double residual = 0.0;      // worst fit residual of the slope-max cube
  long argmax_cube = -1;      // index into base_cubes
  long skipped = 0;           // skipped (cube, lambda) pairs
  bool power_law_ok = true;   // residual <= 0.1
};

DimFit lower_dim_estimate(const MatrixField& w, const ExponentProfile& prof,
                          const std::vector<Cube>& base_cubes,
                          const std::vector<double>& lambdas,
                          const Constants& cst = {});
DimFit upper_dim_estimate(const MatrixField& w, const ExponentProfile& prof,
                          const std::vector<Cube>& base_cubes,
                          const std::vector<double>& lambdas,
                          const Constants& cst = {});

struct DimsEstimate {
  DimFit lower;
  DimFit upper;
};
DimsEstimate estimate_dimensions(const MatrixField& w,
                                 const ExponentProfile& prof,
                                 const std::vector<Cube>& base_cubes,
                                 const std::vector<double>& lambdas,
                                 const Constants& cst = {});

// origin-centered base cubes with edge = box edge / 2^j, one per level
std::vector<Cube> centered_base_cubes(const Lattice& lat, int j_from, int j_to);

// ||A_Q A_R^{-1}|| against the scale-and-distance bound
// max((l_R/l_Q)^d1, (l_Q/l_R)^d2) * (1 + |c_Q - c_R| / max(l_Q, l_R))^(d1+d2)
// over ordered cube pairs; pass uses the multiplier c_mult
CubeReport qp3_bound_check(const MatrixField& w, const ExponentProfile& prof,
                           const std::vector<Cube>& cubes, double d1, double d2,
                           const Constants& cst = {});

}  // namespace varleb
