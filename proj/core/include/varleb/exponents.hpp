#pragma once

#include <optional>
#include <utility>

#include "varleb/lattice.hpp"

namespace varleb {

// A variable exponent sampled on the lattice together with its summary
// data. c0 and c_infty are the smallest constants that make the sampled
// local / decay regularity bounds hold on the grid (estimated from pairs,
// so they are lower bounds for the true constants).
struct ExponentProfile {
  SampledField p;
  double p_minus = 0.0;
  double p_plus = 0.0;
  double p_infty = 0.0;
  bool p_infty_estimated = false;
  double c0 = 0.0;
  double c_infty = 0.0;
};

// Validates positivity, computes min/max, the limit exponent (declared, or
// else the mean over the outermost shell of grid points, flagged), and the
// regularity constants.
ExponentProfile summarize_exponent(const SampledField& p,
                                   std::optional<double> declared_p_infty);

// Pointwise p/(p-1); requires p_minus > 1.
ExponentProfile conjugate_exponent(const ExponentProfile& prof);

// Pointwise r*p for r > 0. Summary data scales exactly.
ExponentProfile scale_exponent(const ExponentProfile& prof, double r);

// Reciprocal of the mean of 1/p over the cube.
double harmonic_mean_exponent(const ExponentProfile& prof, const Cube& q);

// {min, max} of p over the cube.
std::pair<double, double> exponent_range(const ExponentProfile& prof,
                                         const Cube& q);

struct LhReport {
  double c0 = 0.0;
  double c_infty = 0.0;
  double c0_cap = 100.0;
  double c_infty_cap = 100.0;
  bool within_caps = true;
};

// Advisory check only: callers decide what to do with an exceeded cap.
LhReport lh_check(const ExponentProfile& prof, double c0_cap = 100.0,
                  double c_infty_cap = 100.0);

}  // namespace varleb
