#pragma once

#include <cmath>

namespace varleb {

// Every tunable used across the library, with the defaults all tests pin.
// Estimator constants (c1, c2, a_exp, a1, c_mult) enter the derived
// quantities verbatim; the rest are numeric guards.
struct Constants {
  double c1 = 1.0;      // multiplier inside the exponent of r_w
  double c2 = 1.0;      // growth rate inside the exponent of r_w
  double a1 = 1.0;      // power applied to the estimate in r_w
  double a_exp = 1.0;   // power A in reverse Holder right-hand sides
  double c_mult = 1.0;  // multiplier C in reverse Holder right-hand sides
  double c_h = 4.0;     // Holder pairing budget
  int dagger_exponent_sign = +1;  // sign of the volume exponent in the
                                  // dagger-style constant; see ledger note

  double tol_lambda = 1e-10;  // relative bisection tolerance for norms
  int max_bisect = 200;
  double eps_pos = 1e-300;    // positivity floor: values at or below error out
  double lambda_floor = 1e-10;  // eigenvalue clamp for fitted Gram matrices
  double slack_fit = 2.0;       // allowed ratio slack for reducing-operator fits
  double tol_slope = 0.05;      // flatness tolerance for dimension slopes
  double d_margin = 0.1;        // margin added to fitted dims in pair bounds
  double divergence_factor = 10.0;  // growth across a sweep that flags divergence
  double stability_factor = 1.2;    // growth below this counts as stable
  long max_inner_samples = 4096;    // stride cap for quadratic-cost cube loops
  int threads = 0;                  // 0 = one per hardware thread

  double tau_n(int dim) const { return std::ldexp(1.0, 11 + dim); }
};

}  // namespace varleb
