#pragma once

#include <cmath>

#include "varleb/constants.hpp"
#include "varleb/exponents.hpp"
#include "varleb/lattice.hpp"

namespace varleb {

struct NormResult {
  double value = 0.0;
  double modular_at_value = 0.0;
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

// sum over the cube of |f|^p times the cell volume; absf(i) >= 0
template <class F>
double modular_over(const Lattice& lat, const Cube& q,
                    const ExponentProfile& prof, F&& absf) {
  double s = 0.0;
  for_cube_points(lat, q,
                  [&](long i) { s += std::pow(absf(i), prof.p[i]); });
  double cell = 1.0;
  for (int k = 0; k < lat.dim; ++k) cell *= lat.spacing();
  return s * cell;
}

// Gauge norm: the lambda with modular(f/lambda) = 1, found by bisection.
// The start bracket comes from the two-sided power bound between the
// modular and the norm; it is widened a little if roundoff puts the root
// outside.
template <class F>
NormResult luxemburg_over(const Lattice& lat, const Cube& q,
                          const ExponentProfile& prof, F&& absf,
                          const Constants& cst) {
  NormResult res;
  const double rho0 = modular_over(lat, q, prof, absf);
  if (!std::isfinite(rho0))
    throw numeric_error("modular overflowed while bracketing a norm");
  if (rho0 == 0.0) return res;

  auto rho_at = [&](double lambda) {
    return modular_over(lat, q, prof,
                        [&](long i) { return absf(i) / lambda; });
  };

  auto [p_lo, p_hi] = exponent_range(prof, q);
  double lo, hi;
  if (rho0 >= 1.0) {
    lo = std::pow(rho0, 1.0 / p_hi);
    hi = std::pow(rho0, 1.0 / p_lo);
  } else {
    lo = std::pow(rho0, 1.0 / p_lo);
    hi = std::pow(rho0, 1.0 / p_hi);
  }
  if (!std::isfinite(hi) || !(lo > 0.0))
    throw numeric_error("norm bracket overflowed");
  for (int widen = 0; widen < 64 && rho_at(lo) < 1.0; ++widen) lo *= 0.5;
  for (int widen = 0; widen < 64 && rho_at(hi) > 1.0; ++widen) hi *= 2.0;
  res.bracket_lo = lo;
  res.bracket_hi = hi;

  int it = 0;
  while (hi - lo > cst.tol_lambda * 0.5 * (lo + hi) && it < cst.max_bisect) {
    const double mid = 0.5 * (lo + hi);
    if (rho_at(mid) >= 1.0)
      lo = mid;
    else
      hi = mid;
    ++it;
  }
  res.value = 0.5 * (lo + hi);
  res.modular_at_value = rho_at(res.value);
  res.iterations = it;
  return res;
}

double modular(const SampledField& f, const ExponentProfile& prof);
double modular(const SampledField& f, const ExponentProfile& prof,
               const Cube& q);
NormResult norm(const SampledField& f, const ExponentProfile& prof,
                const Constants& cst = {});
NormResult norm(const SampledField& f, const ExponentProfile& prof,
                const Cube& q, const Constants& cst = {});
// norm of the indicator of the cube
NormResult indicator_norm(const ExponentProfile& prof, const Cube& q,
                          const Constants& cst = {});

// ||1_Q|| against the two volume powers it is squeezed between
struct IndicatorCheck {
  double norm_value = 0.0;
  double p_q = 0.0;       // harmonic mean exponent of the cube
  double vol_pq = 0.0;    // |Q|^(1/p_q)
  double vol_pinfty = 0.0;
  double ratio_pq = 0.0;
  double ratio_pinfty = 0.0;
  bool floor_ok = false;  // norm >= vol_pq / 6
};
IndicatorCheck indicator_norm_check(const ExponentProfile& prof, const Cube& q,
                                    const Constants& cst = {});

// integral of |f g| over the cube against the product of conjugate norms
struct HolderReport {
  double integral = 0.0;
  double norm_f = 0.0;
  double norm_g_conjugate = 0.0;
  double ratio = 0.0;
  bool within_budget = false;
};
HolderReport holder_pairing(const SampledField& f, const SampledField& g,
                            const ExponentProfile& prof, const Cube& q,
                            const Constants& cst = {});

// norm of f at exponent r*p against the r-th root of the norm of |f|^r at p
struct ConvexifyReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_gap = 0.0;
};
ConvexifyReport convexify_check(const SampledField& f,
                                const ExponentProfile& prof, double r,
                                const Cube& q, const Constants& cst = {});

}  // namespace varleb
