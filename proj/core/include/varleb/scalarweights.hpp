#pragma once

#include <string>
#include <vector>

#include "varleb/constants.hpp"
#include "varleb/report.hpp"
#include "varleb/vnorm.hpp"

namespace varleb {

// ----- per-cube weight functionals -------------------------------------

// mean(w) * exp(mean(log 1/w)); the Jensen-gap functional
double ainfty_cube_value(const SampledField& w, const Cube& q,
                         const Constants& cst = {});
// (||w 1_Q|| / ||1_Q||) * exp(mean(log 1/w))
double apinfty_cube_value(const SampledField& w, const ExponentProfile& prof,
                          const Cube& q, const Constants& cst = {});
// (||w 1_Q|| / ||1_Q||) / mean(w)
double apinfty_star_cube_value(const SampledField& w,
                               const ExponentProfile& prof, const Cube& q,
                               const Constants& cst = {});
// mean(w) * max(1/w) over the cube
double a1_cube_value(const SampledField& w, const Cube& q);
// mean(w) * mean(w^(1/(1-p)))^(p-1), constant p > 1
double ap_cube_value(const SampledField& w, double p, const Cube& q);
// |Q|^(-1) * ||w 1_Q||_p * ||w^(-1) 1_Q||_p'
double apvar_cube_value(const SampledField& w, const ExponentProfile& prof,
                        const ExponentProfile& conj, const Cube& q,
                        const Constants& cst = {});
// |Q|^(sign*p_Q) * integral(w) * ||w^(-1) 1_Q|| at exponent p'(.)/p(.)
double apdagger_cube_value(const SampledField& w, const ExponentProfile& prof,
                           const Cube& q, const Constants& cst = {});

enum class ScalarKind { a_p, a_1, a_infty, apvar, apdagger, apinfty, apinfty_star };

std::string to_string(ScalarKind k);

// Max of the chosen functional over the family. a_p requires a constant
// exponent profile with p > 1 (use a_1 for p = 1).
CubeReport family_constant(ScalarKind kind, const SampledField& w,
                           const ExponentProfile& prof, const CubeFamily& fam,
                           const Constants& cst = {});

// pointwise w^{p(x)}, with an overflow check naming the first bad point
SampledField power_map(const SampledField& w, const ExponentProfile& prof);

// 1 + 1/(c1 * est^a1 * 2^(c2 * est))
double rw_exponent(double est, const Constants& cst = {});

// Normalized norm of w at exponent r*p(.) against c_mult * est^a_exp times
// the normalized norm at p(.), cube by cube.
CubeReport verify_reverse_holder(const SampledField& w,
                                 const ExponentProfile& prof, double r,
                                 const CubeFamily& fam, double est,
                                 const Constants& cst = {});

// (mean w^r)^(1/r) <= 2 mean w with r = 1 + 1/(tau_n * est), est computed
// from the family's Jensen-gap functional.
CubeReport classical_rh_verify(const SampledField& w, const CubeFamily& fam,
                               const Constants& cst = {});

// Largest r = 1 + span*2^(-k) for which the normalized-norm comparison
// passes with plain multiplier 2 on every cube; 1.0 when none passes.
double max_empirical_rh(const SampledField& w, const ExponentProfile& prof,
                        const CubeFamily& fam, const Constants& cst = {},
                        double r_span = 1.0, int depth = 20);

// pointwise min over family cubes containing the point of mean(|f|);
// points no cube covers stay +infinity
SampledField minimal_operator(const SampledField& f, const CubeFamily& fam);
// pointwise max of mean(|f|) over covering cubes (translates included)
SampledField hl_maximal(const SampledField& f, const CubeFamily& fam);
// same, restricted to the untranslated cubes
SampledField dyadic_maximal(const SampledField& f, const CubeFamily& fam);

// weighted-norm ratios ||1/(min-mean f) * w|| / ||(1/f) * w||, one per field
struct MinimalRatioReport {
  std::vector<double> ratios;
  double max_ratio = 0.0;
};
MinimalRatioReport minimal_ratio_report(const SampledField& w,
                                        const ExponentProfile& prof,
                                        const std::vector<SampledField>& fields,
                                        const CubeFamily& fam,
                                        const Constants& cst = {});

// Maximal dyadic descendants of the root whose mean of |f| exceeds
// a^k * mean(|f|, root), per threshold level k; the root itself is never
// selected. Levels stop once the threshold clears every point value.
struct StoppingCube {
  Cube cube;
  int k = 0;
  double mean = 0.0;
  double threshold = 0.0;
};
struct CzReport {
  double root_mean = 0.0;
  int levels = 0;
  std::vector<StoppingCube> cubes;
};
CzReport cz_stopping_cubes(const SampledField& f, const Cube& root, double a);

// max(||w 1_Q0||^(p_- - p_+), ||w 1_Q0||^(p_+ - p_-)) on the fixed cube of
// halfwidth 2e about the origin, snapped to whole cells
struct LwReport {
  Cube q0;
  double q0_norm = 0.0;
  double value = 0.0;
};
LwReport lw_factor(const SampledField& w, const ExponentProfile& prof,
                   const Constants& cst = {});

// max over cubes of mean |log w - mean(log w)|
CubeReport bmo_seminorm(const SampledField& w, const CubeFamily& fam,
                        const Constants& cst = {});

// (||w 1_Q|| / ||w H 1_Q||) * exp(mean log H); H > 0 on the cube
double dual_value(const SampledField& w, const ExponentProfile& prof,
                  const SampledField& h, const Cube& q,
                  const Constants& cst = {});

// w(lambda Q) <= (2 lambda)^(2^n (1 + log2 est)) * w(Q) for each cube and
// dilation factor; dilations leaving the box or off the cell grid skip
CubeReport doubling_check(const SampledField& w, const CubeFamily& fam,
                          const std::vector<double>& lambdas,
                          const Constants& cst = {});

}  // namespace varleb
