#include "varleb/vnorm.hpp"

#include <algorithm>
#include <cmath>

namespace varleb {

double modular(const SampledField& f, const ExponentProfile& prof,
               const Cube& q) {
  return modular_over(f.lat, q, prof,
                      [&](long i) { return std::abs(f[i]); });
}

double modular(const SampledField& f, const ExponentProfile& prof) {
  return modular(f, prof, box_cube(f.lat));
}

NormResult norm(const SampledField& f, const ExponentProfile& prof,
                const Cube& q, const Constants& cst) {
  return luxemburg_over(f.lat, q, prof,
                        [&](long i) { return std::abs(f[i]); }, cst);
}

NormResult norm(const SampledField& f, const ExponentProfile& prof,
                const Constants& cst) {
  return norm(f, prof, box_cube(f.lat), cst);
}

NormResult indicator_norm(const ExponentProfile& prof, const Cube& q,
                          const Constants& cst) {
  return luxemburg_over(prof.p.lat, q, prof, [](long) { return 1.0; }, cst);
}

IndicatorCheck indicator_norm_check(const ExponentProfile& prof, const Cube& q,
                                    const Constants& cst) {
  IndicatorCheck chk;
  chk.norm_value = indicator_norm(prof, q, cst).value;
  chk.p_q = harmonic_mean_exponent(prof, q);
  chk.vol_pq = std::pow(q.volume(), 1.0 / chk.p_q);
  chk.vol_pinfty = std::pow(q.volume(), 1.0 / prof.p_infty);
  chk.ratio_pq = chk.norm_value / chk.vol_pq;
  chk.ratio_pinfty = chk.norm_value / chk.vol_pinfty;
  chk.floor_ok = chk.norm_value >= chk.vol_pq / 6.0 * (1.0 - 1e-12);
  return chk;
}

HolderReport holder_pairing(const SampledField& f, const SampledField& g,
                            const ExponentProfile& prof, const Cube& q,
                            const Constants& cst) {
  HolderReport rep;
  double s = 0.0;
  for_cube_points(f.lat, q, [&](long i) { s += std::abs(f[i] * g[i]); });
  double cell = 1.0;
  for (int k = 0; k < f.lat.dim; ++k) cell *= f.lat.spacing();
  rep.integral = s * cell;
  rep.norm_f = norm(f, prof, q, cst).value;
  const ExponentProfile conj = conjugate_exponent(prof);
  rep.norm_g_conjugate = norm(g, conj, q, cst).value;
  const double denom = rep.norm_f * rep.norm_g_conjugate;
  rep.ratio = denom > 0.0 ? rep.integral / denom : 0.0;
  rep.within_budget = rep.ratio <= cst.c_h * (1.0 + 1e-12);
  return rep;
}

ConvexifyReport convexify_check(const SampledField& f,
                                const ExponentProfile& prof, double r,
                                const Cube& q, const Constants& cst) {
  ConvexifyReport rep;
  const ExponentProfile scaled = scale_exponent(prof, r);
  rep.lhs = norm(f, scaled, q, cst).value;
  const double rhs_inner = luxemburg_over(
      f.lat, q, prof, [&](long i) { return std::pow(std::abs(f[i]), r); },
      cst).value;
  rep.rhs = std::pow(rhs_inner, 1.0 / r);
  const double scale = std::max(rep.lhs, rep.rhs);
  rep.rel_gap = scale > 0.0 ? std::abs(rep.lhs - rep.rhs) / scale : 0.0;
  return rep;
}

}  // namespace varleb
