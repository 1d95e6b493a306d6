#include "varleb/scalarweights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "varleb/parallel.hpp"

namespace varleb {

namespace {

double abs_mean(const SampledField& f, const Cube& q) {
  return mean_over_cube(f.lat, q, [&](long i) { return std::abs(f[i]); });
}

double positive_min(const SampledField& w, const Cube& q, double eps_pos) {
  double m = std::numeric_limits<double>::infinity();
  for_cube_points(w.lat, q, [&](long i) { m = std::min(m, w[i]); });
  if (!(m > eps_pos)) throw numeric_error("weight is not positive on the cube");
  return m;
}

// children of a cube on the cell grid; empty when cells cannot be halved
std::vector<Cube> cube_children(const Lattice& lat, const Cube& q) {
  const AxisRange r = cube_range(lat, q);
  const long cells = r.hi[0] - r.lo[0];
  if (cells < 2 || (cells % 2) != 0) return {};
  std::vector<Cube> out;
  const int n = 1 << lat.dim;
  for (int mask = 0; mask < n; ++mask) {
    Cube c;
    c.dim = q.dim;
    c.edge = 0.5 * q.edge;
    c.level = q.level >= 0 ? q.level + 1 : -1;
    for (int k = 0; k < lat.dim; ++k)
      c.center[k] = q.center[k] + ((mask >> k) & 1 ? 0.25 : -0.25) * q.edge;
    out.push_back(c);
  }
  return out;
}

double dagger_value(const SampledField& w, const ExponentProfile& prof,
                    const ExponentProfile& sprof, const Cube& q,
                    const Constants& cst) {
  const double pq = harmonic_mean_exponent(prof, q);
  const double vol_pow =
      std::pow(q.volume(), double(cst.dagger_exponent_sign) * pq);
  const double l1 = cube_sum(w, q);
  const double inv_norm =
      luxemburg_over(w.lat, q, sprof, [&](long i) { return 1.0 / w[i]; }, cst)
          .value;
  return vol_pow * l1 * inv_norm;
}

ExponentProfile dagger_inner_profile(const ExponentProfile& prof) {
  if (!(prof.p_minus > 1.0))
    throw config_error("the dagger constant needs p_minus > 1");
  SampledField s;
  s.lat = prof.p.lat;
  s.v.resize(prof.p.v.size());
  for (size_t i = 0; i < s.v.size(); ++i)
    s.v[i] = 1.0 / (prof.p.v[i] - 1.0);  // p'(x)/p(x)
  ExponentProfile out =
      summarize_exponent(s, 1.0 / (prof.p_infty - 1.0));
  out.p_infty_estimated = prof.p_infty_estimated;
  return out;
}

}  // namespace

double ainfty_cube_value(const SampledField& w, const Cube& q,
                         const Constants& cst) {
  const double m = cube_mean(w, q);
  const double g = cube_geomean(w, q, cst.eps_pos);
  return m / g;
}

double apinfty_cube_value(const SampledField& w, const ExponentProfile& prof,
                          const Cube& q, const Constants& cst) {
  const double nw = norm(w, prof, q, cst).value;
  const double n1 = indicator_norm(prof, q, cst).value;
  const double g = cube_geomean(w, q, cst.eps_pos);
  return nw / n1 / g;
}

double apinfty_star_cube_value(const SampledField& w,
                               const ExponentProfile& prof, const Cube& q,
                               const Constants& cst) {
  const double nw = norm(w, prof, q, cst).value;
  const double n1 = indicator_norm(prof, q, cst).value;
  return nw / n1 / cube_mean(w, q);
}

double a1_cube_value(const SampledField& w, const Cube& q) {
  const double m = cube_mean(w, q);
  return m / positive_min(w, q, 1e-300);
}

double ap_cube_value(const SampledField& w, double p, const Cube& q) {
  if (!(p > 1.0)) throw config_error("a_p cube value needs p > 1");
  const double m = cube_mean(w, q);
  const double dual = mean_over_cube(
      w.lat, q, [&](long i) { return std::pow(w[i], 1.0 / (1.0 - p)); });
  return m * std::pow(dual, p - 1.0);
}

double apvar_cube_value(const SampledField& w, const ExponentProfile& prof,
                        const ExponentProfile& conj, const Cube& q,
                        const Constants& cst) {
  const double nw = norm(w, prof, q, cst).value;
  const double ninv =
      luxemburg_over(w.lat, q, conj, [&](long i) { return 1.0 / w[i]; }, cst)
          .value;
  return nw * ninv / q.volume();
}

double apdagger_cube_value(const SampledField& w, const ExponentProfile& prof,
                           const Cube& q, const Constants& cst) {
  return dagger_value(w, prof, dagger_inner_profile(prof), q, cst);
}

std::string to_string(ScalarKind k) {
  switch (k) {
    case ScalarKind::a_p: return "a_p";
    case ScalarKind::a_1: return "a_1";
    case ScalarKind::a_infty: return "a_infty";
    case ScalarKind::apvar: return "apvar";
    case ScalarKind::apdagger: return "apdagger";
    case ScalarKind::apinfty: return "apinfty";
    case ScalarKind::apinfty_star: return "apinfty_star";
  }
  return "?";
}

CubeReport family_constant(ScalarKind kind, const SampledField& w,
                           const ExponentProfile& prof, const CubeFamily& fam,
                           const Constants& cst) {
  CubeReport rep;
  rep.kind = to_string(kind);
  rep.rows.resize(fam.cubes.size());

  double p_const = 0.0;
  ExponentProfile aux_prof;  // conjugate or dagger inner profile
  if (kind == ScalarKind::a_p) {
    if (prof.p_plus - prof.p_minus > 1e-12)
      throw config_error(
          "a_p needs a constant exponent profile; use apvar instead");
    p_const = prof.p_minus;
    if (!(p_const > 1.0))
      throw config_error("a_p needs p > 1; use a_1 for p = 1");
  } else if (kind == ScalarKind::apvar) {
    aux_prof = conjugate_exponent(prof);
  } else if (kind == ScalarKind::apdagger) {
    aux_prof = dagger_inner_profile(prof);
  }

  parallel_rows(long(fam.cubes.size()), cst.threads, [&](long i) {
    CubeRow& row = rep.rows[size_t(i)];
    row.cube = fam.cubes[size_t(i)];
    switch (kind) {
      case ScalarKind::a_p:
        row.value = ap_cube_value(w, p_const, row.cube);
        break;
      case ScalarKind::a_1:
        row.value = a1_cube_value(w, row.cube);
        break;
      case ScalarKind::a_infty:
        row.value = ainfty_cube_value(w, row.cube, cst);
        break;
      case ScalarKind::apvar:
        row.value = apvar_cube_value(w, prof, aux_prof, row.cube, cst);
        break;
      case ScalarKind::apdagger:
        row.value = dagger_value(w, prof, aux_prof, row.cube, cst);
        break;
      case ScalarKind::apinfty:
        row.value = apinfty_cube_value(w, prof, row.cube, cst);
        break;
      case ScalarKind::apinfty_star:
        row.value = apinfty_star_cube_value(w, prof, row.cube, cst);
        break;
    }
  });
  summarize_rows(rep);
  return rep;
}

SampledField power_map(const SampledField& w, const ExponentProfile& prof) {
  SampledField out;
  out.lat = w.lat;
  out.v.resize(w.v.size());
  for (size_t i = 0; i < w.v.size(); ++i) {
    if (w.v[i] < 0.0)
      throw numeric_error("power map needs a nonnegative weight, point " +
                          std::to_string(i));
    out.v[i] = std::pow(w.v[i], prof.p.v[i]);
    if (!std::isfinite(out.v[i]))
      throw numeric_error("power map overflowed at point " +
                          std::to_string(i) + ": w = " +
                          std::to_string(w.v[i]) + ", p = " +
                          std::to_string(prof.p.v[i]));
  }
  return out;
}

double rw_exponent(double est, const Constants& cst) {
  if (!(est >= 1.0 - 1e-12))
    throw config_error("reverse Holder exponent needs an estimate >= 1");
  const double denom =
      cst.c1 * std::pow(est, cst.a1) * std::exp2(cst.c2 * est);
  if (!std::isfinite(denom)) return std::nextafter(1.0, 2.0);
  return 1.0 + 1.0 / denom;
}

CubeReport verify_reverse_holder(const SampledField& w,
                                 const ExponentProfile& prof, double r,
                                 const CubeFamily& fam, double est,
                                 const Constants& cst) {
  if (!(r > 1.0)) throw config_error("reverse Holder check needs r > 1");
  CubeReport rep;
  rep.kind = "reverse_holder";
  rep.rows.resize(fam.cubes.size());
  const ExponentProfile scaled = scale_exponent(prof, r);
  const double est_pow = std::pow(est, cst.a_exp);

  parallel_rows(long(fam.cubes.size()), cst.threads, [&](long i) {
    CubeRow& row = rep.rows[size_t(i)];
    row.cube = fam.cubes[size_t(i)];
    const double lhs = norm(w, scaled, row.cube, cst).value /
                       indicator_norm(scaled, row.cube, cst).value;
    const double base = norm(w, prof, row.cube, cst).value /
                        indicator_norm(prof, row.cube, cst).value;
    row.lhs = lhs;
    row.rhs = cst.c_mult * est_pow * base;
    row.aux = r;
    row.value = lhs / (est_pow * base);  // multiplier this cube needs
    row.pass = lhs <= row.rhs * (1.0 + 1e-12);
  });
  summarize_rows(rep);
  rep.smallest_c = rep.estimate;
  return rep;
}

CubeReport classical_rh_verify(const SampledField& w, const CubeFamily& fam,
                               const Constants& cst) {
  double est = 1.0;
  for (const Cube& q : fam.cubes)
    est = std::max(est, ainfty_cube_value(w, q, cst));
  const double r = 1.0 + 1.0 / (cst.tau_n(fam.lat.dim) * est);

  CubeReport rep;
  rep.kind = "classical_rh";
  rep.rows.resize(fam.cubes.size());
  parallel_rows(long(fam.cubes.size()), cst.threads, [&](long i) {
    CubeRow& row = rep.rows[size_t(i)];
    row.cube = fam.cubes[size_t(i)];
    const double mr = mean_over_cube(
        w.lat, row.cube, [&](long j) { return std::pow(w[j], r); });
    const double m = cube_mean(w, row.cube);
    row.lhs = std::pow(mr, 1.0 / r);
    row.rhs = 2.0 * m;
    row.aux = r;
    row.value = row.lhs / m;
    row.pass = row.lhs <= row.rhs * (1.0 + 1e-12);
  });
  summarize_rows(rep);
  rep.smallest_c = rep.estimate;
  return rep;
}

double max_empirical_rh(const SampledField& w, const ExponentProfile& prof,
                        const CubeFamily& fam, const Constants& cst,
                        double r_span, int depth) {
  std::vector<double> base(fam.cubes.size());
  parallel_rows(long(fam.cubes.size()), cst.threads, [&](long i) {
    const Cube& q = fam.cubes[size_t(i)];
    base[size_t(i)] =
        norm(w, prof, q, cst).value / indicator_norm(prof, q, cst).value;
  });
  for (int k = 0; k <= depth; ++k) {
    const double r = 1.0 + r_span * std::exp2(double(-k));
    const ExponentProfile scaled = scale_exponent(prof, r);
    std::vector<char> ok(fam.cubes.size(), 1);
    parallel_rows(long(fam.cubes.size()), cst.threads, [&](long i) {
      const Cube& q = fam.cubes[size_t(i)];
      const double lhs = norm(w, scaled, q, cst).value /
                         indicator_norm(scaled, q, cst).value;
      ok[size_t(i)] = lhs <= 2.0 * base[size_t(i)] * (1.0 + 1e-12);
    });
    bool all = true;
    for (char c : ok) all = all && c;
    if (all) return r;
  }
  return 1.0;
}

SampledField minimal_operator(const SampledField& f, const CubeFamily& fam) {
  SampledField out;
  out.lat = f.lat;
  out.v.assign(f.v.size(), std::numeric_limits<double>::infinity());
  for (const Cube& q : fam.cubes) {
    const double m = abs_mean(f, q);
    for_cube_points(f.lat, q, [&](long i) {
      if (m < out[i]) out[i] = m;
    });
  }
  return out;
}

namespace {

SampledField max_operator(const SampledField& f, const CubeFamily& fam,
                          bool translates_too) {
  SampledField out;
  out.lat = f.lat;
  out.v.assign(f.v.size(), 0.0);
  for (const Cube& q : fam.cubes) {
    if (!translates_too && q.shift_mask != 0) continue;
    const double m = abs_mean(f, q);
    for_cube_points(f.lat, q, [&](long i) {
      if (m > out[i]) out[i] = m;
    });
  }
  return out;
}

}  // namespace

SampledField hl_maximal(const SampledField& f, const CubeFamily& fam) {
  return max_operator(f, fam, true);
}

SampledField dyadic_maximal(const SampledField& f, const CubeFamily& fam) {
  return max_operator(f, fam, false);
}

MinimalRatioReport minimal_ratio_report(const SampledField& w,
                                        const ExponentProfile& prof,
                                        const std::vector<SampledField>& fields,
                                        const CubeFamily& fam,
                                        const Constants& cst) {
  MinimalRatioReport rep;
  const Cube box = box_cube(w.lat);
  for (const SampledField& f : fields) {
    for (double v : f.v)
      if (!(v > cst.eps_pos))
        throw numeric_error("minimal-ratio fields must be strictly positive");
    const SampledField mf = minimal_operator(f, fam);
    const double num =
        luxemburg_over(w.lat, box, prof,
                       [&](long i) {
                         return std::isinf(mf[i]) ? 0.0 : w[i] / mf[i];
                       },
                       cst)
            .value;
    const double den =
        luxemburg_over(w.lat, box, prof,
                       [&](long i) { return w[i] / f[i]; }, cst)
            .value;
    rep.ratios.push_back(num / den);
  }
  for (double r : rep.ratios) rep.max_ratio = std::max(rep.max_ratio, r);
  return rep;
}

CzReport cz_stopping_cubes(const SampledField& f, const Cube& root, double a) {
  if (!(a > 1.0)) throw config_error("stopping-cube ratio must exceed 1");
  CzReport rep;
  rep.root_mean = abs_mean(f, root);
  if (!(rep.root_mean > 0.0)) return rep;
  double maxval = 0.0;
  for_cube_points(f.lat, root, [&](long i) {
    maxval = std::max(maxval, std::abs(f[i]));
  });

  // select maximal descendants with mean above the threshold
  auto select = [&](auto&& self, const Cube& q, double t, int k) -> void {
    for (const Cube& c : cube_children(f.lat, q)) {
      const double m = abs_mean(f, c);
      if (m > t)
        rep.cubes.push_back({c, k, m, t});
      else
        self(self, c, t, k);
    }
  };

  for (int k = 0; k <= 200; ++k) {
    const double t = rep.root_mean * std::pow(a, double(k));
    if (t > maxval) break;
    select(select, root, t, k);
    rep.levels = k + 1;
  }
  return rep;
}

LwReport lw_factor(const SampledField& w, const ExponentProfile& prof,
                   const Constants& cst) {
  const Lattice& lat = w.lat;
  const double h = lat.spacing();
  long cells = std::llround(2.0 * std::exp(1.0) / h);
  if (cells < 1) cells = 1;
  const double half = double(cells) * h;
  if (half > lat.halfwidth + 1e-12)
    throw config_error(
        "domain too small for the fixed origin cube of halfwidth 2e");
  LwReport rep;
  rep.q0.dim = lat.dim;
  rep.q0.center = {0.0, 0.0, 0.0};
  rep.q0.edge = 2.0 * half;
  rep.q0_norm = norm(w, prof, rep.q0, cst).value;
  rep.value = std::max(std::pow(rep.q0_norm, prof.p_minus - prof.p_plus),
                       std::pow(rep.q0_norm, prof.p_plus - prof.p_minus));
  return rep;
}

CubeReport bmo_seminorm(const SampledField& w, const CubeFamily& fam,
                        const Constants& cst) {
  CubeReport rep;
  rep.kind = "bmo";
  rep.rows.resize(fam.cubes.size());
  parallel_rows(long(fam.cubes.size()), cst.threads, [&](long i) {
    CubeRow& row = rep.rows[size_t(i)];
    row.cube = fam.cubes[size_t(i)];
    const double m = mean_over_cube(w.lat, row.cube, [&](long j) {
      if (!(w[j] > cst.eps_pos))
        throw numeric_error("log of a non-positive weight");
      return std::log(w[j]);
    });
    row.value = mean_over_cube(w.lat, row.cube, [&](long j) {
      return std::abs(std::log(w[j]) - m);
    });
  });
  summarize_rows(rep);
  return rep;
}

double dual_value(const SampledField& w, const ExponentProfile& prof,
                  const SampledField& h, const Cube& q, const Constants& cst) {
  const double geo_h =
      geomean_over_cube(w.lat, q, [&](long i) { return h[i]; }, cst.eps_pos);
  const double nw = norm(w, prof, q, cst).value;
  const double nwh =
      luxemburg_over(w.lat, q, prof,
                     [&](long i) { return std::abs(w[i] * h[i]); }, cst)
          .value;
  if (!(nwh > 0.0)) throw numeric_error("degenerate pairing norm");
  return nw / nwh * geo_h;
}

CubeReport doubling_check(const SampledField& w, const CubeFamily& fam,
                          const std::vector<double>& lambdas,
                          const Constants& cst) {
  double est = 1.0;
  for (const Cube& q : fam.cubes)
    est = std::max(est, ainfty_cube_value(w, q, cst));
  const double expo =
      std::pow(2.0, double(fam.lat.dim)) * (1.0 + std::log2(est));

  CubeReport rep;
  rep.kind = "doubling";
  rep.rows.resize(fam.cubes.size() * lambdas.size());
  parallel_rows(long(rep.rows.size()), cst.threads, [&](long idx) {
    CubeRow& row = rep.rows[size_t(idx)];
    const Cube& q = fam.cubes[size_t(idx) / lambdas.size()];
    const double lam = lambdas[size_t(idx) % lambdas.size()];
    row.cube = q;
    row.aux = lam;
    const Cube big = dilate(q, lam);
    if (!cube_aligned(w.lat, big)) {
      row.skipped = true;
      return;
    }
    row.lhs = cube_sum(w, big);
    row.rhs = std::pow(2.0 * lam, expo) * cube_sum(w, q);
    row.value = row.lhs / row.rhs;
    row.pass = row.value <= 1.0 + 1e-12;
  });
  summarize_rows(rep);
  return rep;
}

}  // namespace varleb
