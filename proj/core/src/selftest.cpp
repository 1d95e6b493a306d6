#include "varleb/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "varleb/catalog.hpp"
#include "varleb/dims.hpp"
#include "varleb/matrixweights.hpp"
#include "varleb/scalarweights.hpp"
#include "varleb/vnorm.hpp"

namespace varleb {

namespace {

std::string fmt(double v, int prec = 6) {
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

// collects sub-check verdicts for one criterion; any failed check fails it
struct Checker {
  std::ostringstream text;
  int failures = 0;
  bool first = true;

  void sep() {
    if (!first) text << "; ";
    first = false;
  }
  void check(bool ok, const std::string& what) {
    sep();
    if (!ok) {
      text << "FAIL ";
      ++failures;
    }
    text << what;
  }
  void note(const std::string& what) {
    sep();
    text << what;
  }
};

Cube unit_right_cube() {
  Cube q;
  q.dim = 1;
  q.center = {0.5, 0.0, 0.0};
  q.edge = 1.0;
  return q;
}

ExponentProfile constant_profile(const Lattice& lat, double p) {
  return summarize_exponent(make_field(lat, [p](std::array<double, 3>) { return p; }), p);
}

// 1. Closed-form modular on (0,1] with p(x) = 3 - 2x: for w_k = k^{1/p(.)}
//    the modular of w_k * k^{-log(3)/2} integrates to
//    k^{1 - 3 log(3)/2} (k^{log 3} - 1) / (log(3) log(k)), the indicator norm
//    is exactly one, and the geometric mean of 1/w_k is k^{-log(3)/2}.
void criterion_modular(Checker& ck, const Constants& cst) {
  const Lattice lat = build_lattice(1, 1.0, 16384);
  const SampledField pf =
      make_field(lat, [](std::array<double, 3> x) { return 3.0 - 2.0 * std::abs(x[0]); });
  const ExponentProfile prof = summarize_exponent(pf, 1.0);
  const Cube q = unit_right_cube();
  const double ln3 = std::log(3.0);

  const NormResult one = indicator_norm(prof, q, cst);
  ck.check(std::abs(one.value - 1.0) <= 1e-9,
           "indicator norm " + fmt(one.value, 12) + " within 1e-9 of 1");

  for (double k : {2.0, 10.0, 100.0}) {
    SampledField f = pf;
    for (long i = 0; i < lat.num_points(); ++i)
      f[i] = std::pow(k, 1.0 / pf[i] - 0.5 * ln3);
    const double got = modular(f, prof, q);
    const double want = std::pow(k, 1.0 - 1.5 * ln3) *
                        (std::pow(k, ln3) - 1.0) / (ln3 * std::log(k));
    const double rel = std::abs(got - want) / want;
    ck.check(rel <= 1e-6, "k=" + fmt(k, 3) + " modular rel err " + fmt(rel, 3));

    const double geo = geomean_over_cube(
        lat, q, [&](long i) { return std::pow(k, -1.0 / pf[i]); }, cst.eps_pos);
    const double geow = std::pow(k, -0.5 * ln3);
    const double grel = std::abs(geo - geow) / geow;
    ck.check(grel <= 1e-9, "k=" + fmt(k, 3) + " geomean rel err " + fmt(grel, 3));
  }
}

// 2. With p(x) = 1 + x on (0,1] and w_k = k^{1/p(.)}, the norm lambda of
//    w_k 1_(0,1] solves k = lambda^2 log(lambda) / (lambda - 1) and is at
//    least sqrt(k).
void criterion_root_identity(Checker& ck, const Constants& cst) {
  const Lattice lat = build_lattice(1, 1.0, 16384);
  const SampledField pf =
      make_field(lat, [](std::array<double, 3> x) { return 1.0 + std::abs(x[0]); });
  const ExponentProfile prof = summarize_exponent(pf, 2.0);
  const Cube q = unit_right_cube();

  for (double k : {2.0, 10.0, 100.0}) {
    SampledField w = pf;
    for (long i = 0; i < lat.num_points(); ++i) w[i] = std::pow(k, 1.0 / pf[i]);
    const double lambda = norm(w, prof, q, cst).value;
    const double implied = lambda * lambda * std::log(lambda) / (lambda - 1.0);
    const double rel = std::abs(implied - k) / k;
    ck.check(rel <= 1e-8, "k=" + fmt(k, 3) + " lambda=" + fmt(lambda, 8) +
                              " identity rel err " + fmt(rel, 3));
    ck.check(lambda >= std::sqrt(k) * (1.0 - 1e-12),
             "k=" + fmt(k, 3) + " lambda >= sqrt(k)");
  }
}

// 3. Jensen floors across the scalar catalog: the mean/geomean gap
//    functional never drops below one, and the geomean-normalized cube value
//    dominates the mean-normalized one, on every dyadic cube.
void criterion_jensen(Checker& ck, const Constants& cst) {
  const Lattice lat = build_lattice(1, 2.0, 1024);
  const CubeFamily fam = dyadic_family(lat, 0, 6, false);
  double min_ainfty = std::numeric_limits<double>::infinity();
  double min_gap = std::numeric_limits<double>::infinity();
  int entries = 0;
  for (const CatalogEntry& e : catalog_entries()) {
    if (e.m != 0) continue;
    const Instantiated inst = instantiate(e, lat, cst);
    for (const Cube& q : fam.cubes) {
      min_ainfty = std::min(min_ainfty, ainfty_cube_value(inst.w, q, cst));
      const double api = apinfty_cube_value(inst.w, inst.profile, q, cst);
      const double star = apinfty_star_cube_value(inst.w, inst.profile, q, cst);
      min_gap = std::min(min_gap, api - star);
    }
    ++entries;
  }
  ck.note(fmt(entries, 3) + " scalar weights, " + fmt(double(fam.cubes.size()), 4) +
          " cubes each");
  ck.check(min_ainfty >= 1.0 - 1e-10,
           "min mean*geomean(1/w) value " + fmt(min_ainfty, 12));
  ck.check(min_gap >= -1e-10,
           "min geomean-vs-mean normalization gap " + fmt(min_gap, 3));
}

// 4. Convexification: the family estimate of the geomean-normalized
//    functional for (w, p) equals the r-th root of the estimate for
//    (w^r, p/r), for r = 1/2 and r = 2, across the scalar catalog.
void criterion_convexify(Checker& ck, const Constants& cst) {
  const Lattice lat = build_lattice(1, 2.0, 1024);
  const CubeFamily fam = dyadic_family(lat, 0, 6, false);
  double worst = 0.0;
  std::string worst_tag = "-";
  for (const CatalogEntry& e : catalog_entries()) {
    if (e.m != 0) continue;
    const Instantiated inst = instantiate(e, lat, cst);
    const double base =
        family_constant(ScalarKind::apinfty, inst.w, inst.profile, fam, cst).estimate;
    for (double r : {0.5, 2.0}) {
      SampledField wr = inst.w;
      for (long i = 0; i < lat.num_points(); ++i) wr[i] = std::pow(inst.w[i], r);
      const ExponentProfile prof_r = scale_exponent(inst.profile, 1.0 / r);
      const double scaled =
          family_constant(ScalarKind::apinfty, wr, prof_r, fam, cst).estimate;
      const double rel = std::abs(std::pow(scaled, 1.0 / r) - base) / base;
      if (rel > worst) {
        worst = rel;
        worst_tag = e.name + " r=" + fmt(r, 2);
      }
    }
  }
  ck.check(worst <= 1e-8, "worst rel gap " + fmt(worst, 3) + " at " + worst_tag);
}

// 5. Refinement dichotomy between |x|^{1/2} and |x|^{-0.9} under the ramp
//    exponent: as lattice and family refine together the membership-route
//    estimate stays flat for the first weight and blows past the divergence
//    factor for the second, while the plain scalar gap functional of the
//    second stays flat.
void criterion_dichotomy(Checker& ck, const Constants& cst) {
  const CatalogEntry& ph = catalog_entry("power_half");
  const CatalogEntry& pg = catalog_entry("power_gap");
  const int t0 = 5, t1 = 7, bits = 7;

  const SweepResult ph_mem = stability_sweep(ph, SweepRoute::ainfty_power, t0, t1, bits, cst);
  const SweepResult ph_dir = stability_sweep(ph, SweepRoute::apinfty_norm, t0, t1, bits, cst);
  const SweepResult pg_mem = stability_sweep(pg, SweepRoute::ainfty_power, t0, t1, bits, cst);
  const SweepResult pg_sca = stability_sweep(pg, SweepRoute::ainfty_w, t0, t1, bits, cst);
  const SweepResult pg_dir = stability_sweep(pg, SweepRoute::apinfty_norm, t0, t1, bits, cst);

  ck.check(ph_mem.stable, "power_half membership growth x" + fmt(ph_mem.growth, 4) +
                              " <= " + fmt(cst.stability_factor, 3));
  ck.check(ph_dir.stable, "power_half direct growth x" + fmt(ph_dir.growth, 4));
  ck.check(pg_mem.divergent, "power_gap membership growth x" + fmt(pg_mem.growth, 4) +
                                 " >= " + fmt(cst.divergence_factor, 3));
  ck.check(pg_sca.stable, "power_gap scalar-gap growth x" + fmt(pg_sca.growth, 4));
  ck.note("power_gap direct-route growth x" + fmt(pg_dir.growth, 4) + " (reported)");
}

// 6. Classical reverse Holder at r = 1 + 1/(2^{11+n} est): the r-mean is at
//    most twice the mean on every dyadic cube, for every catalog weight
//    claiming classical membership.
void criterion_classical_rh(Checker& ck, const Constants& cst) {
  const Lattice lat = build_lattice(1, 2.0, 1024);
  const CubeFamily fam = dyadic_family(lat, 0, 6, false);
  int entries = 0;
  double worst_ratio = 0.0;
  std::string worst_name = "-";
  bool all = true;
  for (const CatalogEntry& e : catalog_entries()) {
    if (e.m != 0 || !e.in_ainfty.has_value() || !*e.in_ainfty) continue;
    const Instantiated inst = instantiate(e, lat, cst);
    const CubeReport rep = classical_rh_verify(inst.w, fam, cst);
    all = all && rep.all_pass;
    for (const CubeRow& row : rep.rows) {
      if (row.skipped) continue;
      const double ratio = row.lhs / row.rhs;
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst_name = e.name;
      }
    }
    ++entries;
  }
  ck.note(fmt(entries, 3) + " weights");
  ck.check(all, "every cube passes; worst (r-mean)/(2 mean) = " +
                    fmt(worst_ratio, 6) + " at " + worst_name);
}

// 7. Reducing operators: a constant diagonal matrix weight is recovered
//    exactly; for a varying diagonal weight the fitted operator matches the
//    per-axis directional norms within the fit budget, agrees with the
//    minimum-volume-ellipsoid oracle within an operator-norm factor of four,
//    and its inverse tracks the inverse log-means within the same budget.
void criterion_reducing(Checker& ck, const Constants& cst) {
  const Lattice lat = build_lattice(1, 2.0, 256);
  const ExponentProfile prof = constant_profile(lat, 2.0);
  const int dirs = default_directions(2);

  Eigen::MatrixXd d25 = Eigen::MatrixXd::Zero(2, 2);
  d25(0, 0) = 2.0;
  d25(1, 1) = 5.0;
  const MatrixField wconst =
      make_matrix_field(lat, 2, [&](std::array<double, 3>) { return d25; }, cst);
  const Cube qc = centered_base_cubes(lat, 1, 1).front();
  const ReducingResult rc = reducing_operator(wconst, prof, qc, dirs, cst);
  const double cdiff = (rc.a - d25).cwiseAbs().maxCoeff();
  ck.check(cdiff <= 1e-6, "constant diag(2,5) recovered, max entry err " + fmt(cdiff, 3));

  const Instantiated dm = instantiate("diag_mix", lat, cst);
  const Cube qv = dyadic_family(lat, 2, 2, false).cubes.front();
  const ReducingResult rv = reducing_operator(dm.wmat, dm.profile, qv, dirs, cst);
  const auto pr = exponent_range(dm.profile, qv);
  const double budget =
      cst.slack_fit * std::pow(5.0, std::max(0.0, 1.0 / pr.first - 1.0));
  for (int axis = 0; axis < 2; ++axis) {
    Eigen::VectorXd ez = Eigen::VectorXd::Zero(2);
    ez(axis) = 1.0;
    const double rho = rho_q(dm.wmat, dm.profile, qv, ez, cst);
    const double ratio = (rv.a * ez).norm() / rho;
    ck.check(ratio <= budget && ratio >= 1.0 / budget,
             "axis " + fmt(axis, 1) + " |A e|/rho = " + fmt(ratio, 6) +
                 " within budget " + fmt(budget, 3));
  }
  ck.check(rv.fit_hi / rv.fit_lo <= budget,
           "fit spread " + fmt(rv.fit_hi / rv.fit_lo, 6));

  std::vector<Eigen::VectorXd> pts;
  for (const Eigen::VectorXd& z : probe_directions(2, dirs))
    pts.push_back(z / rho_q(dm.wmat, dm.profile, qv, z, cst));
  const Eigen::MatrixXd a_mvee = spd_sqrt(mvee_oracle(pts));
  const double f1 = op_norm(rv.a * spd_inverse(a_mvee));
  const double f2 = op_norm(a_mvee * spd_inverse(rv.a));
  ck.check(f1 <= 4.0 && f2 <= 4.0,
           "vs ellipsoid oracle: factors " + fmt(f1, 5) + ", " + fmt(f2, 5) + " <= 4");

  const auto [ilo, ihi] = inverse_reducing_check(dm.wmat, dm.profile, qv, rv.a, dirs, cst);
  ck.check(ihi / ilo <= cst.slack_fit,
           "inverse spread " + fmt(ihi / ilo, 6) + " <= " + fmt(cst.slack_fit, 3));
}

// 8. One-by-one matrix fields reduce to the scalar theory: every matrix
//    functional agrees with its scalar counterpart to 1e-9 relative.
void criterion_m1_reduction(Checker& ck, const Constants& cst) {
  const Lattice lat = build_lattice(1, 2.0, 256);
  const Instantiated sc = instantiate("exp_linear", lat, cst);
  const Instantiated mt = instantiate("m1_exp_linear", lat, cst);
  const ExponentProfile conj = conjugate_exponent(sc.profile);
  const CubeFamily fam = dyadic_family(lat, 1, 2, false);

  double worst = 0.0;
  std::string worst_tag = "-";
  auto track = [&](double a, double b, const std::string& tag) {
    const double rel = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
    if (rel > worst) {
      worst = rel;
      worst_tag = tag;
    }
  };

  Eigen::VectorXd e1 = Eigen::VectorXd::Ones(1);
  for (size_t c = 0; c < fam.cubes.size(); ++c) {
    const Cube& q = fam.cubes[c];
    const std::string at = " cube " + fmt(double(c), 2);
    track(matrix_apinfty_cube_value(mt.wmat, mt.profile, q, cst).value,
          apinfty_cube_value(sc.w, sc.profile, q, cst), "apinfty" + at);
    track(matrix_a1infty_cube_value(mt.wmat, q, cst).value,
          ainfty_cube_value(sc.w, q, cst), "a1infty" + at);
    track(matrix_apvar_cube_value(mt.wmat, mt.profile, conj, q, cst).value,
          apvar_cube_value(sc.w, sc.profile, conj, q, cst), "apvar" + at);

    const ReducingResult rr = reducing_operator(mt.wmat, mt.profile, q, 8, cst);
    const double rho = norm(sc.w, sc.profile, q, cst).value /
                       indicator_norm(sc.profile, q, cst).value;
    track(rr.a(0, 0), rho, "reducing" + at);

    const Cube twice = dilate(q, 2.0);
    if (cube_aligned(lat, twice)) {
      const double lo_m = dim_lower_value(mt.wmat, mt.profile, q, 2.0, cst);
      const double lo_s =
          rho * std::exp(-mean_over_cube(lat, twice,
                                         [&](long i) { return std::log(sc.w[i]); }));
      track(lo_m, lo_s, "dil-lower" + at);
      const double up_m = dim_upper_value(mt.wmat, mt.profile, q, 2.0, cst);
      const double up_s = norm(sc.w, sc.profile, twice, cst).value /
                          indicator_norm(sc.profile, twice, cst).value *
                          std::exp(-mean_over_cube(lat, q, [&](long i) {
                            return std::log(sc.w[i]);
                          }));
      track(up_m, up_s, "dil-upper" + at);
    }
  }

  const std::vector<Eigen::MatrixXd> ident{Eigen::MatrixXd::Identity(1, 1)};
  const CubeReport mrh = matrix_rh_verify(mt.wmat, mt.profile, 1.5, fam, ident, 1.0, cst);
  const CubeReport srh = verify_reverse_holder(sc.w, sc.profile, 1.5, fam, 1.0, cst);
  for (size_t i = 0; i < srh.rows.size(); ++i) {
    track(mrh.rows[i].lhs, srh.rows[i].lhs, "rh-lhs row " + fmt(double(i), 2));
    track(mrh.rows[i].rhs, srh.rows[i].rhs, "rh-rhs row " + fmt(double(i), 2));
  }

  const CubeReport wmr = wm_reverse_check(mt.wmat, mt.profile, fam, ident, cst);
  for (size_t i = 0; i < fam.cubes.size(); ++i) {
    const Cube& q = fam.cubes[i];
    const double scalar_ratio = norm(sc.w, sc.profile, q, cst).value /
                                indicator_norm(sc.profile, q, cst).value /
                                cube_mean(sc.w, q);
    track(wmr.rows[i].value, scalar_ratio, "wm-reverse row " + fmt(double(i), 2));
  }

  ck.check(worst <= 1e-9, "worst rel gap " + fmt(worst, 3) + " at " + worst_tag);
}

// 9. Dilation profiles and operator comparability: constant weights fit flat
//    power laws; same-cube operator ratios are exactly one; and for the
//    diagonal catalog weights the smallest passing multiplier of the
//    scale-and-distance bound is finite and moves less than x1.5 when the
//    dilation set grows from {1,2,4} to {1,2,4,8}.
void criterion_dims(Checker& ck, const Constants& cst) {
  const Lattice lat = build_lattice(1, 2.0, 256);
  const std::vector<Cube> base = centered_base_cubes(lat, 3, 5);
  const std::vector<double> lam4{1.0, 2.0, 4.0, 8.0};

  const ExponentProfile p2 = constant_profile(lat, 2.0);
  Eigen::MatrixXd d25 = Eigen::MatrixXd::Zero(2, 2);
  d25(0, 0) = 2.0;
  d25(1, 1) = 5.0;
  const MatrixField wconst =
      make_matrix_field(lat, 2, [&](std::array<double, 3>) { return d25; }, cst);
  const MatrixField wconst1 = make_matrix_field(
      lat, 1, [](std::array<double, 3>) { return Eigen::MatrixXd::Constant(1, 1, 3.0); },
      cst);
  for (const MatrixField* wf : {&wconst, &wconst1}) {
    const DimsEstimate est = estimate_dimensions(*wf, p2, base, lam4, cst);
    ck.check(est.lower.d <= cst.tol_slope && est.upper.d <= cst.tol_slope &&
                 est.lower.power_law_ok && est.upper.power_law_ok,
             "constant m=" + fmt(double(wf->m), 1) + " slopes " +
                 fmt(est.lower.d, 3) + "/" + fmt(est.upper.d, 3));
  }

  auto pair_set = [&](const std::vector<double>& lams) {
    std::vector<Cube> cubes;
    for (double l : lams)
      for (const Cube& c : centered_base_cubes(lat, 3, 4)) {
        const Cube d = dilate(c, l);
        if (cube_aligned(lat, d)) cubes.push_back(d);
      }
    const CubeFamily off = dyadic_family(lat, 3, 3, false);
    cubes.push_back(off.cubes[1]);
    cubes.push_back(off.cubes[6]);
    return cubes;
  };
  const std::vector<Cube> set_small = pair_set({1.0, 2.0, 4.0});
  const std::vector<Cube> set_large = pair_set(lam4);

  for (const char* name : {"diag_mix", "diag_mix_rot"}) {
    const Instantiated inst = instantiate(name, lat, cst);
    const DimsEstimate est =
        estimate_dimensions(inst.wmat, inst.profile, base, lam4, cst);
    const double d1 = est.lower.d + cst.d_margin;
    const double d2 = est.upper.d + cst.d_margin;
    const CubeReport small =
        qp3_bound_check(inst.wmat, inst.profile, set_small, d1, d2, cst);
    const CubeReport large =
        qp3_bound_check(inst.wmat, inst.profile, set_large, d1, d2, cst);

    const size_t n = set_small.size();
    double diag_err = 0.0;
    for (size_t i = 0; i < n; ++i)
      diag_err = std::max(diag_err, std::abs(small.rows[i * n + i].lhs - 1.0));
    ck.check(diag_err <= 1e-10,
             std::string(name) + " same-cube ratio err " + fmt(diag_err, 3));

    const double c1 = small.smallest_c, c2 = large.smallest_c;
    const double move = std::max(c1 / c2, c2 / c1);
    ck.check(std::isfinite(c1) && std::isfinite(c2) && c1 > 0.0 && c2 > 0.0 &&
                 move < 1.5,
             std::string(name) + " smallest multiplier " + fmt(c1, 5) + " -> " +
                 fmt(c2, 5) + " (x" + fmt(move, 4) + ", d=" + fmt(d1, 3) + "/" +
                 fmt(d2, 3) + ")");
  }
}

struct CriterionSpec {
  int index;
  const char* name;
  double budget;
  void (*fn)(Checker&, const Constants&);
};

constexpr CriterionSpec kCriteria[] = {
    {1, "modular-closed-form", 5.0, criterion_modular},
    {2, "norm-root-identity", 5.0, criterion_root_identity},
    {3, "jensen-floors", 30.0, criterion_jensen},
    {4, "convexification-identity", 30.0, criterion_convexify},
    {5, "refinement-dichotomy", 60.0, criterion_dichotomy},
    {6, "classical-reverse-holder", 30.0, criterion_classical_rh},
    {7, "reducing-operators", 60.0, criterion_reducing},
    {8, "one-by-one-reduction", 30.0, criterion_m1_reduction},
    {9, "dimension-bounds", 60.0, criterion_dims},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& out, const Constants& cst) {
  std::vector<CriterionResult> results;
  for (const CriterionSpec& spec : kCriteria) {
    Checker ck;
    const auto start = std::chrono::steady_clock::now();
    try {
      spec.fn(ck, cst);
    } catch (const std::exception& e) {
      ck.check(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (secs > spec.budget) ck.check(false, "over time budget");

    CriterionResult r;
    r.index = spec.index;
    r.name = spec.name;
    r.pass = ck.failures == 0;
    r.detail = ck.text.str();
    r.seconds = secs;
    r.budget_seconds = spec.budget;
    out << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.index << " "
        << r.name << " (" << fmt(secs, 3) << "s of " << fmt(spec.budget, 3)
        << "s): " << r.detail << "\n"
        << std::flush;
    results.push_back(std::move(r));
  }
  int passed = 0;
  for (const CriterionResult& r : results) passed += r.pass ? 1 : 0;
  out << "acceptance: " << passed << "/" << results.size() << " criteria passed\n";
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results)
    if (!r.pass) return false;
  return true;
}

std::vector<std::string> acceptance_labels() {
  std::vector<std::string> labels;
  for (const CriterionSpec& spec : kCriteria)
    labels.push_back(std::to_string(spec.index) + " " + spec.name);
  return labels;
}

}  // namespace varleb
