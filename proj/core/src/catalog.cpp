#include "varleb/catalog.hpp"

#include <cmath>
#include <random>

namespace varleb {

namespace {

using Pt = std::array<double, 3>;

double ramp_exponent(double x) {
  // 4 at the origin, sloping to 2 at |x| = 1/2 and flat beyond
  const double r = std::abs(x);
  return r <= 0.5 ? 4.0 - 4.0 * r : 2.0;
}

CatalogEntry scalar_entry(std::string name, double halfwidth,
                          std::function<double(Pt)> p,
                          std::optional<double> p_inf,
                          std::function<double(Pt)> w,
                          std::optional<bool> ainf, std::optional<bool> apv,
                          std::optional<bool> apinf, std::string note) {
  CatalogEntry e;
  e.name = std::move(name);
  e.halfwidth = halfwidth;
  e.exponent = std::move(p);
  e.declared_p_infty = p_inf;
  e.weight = std::move(w);
  e.in_ainfty = ainf;
  e.in_apvar = apv;
  e.in_apinfty = apinf;
  e.note = std::move(note);
  return e;
}

std::function<double(Pt)> log_gauss_weight() {
  // fixed random trigonometric sum; smooth, positive, no class claim
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  std::vector<std::array<double, 3>> terms;  // amplitude, frequency, phase
  for (int j = 0; j < 6; ++j)
    terms.push_back({0.5 * ud(rng), double(1 + j) * 0.75 + ud(rng),
                     2.0 * M_PI * ud(rng)});
  return [terms](Pt x) {
    double g = 0.0;
    for (const auto& t : terms) g += t[0] * std::cos(t[1] * x[0] + t[2]);
    return std::exp(g);
  };
}

std::vector<CatalogEntry> build_entries() {
  std::vector<CatalogEntry> out;
  const auto p2 = [](Pt) { return 2.0; };

  out.push_back(scalar_entry(
      "unit", 2.0, p2, 2.0, [](Pt) { return 1.0; }, true, true, true,
      "the trivial weight"));
  for (int k : {2, 10, 100})
    out.push_back(scalar_entry(
        "const_k" + std::to_string(k), 2.0, p2, 2.0,
        [k](Pt) { return double(k); }, true, true, true, "constant weight"));
  out.push_back(scalar_entry(
      "exp_linear", 2.0, p2, 2.0, [](Pt x) { return std::exp(x[0]); }, true,
      true, true, "smooth log-linear weight"));
  out.push_back(scalar_entry(
      "power_half", 2.0, p2, 2.0,
      [](Pt x) { return std::pow(std::abs(x[0]), 0.5); }, true, true, true,
      "positive power, all classes"));
  out.push_back(scalar_entry(
      "power_mhalf", 2.0, [](Pt) { return 1.5; }, 1.5,
      [](Pt x) { return std::pow(std::abs(x[0]), -0.5); }, true, true, true,
      "mild negative power paired with p = 1.5"));
  out.push_back(scalar_entry(
      "power_gap", 2.0, [](Pt x) { return ramp_exponent(x[0]); }, 2.0,
      [](Pt x) { return std::pow(std::abs(x[0]), -0.9); }, true, false, false,
      "in the classical class but outside both variable classes: the "
      "origin exponent amplifies the singularity"));

  for (int k : {2, 10, 100}) {
    out.push_back(scalar_entry(
        "remark_p3_k" + std::to_string(k), 2.0,
        [](Pt x) { return std::abs(x[0]) <= 1.0 ? 3.0 - 2.0 * std::abs(x[0])
                                                : 1.0; },
        1.0, [k](Pt x) {
          const double p =
              std::abs(x[0]) <= 1.0 ? 3.0 - 2.0 * std::abs(x[0]) : 1.0;
          return std::pow(double(k), 1.0 / p);
        },
        true, std::nullopt, true,
        "exponent sloping 3 to 1; weight k^(1/p), so w^p is constant"));
    out.push_back(scalar_entry(
        "rh_remark_k" + std::to_string(k), 2.0,
        [](Pt x) { return std::abs(x[0]) <= 1.0 ? 1.0 + std::abs(x[0]) : 2.0; },
        2.0, [k](Pt x) {
          const double p =
              std::abs(x[0]) <= 1.0 ? 1.0 + std::abs(x[0]) : 2.0;
          return std::pow(double(k), 1.0 / p);
        },
        true, std::nullopt, true,
        "exponent sloping 1 to 2; weight k^(1/p), so w^p is constant"));
  }

  out.push_back(scalar_entry("log_gauss", 2.0, p2, 2.0, log_gauss_weight(),
                             std::nullopt, std::nullopt, std::nullopt,
                             "seeded random trigonometric weight, no claims"));

  {
    CatalogEntry e;
    e.name = "diag_mix";
    e.halfwidth = 2.0;
    e.m = 2;
    e.declared_p_infty = 2.0;
    e.exponent = p2;
    e.matrix = [](Pt x) {
      Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(2, 2);
      mat(0, 0) = std::pow(std::abs(x[0]), 0.3);
      mat(1, 1) = 1.0;
      return mat;
    };
    e.in_apinfty = true;
    e.note = "diagonal mix of a mild power and a constant";
    out.push_back(e);

    CatalogEntry r = e;
    r.name = "diag_mix_rot";
    const double c = std::cos(M_PI / 6.0), s = std::sin(M_PI / 6.0);
    r.matrix = [c, s](Pt x) {
      Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
      d(0, 0) = std::pow(std::abs(x[0]), 0.3);
      d(1, 1) = 1.0;
      Eigen::MatrixXd rot(2, 2);
      rot << c, -s, s, c;
      return Eigen::MatrixXd(rot * d * rot.transpose());
    };
    r.note = "the diagonal mix conjugated by a thirty degree rotation";
    out.push_back(r);
  }

  {
    CatalogEntry e;
    e.name = "m1_exp_linear";
    e.halfwidth = 2.0;
    e.m = 1;
    e.declared_p_infty = 2.0;
    e.exponent = p2;
    e.matrix = [](Pt x) {
      Eigen::MatrixXd mat(1, 1);
      mat(0, 0) = std::exp(x[0]);
      return mat;
    };
    e.in_apinfty = true;
    e.note = "one-by-one embedding of the log-linear weight";
    out.push_back(e);

    CatalogEntry f = e;
    f.name = "m1_power_half";
    f.matrix = [](Pt x) {
      Eigen::MatrixXd mat(1, 1);
      mat(0, 0) = std::pow(std::abs(x[0]), 0.5);
      return mat;
    };
    f.note = "one-by-one embedding of the positive power weight";
    out.push_back(f);
  }

  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = build_entries();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog_entries())
    if (e.name == name) return e;
  throw config_error("unknown catalog entry: " + name);
}

Instantiated instantiate(const CatalogEntry& entry, const Lattice& lat,
                         const Constants& cst) {
  if (lat.dim != entry.dim)
    throw config_error("catalog entry " + entry.name + " is " +
                       std::to_string(entry.dim) + "-dimensional");
  Instantiated inst;
  const SampledField p = make_field(lat, entry.exponent);
  inst.profile = summarize_exponent(p, entry.declared_p_infty);
  if (entry.m > 0) {
    inst.is_matrix = true;
    inst.wmat = make_matrix_field(lat, entry.m, entry.matrix, cst);
  } else {
    inst.w = make_field(lat, entry.weight);
    for (double v : inst.w.v)
      if (!(v > 0.0) || !std::isfinite(v))
        throw numeric_error("catalog weight must be positive and finite");
  }
  return inst;
}

Instantiated instantiate(const std::string& name, const Lattice& lat,
                         const Constants& cst) {
  return instantiate(catalog_entry(name), lat, cst);
}

std::string to_string(SweepRoute r) {
  switch (r) {
    case SweepRoute::ainfty_w: return "ainfty_w";
    case SweepRoute::ainfty_power: return "ainfty_power";
    case SweepRoute::apinfty_norm: return "apinfty_norm";
    case SweepRoute::apvar_norm: return "apvar_norm";
    case SweepRoute::apdagger_power: return "apdagger_power";
    case SweepRoute::matrix_apinfty: return "matrix_apinfty";
  }
  return "?";
}

SweepResult stability_sweep(const CatalogEntry& entry, SweepRoute route,
                            int t_first, int t_last, int extra_bits,
                            const Constants& cst) {
  if (t_first < 1 || t_last < t_first)
    throw config_error("sweep needs 1 <= t_first <= t_last");
  if (t_last + extra_bits > 22)
    throw config_error("sweep resolution exceeds the supported range");
  const bool matrix_route = route == SweepRoute::matrix_apinfty;
  if (matrix_route != (entry.m > 0))
    throw config_error("sweep route does not fit the entry kind");

  SweepResult res;
  res.route = route;
  for (int t = t_first; t <= t_last; ++t) {
    const Lattice lat =
        build_lattice(entry.dim, entry.halfwidth, 1L << (t + extra_bits));
    const Instantiated inst = instantiate(entry, lat, cst);
    const CubeFamily fam = dyadic_family(lat, 0, t, false);
    double est = 0.0;
    switch (route) {
      case SweepRoute::ainfty_w:
        est = family_constant(ScalarKind::a_infty, inst.w, inst.profile, fam,
                              cst)
                  .estimate;
        break;
      case SweepRoute::ainfty_power:
        est = family_constant(ScalarKind::a_infty,
                              power_map(inst.w, inst.profile), inst.profile,
                              fam, cst)
                  .estimate;
        break;
      case SweepRoute::apinfty_norm:
        est = family_constant(ScalarKind::apinfty, inst.w, inst.profile, fam,
                              cst)
                  .estimate;
        break;
      case SweepRoute::apvar_norm:
        est = family_constant(ScalarKind::apvar, inst.w, inst.profile, fam,
                              cst)
                  .estimate;
        break;
      case SweepRoute::apdagger_power:
        est = family_constant(ScalarKind::apdagger,
                              power_map(inst.w, inst.profile), inst.profile,
                              fam, cst)
                  .estimate;
        break;
      case SweepRoute::matrix_apinfty:
        est = matrix_family_constant(MatrixKind::apinfty, inst.wmat,
                                     inst.profile, fam, cst)
                  .estimate;
        break;
    }
    res.steps.push_back({t, lat.points_per_axis, est});
  }
  res.growth = res.steps.back().estimate / res.steps.front().estimate;
  res.divergent = res.growth >= cst.divergence_factor;
  res.stable = res.growth <= cst.stability_factor;
  return res;
}

FlagCheck verify_flags(const CatalogEntry& entry, int t_first, int t_last,
                       int extra_bits, const Constants& cst) {
  FlagCheck chk;
  auto judge = [&](const char* what, std::optional<bool> flag,
                   SweepRoute route) {
    if (!flag) return;
    const SweepResult res =
        stability_sweep(entry, route, t_first, t_last, extra_bits, cst);
    chk.detail += std::string(what) + " growth x" +
                  std::to_string(res.growth) + "; ";
    if (*flag && !res.stable) {
      chk.consistent = false;
      chk.detail += "expected stable; ";
    }
    if (!*flag && !res.divergent) {
      chk.consistent = false;
      chk.detail += "expected divergent; ";
    }
  };

  if (entry.m > 0) {
    judge("matrix_apinfty", entry.in_apinfty, SweepRoute::matrix_apinfty);
    return chk;
  }
  judge("ainfty_w", entry.in_ainfty, SweepRoute::ainfty_w);
  judge("ainfty_power", entry.in_apinfty, SweepRoute::ainfty_power);
  judge("apdagger_power", entry.in_apvar, SweepRoute::apdagger_power);

  // the direct functional and the membership route must agree on stability
  if (entry.in_apinfty) {
    const SweepResult direct = stability_sweep(
        entry, SweepRoute::apinfty_norm, t_first, t_last, extra_bits, cst);
    const SweepResult member = stability_sweep(
        entry, SweepRoute::ainfty_power, t_first, t_last, extra_bits, cst);
    chk.detail += "apinfty_norm growth x" + std::to_string(direct.growth) +
                  "; ";
    if (direct.stable != member.stable) {
      chk.consistent = false;
      chk.detail += "route stability disagrees; ";
    }
  }
  return chk;
}

}  // namespace varleb
