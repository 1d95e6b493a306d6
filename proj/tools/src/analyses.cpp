#include "analyses.hpp"

#include <string>
#include <vector>

#include "expr.hpp"
#include "varleb/dims.hpp"
#include "varleb/errors.hpp"
#include "varleb/scalarweights.hpp"
#include "varleb/vnorm.hpp"

namespace varleb_cli {

using nlohmann::json;
using varleb::config_error;

namespace {

varleb::ScalarKind scalar_kind(const std::string& name) {
  using K = varleb::ScalarKind;
  for (K k : {K::a_p, K::a_1, K::a_infty, K::apvar, K::apdagger, K::apinfty,
              K::apinfty_star})
    if (varleb::to_string(k) == name) return k;
  throw config_error("unknown scalar functional \"" + name + "\"");
}

varleb::MatrixKind matrix_kind(const std::string& name) {
  using K = varleb::MatrixKind;
  if (name == "apvar") return K::apvar;
  if (name == "apinfty") return K::apinfty;
  if (name == "a1infty") return K::a1infty;
  throw config_error("unknown matrix functional \"" + name + "\"");
}

varleb::SweepRoute sweep_route(const std::string& name) {
  using R = varleb::SweepRoute;
  for (R r : {R::ainfty_w, R::ainfty_power, R::apinfty_norm, R::apvar_norm,
              R::apdagger_power, R::matrix_apinfty})
    if (varleb::to_string(r) == name) return r;
  throw config_error("unknown sweep route \"" + name + "\"");
}

const varleb::SampledField& scalar_weight(const RunSetup& s,
                                          const std::string& kind) {
  if (s.is_matrix)
    throw config_error(kind + " needs a scalar weight");
  return s.w;
}

void csv_row(std::ostream& csv, int analysis, const std::string& kind,
             long row, const varleb::Cube& q, double value, double lhs,
             double rhs, double aux, bool pass, bool skipped) {
  csv << analysis << ',' << kind << ',' << row << ',' << q.level << ','
      << q.shift_mask << ',' << JsonWriter::num(q.center[0]) << ','
      << JsonWriter::num(q.center[1]) << ',' << JsonWriter::num(q.center[2])
      << ',' << JsonWriter::num(q.edge) << ',' << JsonWriter::num(value) << ','
      << JsonWriter::num(lhs) << ',' << JsonWriter::num(rhs) << ','
      << JsonWriter::num(aux) << ',' << (pass ? 1 : 0) << ','
      << (skipped ? 1 : 0) << '\n';
}

void emit_report(JsonWriter& jw, std::ostream& csv, int analysis,
                 const std::string& csv_kind, const varleb::CubeReport& rep) {
  jw.kv("rows", long(rep.rows.size()));
  jw.kv("estimate", rep.estimate);
  jw.kv("argmax", rep.argmax);
  jw.kv("skipped", rep.skipped);
  jw.kv("all_pass", rep.all_pass);
  jw.kv("smallest_c", rep.smallest_c);
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    const varleb::CubeRow& r = rep.rows[i];
    csv_row(csv, analysis, csv_kind, long(i), r.cube, r.value, r.lhs, r.rhs,
            r.aux, r.pass, r.skipped);
  }
}

double opt_num(const json& a, const char* key, double fallback) {
  return a.contains(key) ? a.at(key).get<double>() : fallback;
}

int opt_int(const json& a, const char* key, int fallback) {
  return a.contains(key) ? a.at(key).get<int>() : fallback;
}

// base cubes plus their aligned dilations, for the pair bound
std::vector<varleb::Cube> dilation_set(const varleb::Lattice& lat,
                                       const std::vector<varleb::Cube>& base,
                                       const std::vector<double>& lambdas) {
  std::vector<varleb::Cube> out;
  for (const varleb::Cube& q : base)
    for (double lam : lambdas) {
      varleb::Cube d = varleb::dilate(q, lam);
      if (varleb::cube_aligned(lat, d)) out.push_back(d);
    }
  if (out.size() < 2)
    throw config_error("qp3 needs at least two usable cubes");
  return out;
}

}  // namespace

bool run_analyses(const RunSetup& s, const json& list, JsonWriter& jw,
                  std::ostream& csv) {
  if (!list.is_array())
    throw config_error("\"analyses\" must be an array");
  csv << "analysis,kind,row,level,shift,cx,cy,cz,edge,value,lhs,rhs,aux,pass,"
         "skipped\n";

  bool ok = true;
  jw.key("analyses");
  jw.begin_array();
  int idx = 0;
  for (const json& a : list) {
    const std::string kind = need(a, "kind", "analysis").get<std::string>();
    jw.begin_object();
    jw.kv("kind", kind);

    if (kind == "family_constant") {
      expect_keys(a, kind, {"kind", "functional"});
      const varleb::ScalarKind k =
          scalar_kind(need(a, "functional", kind).get<std::string>());
      const varleb::CubeReport rep = varleb::family_constant(
          k, scalar_weight(s, kind), s.profile, s.fam, s.cst);
      jw.kv("functional", varleb::to_string(k));
      emit_report(jw, csv, idx, rep.kind, rep);
      ok = ok && rep.all_pass;

    } else if (kind == "matrix_family_constant") {
      expect_keys(a, kind, {"kind", "functional"});
      const varleb::MatrixKind k =
          matrix_kind(need(a, "functional", kind).get<std::string>());
      const varleb::CubeReport rep =
          varleb::matrix_family_constant(k, s.wmat, s.profile, s.fam, s.cst);
      jw.kv("functional", varleb::to_string(k));
      emit_report(jw, csv, idx, rep.kind, rep);
      ok = ok && rep.all_pass;

    } else if (kind == "indicator") {
      expect_keys(a, kind, {"kind"});
      varleb::CubeReport rep;
      rep.kind = "indicator";
      for (const varleb::Cube& q : s.fam.cubes) {
        const varleb::IndicatorCheck c =
            varleb::indicator_norm_check(s.profile, q, s.cst);
        varleb::CubeRow row;
        row.cube = q;
        row.value = c.norm_value;
        row.lhs = c.ratio_pq;
        row.rhs = c.ratio_pinfty;
        row.aux = c.p_q;
        row.pass = c.floor_ok;
        rep.rows.push_back(row);
      }
      varleb::summarize_rows(rep);
      emit_report(jw, csv, idx, rep.kind, rep);
      ok = ok && rep.all_pass;

    } else if (kind == "classical_rh") {
      expect_keys(a, kind, {"kind"});
      const varleb::CubeReport rep =
          varleb::classical_rh_verify(scalar_weight(s, kind), s.fam, s.cst);
      emit_report(jw, csv, idx, rep.kind, rep);
      ok = ok && rep.all_pass;

    } else if (kind == "reverse_holder") {
      expect_keys(a, kind, {"kind", "r", "est"});
      const double r = need(a, "r", kind).get<double>();
      double est;
      if (a.contains("est")) {
        est = a.at("est").get<double>();
      } else {
        est = varleb::family_constant(varleb::ScalarKind::apinfty,
                                      scalar_weight(s, kind), s.profile, s.fam,
                                      s.cst)
                  .estimate;
      }
      const varleb::CubeReport rep = varleb::verify_reverse_holder(
          scalar_weight(s, kind), s.profile, r, s.fam, est, s.cst);
      jw.kv("r", r);
      jw.kv("est", est);
      emit_report(jw, csv, idx, rep.kind, rep);
      ok = ok && rep.all_pass;

    } else if (kind == "empirical_rh") {
      expect_keys(a, kind, {"kind", "span", "depth"});
      const double r_max = varleb::max_empirical_rh(
          scalar_weight(s, kind), s.profile, s.fam, s.cst,
          opt_num(a, "span", 1.0), opt_int(a, "depth", 20));
      jw.kv("r_max", r_max);

    } else if (kind == "doubling") {
      expect_keys(a, kind, {"kind", "lambdas"});
      const auto lambdas =
          need(a, "lambdas", kind).get<std::vector<double>>();
      const varleb::CubeReport rep = varleb::doubling_check(
          scalar_weight(s, kind), s.fam, lambdas, s.cst);
      emit_report(jw, csv, idx, rep.kind, rep);
      ok = ok && rep.all_pass;

    } else if (kind == "bmo") {
      expect_keys(a, kind, {"kind"});
      const varleb::CubeReport rep =
          varleb::bmo_seminorm(scalar_weight(s, kind), s.fam, s.cst);
      emit_report(jw, csv, idx, rep.kind, rep);
      ok = ok && rep.all_pass;

    } else if (kind == "cz") {
      expect_keys(a, kind, {"kind", "a"});
      const double aval = need(a, "a", kind).get<double>();
      const varleb::CzReport rep = varleb::cz_stopping_cubes(
          scalar_weight(s, kind), varleb::box_cube(s.lat), aval);
      jw.kv("a", aval);
      jw.kv("root_mean", rep.root_mean);
      jw.kv("levels", rep.levels);
      jw.kv("cubes", long(rep.cubes.size()));
      for (size_t i = 0; i < rep.cubes.size(); ++i) {
        const varleb::StoppingCube& c = rep.cubes[i];
        csv_row(csv, idx, "cz", long(i), c.cube, c.mean, double(c.k),
                c.threshold, 0.0, true, false);
      }

    } else if (kind == "lw") {
      expect_keys(a, kind, {"kind"});
      const varleb::LwReport rep =
          varleb::lw_factor(scalar_weight(s, kind), s.profile, s.cst);
      jw.kv("q0_edge", rep.q0.edge);
      jw.kv("q0_norm", rep.q0_norm);
      jw.kv("value", rep.value);
      csv_row(csv, idx, "lw", 0, rep.q0, rep.value, rep.q0_norm, 0.0, 0.0,
              true, false);

    } else if (kind == "dual") {
      expect_keys(a, kind, {"kind", "h_expr"});
      const std::string src = need(a, "h_expr", kind).get<std::string>();
      const varleb::SampledField h =
          varleb::make_field(s.lat, compile_expr(src));
      const double v = varleb::dual_value(scalar_weight(s, kind), s.profile,
                                          h, varleb::box_cube(s.lat), s.cst);
      jw.kv("h_expr", src);
      jw.kv("value", v);

    } else if (kind == "reducing") {
      expect_keys(a, kind, {"kind", "level", "directions"});
      const int level = need(a, "level", kind).get<int>();
      const int dirs =
          opt_int(a, "directions", varleb::default_directions(s.wmat.m));
      const varleb::CubeFamily cubes =
          varleb::dyadic_family(s.lat, level, level, false);
      jw.kv("level", level);
      jw.kv("directions", dirs);
      jw.key("cubes");
      jw.begin_array();
      for (size_t i = 0; i < cubes.cubes.size(); ++i) {
        const varleb::Cube& q = cubes.cubes[i];
        const varleb::ReducingResult red =
            varleb::reducing_operator(s.wmat, s.profile, q, dirs, s.cst);
        jw.begin_object();
        jw.key("center");
        jw.begin_array();
        for (int k = 0; k < s.lat.dim; ++k) jw.value(q.center[k]);
        jw.end_array();
        jw.kv("edge", q.edge);
        jw.kv("fit_lo", red.fit_lo);
        jw.kv("fit_hi", red.fit_hi);
        jw.kv("iterations", red.iterations);
        jw.key("a");
        jw.begin_array();
        for (int r = 0; r < red.a.rows(); ++r) {
          jw.begin_array();
          for (int c = 0; c < red.a.cols(); ++c) jw.value(red.a(r, c));
          jw.end_array();
        }
        jw.end_array();
        jw.end_object();
        csv_row(csv, idx, "reducing", long(i), q, red.fit_hi, red.fit_lo,
                red.fit_hi, double(red.iterations), true, false);
      }
      jw.end_array();

    } else if (kind == "dims") {
      expect_keys(a, kind, {"kind", "j_from", "j_to", "lambdas"});
      const int j_from = need(a, "j_from", kind).get<int>();
      const int j_to = need(a, "j_to", kind).get<int>();
      const auto lambdas =
          need(a, "lambdas", kind).get<std::vector<double>>();
      const std::vector<varleb::Cube> base =
          varleb::centered_base_cubes(s.lat, j_from, j_to);
      const varleb::DimsEstimate est =
          varleb::estimate_dimensions(s.wmat, s.profile, base, lambdas, s.cst);
      auto emit_fit = [&](const char* name, const varleb::DimFit& fit) {
        jw.key(name);
        jw.begin_object();
        jw.kv("d", fit.d);
        jw.kv("residual", fit.residual);
        jw.kv("power_law_ok", fit.power_law_ok);
        jw.kv("argmax_cube", fit.argmax_cube);
        jw.kv("skipped", fit.skipped);
        jw.end_object();
        const std::string csv_kind = std::string("dims_") + name;
        for (size_t i = 0; i < fit.rows.size(); ++i) {
          const varleb::CubeRow& r = fit.rows[i];
          csv_row(csv, idx, csv_kind, long(i), r.cube, r.value, r.lhs, r.rhs,
                  r.aux, r.pass, r.skipped);
        }
      };
      emit_fit("lower", est.lower);
      emit_fit("upper", est.upper);

    } else if (kind == "qp3") {
      expect_keys(a, kind, {"kind", "j_from", "j_to", "lambdas", "d1", "d2"});
      const int j_from = need(a, "j_from", kind).get<int>();
      const int j_to = need(a, "j_to", kind).get<int>();
      const auto lambdas =
          need(a, "lambdas", kind).get<std::vector<double>>();
      const std::vector<varleb::Cube> base =
          varleb::centered_base_cubes(s.lat, j_from, j_to);
      double d1, d2;
      if (a.contains("d1") && a.contains("d2")) {
        d1 = a.at("d1").get<double>();
        d2 = a.at("d2").get<double>();
      } else if (!a.contains("d1") && !a.contains("d2")) {
        try {
          const varleb::DimsEstimate est = varleb::estimate_dimensions(
              s.wmat, s.profile, base, lambdas, s.cst);
          d1 = est.lower.d + s.cst.d_margin;
          d2 = est.upper.d + s.cst.d_margin;
        } catch (const config_error& e) {
          throw config_error(std::string(e.what()) +
                             " (qp3 without d1/d2 fits them from the "
                             "lambdas; give more lambdas or explicit d1/d2)");
        }
      } else {
        throw config_error("qp3 takes d1 and d2 together or neither");
      }
      const std::vector<varleb::Cube> cubes =
          dilation_set(s.lat, base, lambdas);
      const varleb::CubeReport rep =
          varleb::qp3_bound_check(s.wmat, s.profile, cubes, d1, d2, s.cst);
      jw.kv("d1", d1);
      jw.kv("d2", d2);
      jw.kv("pairs", long(rep.rows.size()));
      emit_report(jw, csv, idx, rep.kind, rep);
      ok = ok && rep.all_pass;

    } else if (kind == "sweep") {
      expect_keys(a, kind, {"kind", "route", "t_first", "t_last",
                            "extra_bits"});
      if (!s.entry)
        throw config_error("sweep needs a catalog weight");
      const varleb::SweepRoute route =
          sweep_route(need(a, "route", kind).get<std::string>());
      const varleb::SweepResult res = varleb::stability_sweep(
          *s.entry, route, need(a, "t_first", kind).get<int>(),
          need(a, "t_last", kind).get<int>(), opt_int(a, "extra_bits", 4),
          s.cst);
      jw.kv("route", varleb::to_string(res.route));
      jw.key("steps");
      jw.begin_array();
      for (const varleb::SweepStep& st : res.steps) {
        jw.begin_object();
        jw.kv("t", st.t);
        jw.kv("points_per_axis", st.points_per_axis);
        jw.kv("estimate", st.estimate);
        jw.end_object();
      }
      jw.end_array();
      jw.kv("growth", res.growth);
      jw.kv("divergent", res.divergent);
      jw.kv("stable", res.stable);

    } else if (kind == "verify_flags") {
      expect_keys(a, kind, {"kind", "t_first", "t_last", "extra_bits"});
      if (!s.entry)
        throw config_error("verify_flags needs a catalog weight");
      const varleb::FlagCheck check = varleb::verify_flags(
          *s.entry, need(a, "t_first", kind).get<int>(),
          need(a, "t_last", kind).get<int>(), opt_int(a, "extra_bits", 4),
          s.cst);
      jw.kv("consistent", check.consistent);
      jw.kv("detail", check.detail);
      ok = ok && check.consistent;

    } else {
      throw config_error("unknown analysis kind \"" + kind + "\"");
    }

    jw.end_object();
    ++idx;
  }
  jw.end_array();
  return ok;
}

}  // namespace varleb_cli
