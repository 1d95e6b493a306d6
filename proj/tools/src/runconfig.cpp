#include "runconfig.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "expr.hpp"
#include "varleb/errors.hpp"

namespace varleb_cli {

using nlohmann::json;
using varleb::config_error;

void expect_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> allowed) {
  if (!obj.is_object())
    throw config_error(where + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok)
      throw config_error("unknown key \"" + it.key() + "\" in " + where);
  }
}

const json& need(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw config_error(where + " needs a \"" + std::string(key) + "\" key");
  return obj.at(key);
}

namespace {

using Pt = std::array<double, 3>;

// exponent block -> sampled field + optional declared limit
std::pair<varleb::SampledField, std::optional<double>> build_exponent(
    const json& e, const varleb::Lattice& lat) {
  expect_keys(e, "exponent", {"kind", "value", "expr", "points", "p_infty"});
  const std::string kind = need(e, "kind", "exponent").get<std::string>();
  std::optional<double> p_infty;
  if (e.contains("p_infty")) p_infty = e.at("p_infty").get<double>();

  if (kind == "constant") {
    const double v = need(e, "value", "exponent").get<double>();
    if (!p_infty) p_infty = v;
    return {varleb::make_field(lat, [v](Pt) { return v; }), p_infty};
  }
  if (kind == "expr") {
    auto f = compile_expr(need(e, "expr", "exponent").get<std::string>());
    return {varleb::make_field(lat, f), p_infty};
  }
  if (kind == "piecewise_linear") {
    if (lat.dim != 1)
      throw config_error("piecewise_linear exponents need a 1-d domain");
    auto pts = need(e, "points", "exponent")
                   .get<std::vector<std::array<double, 2>>>();
    if (pts.size() < 2)
      throw config_error("piecewise_linear needs at least two points");
    for (size_t k = 1; k < pts.size(); ++k)
      if (!(pts[k][0] > pts[k - 1][0]))
        throw config_error(
            "piecewise_linear points must be strictly increasing in x");
    auto f = [pts](Pt x) {
      const double t = x[0];
      if (t <= pts.front()[0]) return pts.front()[1];
      if (t >= pts.back()[0]) return pts.back()[1];
      size_t k = 1;
      while (pts[k][0] < t) ++k;
      const double u = (t - pts[k - 1][0]) / (pts[k][0] - pts[k - 1][0]);
      return (1.0 - u) * pts[k - 1][1] + u * pts[k][1];
    };
    return {varleb::make_field(lat, f), p_infty};
  }
  throw config_error("unknown exponent kind \"" + kind + "\"");
}

// scalar weight from constant/expr; positivity checked point by point
varleb::SampledField build_scalar_weight(const json& w,
                                         const varleb::Lattice& lat,
                                         std::string& label) {
  const std::string kind = need(w, "kind", "weight").get<std::string>();
  varleb::SampledField field;
  if (kind == "constant") {
    expect_keys(w, "weight", {"kind", "value"});
    const double v = need(w, "value", "weight").get<double>();
    field = varleb::make_field(lat, [v](Pt) { return v; });
    label = "constant";
  } else if (kind == "expr") {
    expect_keys(w, "weight", {"kind", "expr"});
    const std::string src = need(w, "expr", "weight").get<std::string>();
    field = varleb::make_field(lat, compile_expr(src));
    label = "expr " + src;
  } else {
    throw config_error("unknown weight kind \"" + kind + "\"");
  }
  for (long i = 0; i < long(field.v.size()); ++i)
    if (!(field.v[i] > 0.0) || !std::isfinite(field.v[i]))
      throw config_error("weight must be positive and finite; point " +
                         std::to_string(i) + " samples to " +
                         std::to_string(field.v[i]));
  return field;
}

varleb::MatrixField build_matrix_weight(const json& m,
                                        const varleb::Lattice& lat,
                                        const varleb::Constants& cst,
                                        std::string& label) {
  const std::string kind = need(m, "kind", "matrix").get<std::string>();

  if (kind == "constant") {
    expect_keys(m, "matrix", {"kind", "entries"});
    auto rows = need(m, "entries", "matrix")
                    .get<std::vector<std::vector<double>>>();
    const int mm = int(rows.size());
    if (mm < 1) throw config_error("matrix entries must be non-empty");
    Eigen::MatrixXd a(mm, mm);
    for (int r = 0; r < mm; ++r) {
      if (int(rows[r].size()) != mm)
        throw config_error("matrix entries must be square");
      for (int c = 0; c < mm; ++c) a(r, c) = rows[r][c];
    }
    label = "constant matrix";
    return varleb::make_matrix_field(lat, mm, [a](Pt) { return a; }, cst);
  }

  if (kind == "diag") {
    expect_keys(m, "matrix", {"kind", "exprs"});
    auto srcs =
        need(m, "exprs", "matrix").get<std::vector<std::string>>();
    if (srcs.empty()) throw config_error("diag needs at least one expr");
    std::vector<std::function<double(Pt)>> fns;
    for (const std::string& s : srcs) fns.push_back(compile_expr(s));
    const int mm = int(fns.size());
    label = "diag";
    return varleb::make_matrix_field(
        lat, mm,
        [fns, mm](Pt x) {
          Eigen::MatrixXd a = Eigen::MatrixXd::Zero(mm, mm);
          for (int k = 0; k < mm; ++k) a(k, k) = fns[size_t(k)](x);
          return a;
        },
        cst);
  }

  if (kind == "rotated_diag") {
    expect_keys(m, "matrix", {"kind", "exprs", "rotation_angle"});
    auto srcs =
        need(m, "exprs", "matrix").get<std::vector<std::string>>();
    if (srcs.size() != 2)
      throw config_error("rotated_diag needs exactly two exprs");
    const json& ang = need(m, "rotation_angle", "matrix");
    std::function<double(Pt)> theta;
    if (ang.is_number()) {
      const double v = ang.get<double>();
      theta = [v](Pt) { return v; };
    } else if (ang.is_string()) {
      theta = compile_expr(ang.get<std::string>());
    } else {
      throw config_error("rotation_angle must be a number or an expression");
    }
    auto d0 = compile_expr(srcs[0]);
    auto d1 = compile_expr(srcs[1]);
    label = "rotated_diag";
    return varleb::make_matrix_field(
        lat, 2,
        [d0, d1, theta](Pt x) {
          const double t = theta(x);
          const double c = std::cos(t), s = std::sin(t);
          Eigen::Matrix2d rot;
          rot << c, -s, s, c;
          Eigen::Matrix2d diag = Eigen::Matrix2d::Zero();
          diag(0, 0) = d0(x);
          diag(1, 1) = d1(x);
          return Eigen::MatrixXd(rot * diag * rot.transpose());
        },
        cst);
  }

  throw config_error("unknown matrix kind \"" + kind + "\"");
}

varleb::Constants parse_constants(const json& c, varleb::Constants cst) {
  expect_keys(c, "constants",
              {"c1", "c2", "a1", "a_exp", "c_mult", "c_h",
               "dagger_exponent_sign", "tol_lambda", "max_bisect", "eps_pos",
               "lambda_floor", "slack_fit", "tol_slope", "d_margin",
               "divergence_factor", "stability_factor", "max_inner_samples",
               "threads"});
  auto num = [&](const char* k, double& out) {
    if (c.contains(k)) out = c.at(k).get<double>();
  };
  num("c1", cst.c1);
  num("c2", cst.c2);
  num("a1", cst.a1);
  num("a_exp", cst.a_exp);
  num("c_mult", cst.c_mult);
  num("c_h", cst.c_h);
  num("tol_lambda", cst.tol_lambda);
  num("eps_pos", cst.eps_pos);
  num("lambda_floor", cst.lambda_floor);
  num("slack_fit", cst.slack_fit);
  num("tol_slope", cst.tol_slope);
  num("d_margin", cst.d_margin);
  num("divergence_factor", cst.divergence_factor);
  num("stability_factor", cst.stability_factor);
  if (c.contains("dagger_exponent_sign")) {
    cst.dagger_exponent_sign = c.at("dagger_exponent_sign").get<int>();
    if (cst.dagger_exponent_sign != 1 && cst.dagger_exponent_sign != -1)
      throw config_error("dagger_exponent_sign must be +1 or -1");
  }
  if (c.contains("max_bisect")) cst.max_bisect = c.at("max_bisect").get<int>();
  if (c.contains("max_inner_samples"))
    cst.max_inner_samples = c.at("max_inner_samples").get<long>();
  if (c.contains("threads")) cst.threads = c.at("threads").get<int>();
  return cst;
}

}  // namespace

RunSetup build_run(const json& cfg, const varleb::Constants& base) {
  expect_keys(cfg, "config",
              {"domain", "exponent", "weight", "matrix", "cubes", "analyses",
               "constants", "output"});

  RunSetup s;
  s.cst = cfg.contains("constants") ? parse_constants(cfg.at("constants"), base)
                                    : base;

  const json& dom = need(cfg, "domain", "config");
  expect_keys(dom, "domain", {"dim", "halfwidth", "points_per_axis"});
  s.lat = varleb::build_lattice(
      need(dom, "dim", "domain").get<int>(),
      need(dom, "halfwidth", "domain").get<double>(),
      need(dom, "points_per_axis", "domain").get<long>());

  if (cfg.contains("weight") && cfg.contains("matrix"))
    throw config_error("give either \"weight\" or \"matrix\", not both");
  if (!cfg.contains("weight") && !cfg.contains("matrix"))
    throw config_error("config needs a \"weight\" or \"matrix\" block");

  const bool catalog_weight =
      cfg.contains("weight") &&
      need(cfg.at("weight"), "kind", "weight").get<std::string>() == "catalog";

  if (catalog_weight) {
    const json& w = cfg.at("weight");
    expect_keys(w, "weight", {"kind", "name"});
    if (cfg.contains("exponent"))
      throw config_error("catalog weights carry their own exponent");
    const std::string name = need(w, "name", "weight").get<std::string>();
    s.entry = &varleb::catalog_entry(name);
    varleb::Instantiated inst = varleb::instantiate(*s.entry, s.lat, s.cst);
    s.is_matrix = inst.is_matrix;
    s.profile = std::move(inst.profile);
    s.w = std::move(inst.w);
    s.wmat = std::move(inst.wmat);
    s.weight_label = "catalog " + name;
  } else {
    auto [p_field, p_infty] = build_exponent(need(cfg, "exponent", "config"),
                                             s.lat);
    s.profile = varleb::summarize_exponent(p_field, p_infty);
    if (cfg.contains("matrix")) {
      s.is_matrix = true;
      s.wmat = build_matrix_weight(cfg.at("matrix"), s.lat, s.cst,
                                   s.weight_label);
    } else {
      s.w = build_scalar_weight(cfg.at("weight"), s.lat, s.weight_label);
    }
  }

  if (!s.is_matrix) s.wmat = varleb::matrix_from_scalar(s.w);

  const json& cubes = need(cfg, "cubes", "config");
  expect_keys(cubes, "cubes", {"j_min", "j_max", "translates"});
  const int j_min =
      cubes.contains("j_min") ? cubes.at("j_min").get<int>() : 0;
  const int j_max = need(cubes, "j_max", "cubes").get<int>();
  const bool translates =
      cubes.contains("translates") && cubes.at("translates").get<bool>();
  s.fam = varleb::dyadic_family(s.lat, j_min, j_max, translates);

  if (cfg.contains("output")) {
    const json& out = cfg.at("output");
    expect_keys(out, "output", {"report", "cubes_csv"});
    if (out.contains("report"))
      s.report_name = out.at("report").get<std::string>();
    if (out.contains("cubes_csv"))
      s.csv_name = out.at("cubes_csv").get<std::string>();
  }
  return s;
}

}  // namespace varleb_cli
