#include "varleb/dims.hpp"

#include <algorithm>
#include <cmath>

#include "varleb/parallel.hpp"

namespace varleb {

double dim_lower_value(const MatrixField& w, const ExponentProfile& prof,
                       const Cube& q, double lambda, const Constants& cst) {
  return matrix_mixed_cube_value(w, prof, q, dilate(q, lambda), cst).value;
}

double dim_upper_value(const MatrixField& w, const ExponentProfile& prof,
                       const Cube& q, double lambda, const Constants& cst) {
  return matrix_mixed_cube_value(w, prof, dilate(q, lambda), q, cst).value;
}

namespace {

DimFit fit_dimension(const MatrixField& w, const ExponentProfile& prof,
                     const std::vector<Cube>& base_cubes,
                     const std::vector<double>& lambdas, bool lower,
                     const Constants& cst) {
  if (base_cubes.empty()) throw config_error("dimension fit needs base cubes");
  DimFit fit;
  const size_t nl = lambdas.size();
  fit.rows.resize(base_cubes.size() * nl);

  parallel_rows(long(fit.rows.size()), cst.threads, [&](long idx) {
    CubeRow& row = fit.rows[size_t(idx)];
    const Cube& q = base_cubes[size_t(idx) / nl];
    const double lam = lambdas[size_t(idx) % nl];
    row.cube = q;
    row.aux = lam;
    if (!(lam >= 1.0) || !cube_aligned(w.lat, dilate(q, lam))) {
      row.skipped = true;
      return;
    }
    row.value = lower ? dim_lower_value(w, prof, q, lam, cst)
                      : dim_upper_value(w, prof, q, lam, cst);
  });

  bool any = false;
  for (size_t c = 0; c < base_cubes.size(); ++c) {
    std::vector<double> lx, ly;
    for (size_t l = 0; l < nl; ++l) {
      const CubeRow& row = fit.rows[c * nl + l];
      if (row.skipped) {
        ++fit.skipped;
        continue;
      }
      lx.push_back(std::log(row.aux));
      ly.push_back(std::log(row.value));
    }
    if (lx.size() < 4) continue;  // not enough dilations for a slope
    double mx = 0, my = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= double(lx.size());
    my /= double(lx.size());
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
      sxx += (lx[i] - mx) * (lx[i] - mx);
      sxy += (lx[i] - mx) * (ly[i] - my);
    }
    const double slope = sxy / sxx;
    const double icept = my - slope * mx;
    double resid = 0;
    for (size_t i = 0; i < lx.size(); ++i)
      resid = std::max(resid, std::abs(ly[i] - (icept + slope * lx[i])));
    const double d = std::max(0.0, slope);
    if (!any || d > fit.d) {
      fit.d = d;
      fit.residual = resid;
      fit.argmax_cube = long(c);
    }
    any = true;
  }
  if (!any)
    throw config_error("no base cube admits enough dilations for a slope");
  fit.power_law_ok = fit.residual <= 0.1;
  return fit;
}

}  // namespace

DimFit lower_dim_estimate(const MatrixField& w, const ExponentProfile& prof,
                          const std::vector<Cube>& base_cubes,
                          const std::vector<double>& lambdas,
                          const Constants& cst) {
  return fit_dimension(w, prof, base_cubes, lambdas, true, cst);
}

DimFit upper_dim_estimate(const MatrixField& w, const ExponentProfile& prof,
                          const std::vector<Cube>& base_cubes,
                          const std::vector<double>& lambdas,
                          const Constants& cst) {
  return fit_dimension(w, prof, base_cubes, lambdas, false, cst);
}

DimsEstimate estimate_dimensions(const MatrixField& w,
                                 const ExponentProfile& prof,
                                 const std::vector<Cube>& base_cubes,
                                 const std::vector<double>& lambdas,
                                 const Constants& cst) {
  DimsEstimate est;
  est.lower = lower_dim_estimate(w, prof, base_cubes, lambdas, cst);
  est.upper = upper_dim_estimate(w, prof, base_cubes, lambdas, cst);
  return est;
}

std::vector<Cube> centered_base_cubes(const Lattice& lat, int j_from,
                                      int j_to) {
  if (j_from < 0 || j_to < j_from)
    throw config_error("base cube levels need 0 <= j_from <= j_to");
  std::vector<Cube> out;
  for (int j = j_from; j <= j_to; ++j) {
    Cube q;
    q.dim = lat.dim;
    q.center = {0.0, 0.0, 0.0};
    q.edge = 2.0 * lat.halfwidth / std::ldexp(1.0, j);
    q.level = j;
    if (!cube_aligned(lat, q))
      throw config_error("centered base cube leaves the cell grid");
    out.push_back(q);
  }
  return out;
}

CubeReport qp3_bound_check(const MatrixField& w, const ExponentProfile& prof,
                           const std::vector<Cube>& cubes, double d1,
                           double d2, const Constants& cst) {
  const size_t n = cubes.size();
  if (n == 0) throw config_error("pair bound check needs cubes");
  std::vector<Eigen::MatrixXd> ops(n);
  parallel_rows(long(n), cst.threads, [&](long i) {
    ops[size_t(i)] =
        reducing_operator(w, prof, cubes[size_t(i)],
                          default_directions(w.m), cst)
            .a;
  });

  CubeReport rep;
  rep.kind = "qp3";
  rep.rows.resize(n * n);
  parallel_rows(long(n * n), cst.threads, [&](long idx) {
    CubeRow& row = rep.rows[size_t(idx)];
    const size_t i = size_t(idx) / n, j = size_t(idx) % n;
    const Cube& qa = cubes[i];
    const Cube& qb = cubes[j];
    row.cube = qa;
    row.aux = double(j);
    row.lhs = op_norm(ops[i] * spd_inverse(ops[j]));
    double dist2 = 0.0;
    for (int k = 0; k < qa.dim; ++k) {
      const double d = qa.center[k] - qb.center[k];
      dist2 += d * d;
    }
    const double lmax = std::max(qa.edge, qb.edge);
    const double scale = std::max(std::pow(qb.edge / qa.edge, d1),
                                  std::pow(qa.edge / qb.edge, d2));
    const double reach = std::pow(1.0 + std::sqrt(dist2) / lmax, d1 + d2);
    row.rhs = cst.c_mult * scale * reach;
    row.value = row.lhs / (scale * reach);
    row.pass = row.lhs <= row.rhs * (1.0 + 1e-12);
  });
  summarize_rows(rep);
  rep.smallest_c = rep.estimate;
  return rep;
}

}  // namespace varleb
