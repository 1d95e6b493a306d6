#include "varleb/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace varleb {

namespace {

// largest |p(x)-p(y)| * log(e + 1/|x-y|) over axis-aligned pairs at
// power-of-two strides below distance 1/2
double local_constant(const SampledField& p) {
  const Lattice& lat = p.lat;
  const double h = lat.spacing();
  const long n = lat.points_per_axis;
  double c0 = 0.0;
  for (int axis = 0; axis < lat.dim; ++axis) {
    long step = 1;
    for (int k = lat.dim - 1; k > axis; --k) step *= n;
    for (long s = 1; s < n && double(s) * h < 0.5; s *= 2) {
      const double factor = std::log(std::exp(1.0) + 1.0 / (double(s) * h));
      const long offset = s * step;
      // iterate all points whose axis index leaves room for the partner
      std::array<long, 3> g{0, 0, 0};
      while (true) {
        if (g[axis] + s < n) {
          const long i = lat.linear_index(g);
          const double d = std::abs(p[i] - p[i + offset]);
          c0 = std::max(c0, d * factor);
        }
        int k = lat.dim - 1;
        while (k >= 0 && ++g[k] == n) g[k--] = 0;
        if (k < 0) break;
      }
    }
  }
  return c0;
}

double decay_constant(const SampledField& p, double p_infty) {
  const Lattice& lat = p.lat;
  double ci = 0.0;
  for (long i = 0; i < lat.num_points(); ++i) {
    const auto x = lat.point(i);
    double r2 = 0.0;
    for (int k = 0; k < lat.dim; ++k) r2 += x[k] * x[k];
    const double factor = std::log(std::exp(1.0) + std::sqrt(r2));
    ci = std::max(ci, std::abs(p[i] - p_infty) * factor);
  }
  return ci;
}

}  // namespace

ExponentProfile summarize_exponent(const SampledField& p,
                                   std::optional<double> declared_p_infty) {
  const Lattice& lat = p.lat;
  ExponentProfile prof;
  prof.p = p;
  double lo = p[0], hi = p[0];
  for (long i = 0; i < lat.num_points(); ++i) {
    if (!(p[i] > 0.0) || !std::isfinite(p[i]))
      throw config_error("exponent must be positive and finite everywhere");
    lo = std::min(lo, p[i]);
    hi = std::max(hi, p[i]);
  }
  prof.p_minus = lo;
  prof.p_plus = hi;

  if (declared_p_infty) {
    if (!(*declared_p_infty > 0.0))
      throw config_error("declared limit exponent must be positive");
    prof.p_infty = *declared_p_infty;
    prof.p_infty_estimated = false;
  } else {
    // mean over the outermost shell of grid points
    double s = 0.0;
    long c = 0;
    const long n = lat.points_per_axis;
    for (long i = 0; i < lat.num_points(); ++i) {
      long rest = i;
      bool shell = false;
      for (int k = lat.dim - 1; k >= 0; --k) {
        const long gk = rest % n;
        rest /= n;
        if (gk == 0 || gk == n - 1) shell = true;
      }
      if (shell) {
        s += p[i];
        ++c;
      }
    }
    prof.p_infty = s / double(c);
    prof.p_infty_estimated = true;
  }

  prof.c0 = local_constant(p);
  prof.c_infty = decay_constant(p, prof.p_infty);
  return prof;
}

ExponentProfile conjugate_exponent(const ExponentProfile& prof) {
  if (!(prof.p_minus > 1.0))
    throw config_error("conjugate exponent needs p_minus > 1, got " +
                       std::to_string(prof.p_minus));
  SampledField q;
  q.lat = prof.p.lat;
  q.v.resize(prof.p.v.size());
  for (size_t i = 0; i < q.v.size(); ++i)
    q.v[i] = prof.p.v[i] / (prof.p.v[i] - 1.0);
  const double qi = prof.p_infty / (prof.p_infty - 1.0);
  ExponentProfile out = summarize_exponent(q, qi);
  out.p_infty_estimated = prof.p_infty_estimated;
  return out;
}

ExponentProfile scale_exponent(const ExponentProfile& prof, double r) {
  if (!(r > 0.0)) throw config_error("exponent scale factor must be positive");
  ExponentProfile out = prof;
  for (auto& x : out.p.v) x *= r;
  out.p_minus *= r;
  out.p_plus *= r;
  out.p_infty *= r;
  // both regularity bounds are 1-homogeneous in p
  out.c0 *= r;
  out.c_infty *= r;
  return out;
}

double harmonic_mean_exponent(const ExponentProfile& prof, const Cube& q) {
  const double m =
      mean_over_cube(prof.p.lat, q, [&](long i) { return 1.0 / prof.p[i]; });
  return 1.0 / m;
}

std::pair<double, double> exponent_range(const ExponentProfile& prof,
                                         const Cube& q) {
  double lo = prof.p_plus, hi = prof.p_minus;
  for_cube_points(prof.p.lat, q, [&](long i) {
    lo = std::min(lo, prof.p[i]);
    hi = std::max(hi, prof.p[i]);
  });
  return {lo, hi};
}

LhReport lh_check(const ExponentProfile& prof, double c0_cap,
                  double c_infty_cap) {
  LhReport rep;
  rep.c0 = prof.c0;
  rep.c_infty = prof.c_infty;
  rep.c0_cap = c0_cap;
  rep.c_infty_cap = c_infty_cap;
  rep.within_caps = prof.c0 <= c0_cap && prof.c_infty <= c_infty_cap;
  return rep;
}

}  // namespace varleb
