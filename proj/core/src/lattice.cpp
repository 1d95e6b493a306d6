#include "varleb/lattice.hpp"

#include <cmath>
#include <string>

namespace varleb {

namespace {

bool is_pow2(long n) { return n >= 1 && (n & (n - 1)) == 0; }

// snap u to an integer if it is within a relative hair of one
bool near_integer(double u, long& out) {
  const double r = std::round(u);
  if (std::abs(u - r) > 1e-7 * (1.0 + std::abs(u))) return false;
  out = long(r);
  return true;
}

}  // namespace

Lattice build_lattice(int dim, double halfwidth, long points_per_axis) {
  if (dim < 1 || dim > 3)
    throw config_error("lattice dim must be 1, 2 or 3, got " +
                       std::to_string(dim));
  if (!(halfwidth > 0.0))
    throw config_error("lattice halfwidth must be positive");
  if (points_per_axis < 4 || !is_pow2(points_per_axis))
    throw config_error("points_per_axis must be a power of two >= 4, got " +
                       std::to_string(points_per_axis));
  return Lattice{dim, halfwidth, points_per_axis};
}

Cube dilate(const Cube& q, double lambda) {
  Cube d = q;
  d.edge = q.edge * lambda;
  d.level = -1;
  d.shift_mask = 0;
  return d;
}

bool cube_aligned(const Lattice& lat, const Cube& q) {
  if (q.dim != lat.dim) return false;
  if (!(q.edge > 0.0)) return false;
  const double h = lat.spacing();
  for (int k = 0; k < lat.dim; ++k) {
    long lo = 0, hi = 0;
    if (!near_integer((q.lower(k) + lat.halfwidth) / h, lo)) return false;
    if (!near_integer((q.upper(k) + lat.halfwidth) / h, hi)) return false;
    if (lo < 0 || hi > lat.points_per_axis || lo >= hi) return false;
  }
  return true;
}

AxisRange cube_range(const Lattice& lat, const Cube& q) {
  if (q.dim != lat.dim)
    throw config_error("cube dimension does not match the lattice");
  const double h = lat.spacing();
  AxisRange r;
  for (int k = 0; k < lat.dim; ++k) {
    long lo = 0, hi = 0;
    if (!near_integer((q.lower(k) + lat.halfwidth) / h, lo) ||
        !near_integer((q.upper(k) + lat.halfwidth) / h, hi))
      throw config_error("cube faces do not lie on lattice cell boundaries");
    if (lo < 0 || hi > lat.points_per_axis || lo >= hi)
      throw config_error("cube is not contained in the lattice box");
    r.lo[k] = lo;
    r.hi[k] = hi;
  }
  return r;
}

long cube_point_count(const Lattice& lat, const Cube& q) {
  return cube_range(lat, q).count(lat.dim);
}

std::vector<long> collect_cube_points(const Lattice& lat, const Cube& q) {
  std::vector<long> pts;
  pts.reserve(size_t(cube_point_count(lat, q)));
  for_cube_points(lat, q, [&](long i) { pts.push_back(i); });
  return pts;
}

SampledField make_field(
    const Lattice& lat, const std::function<double(std::array<double, 3>)>& f) {
  SampledField out;
  out.lat = lat;
  out.v.resize(size_t(lat.num_points()));
  for (long i = 0; i < lat.num_points(); ++i) out.v[size_t(i)] = f(lat.point(i));
  return out;
}

double cube_mean(const SampledField& f, const Cube& q) {
  return mean_over_cube(f.lat, q, [&](long i) { return f[i]; });
}

double cube_geomean(const SampledField& f, const Cube& q, double eps_pos) {
  return geomean_over_cube(f.lat, q, [&](long i) { return f[i]; }, eps_pos);
}

double cube_sum(const SampledField& f, const Cube& q) {
  double s = 0.0;
  for_cube_points(f.lat, q, [&](long i) { s += f[i]; });
  double cell = 1.0;
  for (int k = 0; k < f.lat.dim; ++k) cell *= f.lat.spacing();
  return s * cell;
}

CubeFamily dyadic_family(const Lattice& lat, int j_min, int j_max,
                         bool translates) {
  if (j_min < 0 || j_max < j_min)
    throw config_error("dyadic levels need 0 <= j_min <= j_max");
  if ((1L << j_max) > lat.points_per_axis)
    throw config_error("dyadic level " + std::to_string(j_max) +
                       " is finer than the lattice");
  CubeFamily fam;
  fam.lat = lat;
  fam.j_min = j_min;
  fam.j_max = j_max;
  fam.translates = translates;

  for (int j = j_min; j <= j_max; ++j) {
    const long side = 1L << j;
    const double edge = 2.0 * lat.halfwidth / double(side);
    const int masks = translates ? (1 << lat.dim) : 1;
    const bool shift_ok = (2L << j) <= lat.points_per_axis;  // half a cube
                                                             // is whole cells
    for (int mask = 0; mask < masks; ++mask) {
      if (mask != 0 && !shift_ok) {
        long total = 1;
        for (int k = 0; k < lat.dim; ++k) total *= side;
        fam.skipped += total;
        continue;
      }
      std::array<long, 3> g{0, 0, 0};
      while (true) {
        Cube q;
        q.dim = lat.dim;
        q.edge = edge;
        q.level = j;
        q.shift_mask = mask;
        bool inside = true;
        for (int k = 0; k < lat.dim; ++k) {
          double c = -lat.halfwidth + (double(g[k]) + 0.5) * edge;
          if (mask & (1 << k)) {
            c += 0.5 * edge;
            if (g[k] + 1 >= side) inside = false;  // would poke out of the box
          }
          q.center[k] = c;
        }
        if (inside)
          fam.cubes.push_back(q);
        else
          ++fam.skipped;
        int k = lat.dim - 1;
        while (k >= 0 && ++g[k] == side) g[k--] = 0;
        if (k < 0) break;
      }
    }
  }
  return fam;
}

}  // namespace varleb
