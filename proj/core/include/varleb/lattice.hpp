#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "varleb/errors.hpp"

namespace varleb {

// Midpoint grid on [-halfwidth, halfwidth]^dim. points_per_axis is a power
// of two >= 4; point i on an axis sits at -halfwidth + (i + 1/2) * spacing.
struct Lattice {
  int dim = 1;
  double halfwidth = 1.0;
  long points_per_axis = 0;

  double spacing() const { return 2.0 * halfwidth / double(points_per_axis); }
  long num_points() const {
    long n = 1;
    for (int k = 0; k < dim; ++k) n *= points_per_axis;
    return n;
  }
  double coord(long i) const {
    return -halfwidth + (double(i) + 0.5) * spacing();
  }
  // axis 0 is the slowest-varying index
  long linear_index(const std::array<long, 3>& idx) const {
    long lin = 0;
    for (int k = 0; k < dim; ++k) lin = lin * points_per_axis + idx[k];
    return lin;
  }
  std::array<double, 3> point(long linear) const {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int k = dim - 1; k >= 0; --k) {
      x[k] = coord(linear % points_per_axis);
      linear /= points_per_axis;
    }
    return x;
  }
};

Lattice build_lattice(int dim, double halfwidth, long points_per_axis);

// Axis-aligned cube. level/shift_mask are bookkeeping set by dyadic_family
// (-1 / 0 for cubes built by hand).
struct Cube {
  int dim = 1;
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double edge = 0.0;
  int level = -1;
  int shift_mask = 0;

  double lower(int axis) const { return center[axis] - 0.5 * edge; }
  double upper(int axis) const { return center[axis] + 0.5 * edge; }
  double volume() const {
    double v = 1.0;
    for (int k = 0; k < dim; ++k) v *= edge;
    return v;
  }
};

Cube dilate(const Cube& q, double lambda);

// the whole box as a cube
inline Cube box_cube(const Lattice& lat) {
  Cube q;
  q.dim = lat.dim;
  q.center = {0.0, 0.0, 0.0};
  q.edge = 2.0 * lat.halfwidth;
  q.level = 0;
  return q;
}

// Per-axis half-open index window [lo, hi) of the lattice points inside a
// cube whose faces lie on cell boundaries.
struct AxisRange {
  std::array<long, 3> lo{0, 0, 0};
  std::array<long, 3> hi{0, 0, 0};
  long count(int dim) const {
    long c = 1;
    for (int k = 0; k < dim; ++k) c *= hi[k] - lo[k];
    return c;
  }
};

bool cube_aligned(const Lattice& lat, const Cube& q);
AxisRange cube_range(const Lattice& lat, const Cube& q);  // throws if not aligned
long cube_point_count(const Lattice& lat, const Cube& q);

template <class F>
void for_cube_points(const Lattice& lat, const Cube& q, F&& body) {
  const AxisRange r = cube_range(lat, q);
  const long n = lat.points_per_axis;
  if (lat.dim == 1) {
    for (long i = r.lo[0]; i < r.hi[0]; ++i) body(i);
  } else if (lat.dim == 2) {
    for (long i = r.lo[0]; i < r.hi[0]; ++i)
      for (long j = r.lo[1]; j < r.hi[1]; ++j) body(i * n + j);
  } else {
    for (long i = r.lo[0]; i < r.hi[0]; ++i)
      for (long j = r.lo[1]; j < r.hi[1]; ++j)
        for (long k = r.lo[2]; k < r.hi[2]; ++k) body((i * n + j) * n + k);
  }
}

std::vector<long> collect_cube_points(const Lattice& lat, const Cube& q);

// Scalar samples on a lattice, point-major.
struct SampledField {
  Lattice lat;
  std::vector<double> v;

  double operator[](long i) const { return v[size_t(i)]; }
  double& operator[](long i) { return v[size_t(i)]; }
};

SampledField make_field(const Lattice& lat,
                        const std::function<double(std::array<double, 3>)>& f);

template <class F>
double mean_over_cube(const Lattice& lat, const Cube& q, F&& f) {
  double s = 0.0;
  long c = 0;
  for_cube_points(lat, q, [&](long i) {
    s += f(i);
    ++c;
  });
  return s / double(c);
}

// exp of the mean of logs; errors out on samples at or below eps_pos
template <class F>
double geomean_over_cube(const Lattice& lat, const Cube& q, F&& f,
                         double eps_pos) {
  double s = 0.0;
  long c = 0;
  for_cube_points(lat, q, [&](long i) {
    const double y = f(i);
    if (!(y > eps_pos))
      throw numeric_error("geometric mean over a non-positive sample");
    s += std::log(y);
    ++c;
  });
  return std::exp(s / double(c));
}

double cube_mean(const SampledField& f, const Cube& q);
double cube_geomean(const SampledField& f, const Cube& q,
                    double eps_pos = 1e-300);
// quadrature sum over the cube: sum of samples times cell volume
double cube_sum(const SampledField& f, const Cube& q);

// Dyadic cubes of the box, levels j_min..j_max, optionally including the
// half-edge translates on every nonempty axis subset. Translates that leave
// the box or whose shift is not a whole number of cells are skipped.
struct CubeFamily {
  Lattice lat;
  std::vector<Cube> cubes;
  int j_min = 0;
  int j_max = 0;
  bool translates = false;
  long skipped = 0;
};

CubeFamily dyadic_family(const Lattice& lat, int j_min, int j_max,
                         bool translates);

}  // namespace varleb
