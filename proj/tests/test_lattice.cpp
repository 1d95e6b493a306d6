#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "varleb/lattice.hpp"

using namespace varleb;

TEST_CASE("grid geometry") {
  const Lattice lat = build_lattice(1, 1.0, 4);
  CHECK(lat.spacing() == doctest::Approx(0.5));
  CHECK(lat.num_points() == 4);
  CHECK(lat.coord(0) == doctest::Approx(-0.75));
  CHECK(lat.coord(3) == doctest::Approx(0.75));

  const Lattice lat3 = build_lattice(3, 1.5, 8);
  CHECK(lat3.num_points() == 512);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(build_lattice(0, 1.0, 8), config_error);
  CHECK_THROWS_AS(build_lattice(4, 1.0, 8), config_error);
  CHECK_THROWS_AS(build_lattice(1, 0.0, 8), config_error);
  CHECK_THROWS_AS(build_lattice(1, -2.0, 8), config_error);
  CHECK_THROWS_AS(build_lattice(1, 1.0, 6), config_error);
  CHECK_THROWS_AS(build_lattice(1, 1.0, 2), config_error);
}

TEST_CASE("index round trip") {
  const Lattice lat = build_lattice(3, 1.5, 8);
  for (long a : {0L, 3L, 7L})
    for (long b : {0L, 4L, 7L})
      for (long c : {1L, 6L}) {
        const long lin = lat.linear_index({a, b, c});
        const auto x = lat.point(lin);
        CHECK(x[0] == doctest::Approx(lat.coord(a)));
        CHECK(x[1] == doctest::Approx(lat.coord(b)));
        CHECK(x[2] == doctest::Approx(lat.coord(c)));
      }
}

TEST_CASE("cube alignment and ranges") {
  const Lattice lat = build_lattice(1, 1.0, 8);
  Cube q;
  q.dim = 1;
  q.center = {0.5, 0.0, 0.0};
  q.edge = 1.0;
  CHECK(cube_aligned(lat, q));
  const AxisRange r = cube_range(lat, q);
  CHECK(r.lo[0] == 4);
  CHECK(r.hi[0] == 8);
  CHECK(cube_point_count(lat, q) == 4);

  Cube bad = q;
  bad.center[0] = 0.4;  // off the cell grid
  CHECK(!cube_aligned(lat, bad));
  CHECK_THROWS_AS(cube_range(lat, bad), config_error);

  Cube outside = q;
  outside.center[0] = 0.75;  // upper face at 1.25
  CHECK(!cube_aligned(lat, outside));
  CHECK_THROWS_AS(cube_range(lat, outside), config_error);
}

TEST_CASE("dilate scales about the center") {
  Cube q;
  q.dim = 2;
  q.center = {0.25, -0.5, 0.0};
  q.edge = 0.5;
  q.level = 3;
  q.shift_mask = 2;
  const Cube d = dilate(q, 4.0);
  CHECK(d.edge == doctest::Approx(2.0));
  CHECK(d.center[0] == doctest::Approx(0.25));
  CHECK(d.center[1] == doctest::Approx(-0.5));
  CHECK(d.level == -1);
  CHECK(d.shift_mask == 0);
  CHECK(d.volume() == doctest::Approx(4.0));
}

TEST_CASE("level cubes partition the box") {
  const Lattice lat = build_lattice(2, 1.0, 8);
  const CubeFamily fam = dyadic_family(lat, 2, 2, false);
  CHECK(fam.cubes.size() == 16);
  std::set<long> seen;
  for (const Cube& q : fam.cubes)
    for (long i : collect_cube_points(lat, q)) {
      CHECK(seen.count(i) == 0);
      seen.insert(i);
    }
  CHECK(long(seen.size()) == lat.num_points());
}

TEST_CASE("family counts with translates") {
  const Lattice lat = build_lattice(1, 1.0, 8);
  const CubeFamily fam = dyadic_family(lat, 0, 2, true);
  // per level: all dyadic cubes plus the half-edge translates that stay in
  // the box: 1 + (2+1) + (4+3)
  CHECK(fam.cubes.size() == 11);
  CHECK(fam.skipped == 3);

  int translated = 0;
  for (const Cube& q : fam.cubes)
    if (q.shift_mask != 0) {
      ++translated;
      CHECK(q.level >= 1);
    }
  CHECK(translated == 4);

  // the level-1 translate straddles the origin
  bool found = false;
  for (const Cube& q : fam.cubes)
    if (q.level == 1 && q.shift_mask == 1) {
      found = true;
      CHECK(q.center[0] == doctest::Approx(0.0));
      CHECK(q.edge == doctest::Approx(1.0));
    }
  CHECK(found);
}

TEST_CASE("family validation") {
  const Lattice lat = build_lattice(1, 1.0, 8);
  CHECK_THROWS_AS(dyadic_family(lat, 0, 4, false), config_error);  // 1-point floor
  CHECK_THROWS_AS(dyadic_family(lat, 2, 1, false), config_error);
  CHECK_THROWS_AS(dyadic_family(lat, -1, 2, false), config_error);
  CHECK_NOTHROW(dyadic_family(lat, 0, 3, false));
}

TEST_CASE("cube means against closed forms") {
  const Lattice lat = build_lattice(1, 1.0, 16384);
  const SampledField f =
      make_field(lat, [](std::array<double, 3> x) { return std::exp(x[0]); });
  Cube q;
  q.dim = 1;
  q.center = {0.5, 0.0, 0.0};
  q.edge = 1.0;
  CHECK(cube_mean(f, q) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-6));
  CHECK(cube_geomean(f, q) == doctest::Approx(std::exp(0.5)).epsilon(1e-12));
  CHECK(cube_sum(f, q) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-6));

  SampledField zeroed = f;
  zeroed[lat.num_points() - 1] = 0.0;
  CHECK_THROWS_AS(cube_geomean(zeroed, q), numeric_error);
}

TEST_CASE("field sampling matches the function") {
  const Lattice lat = build_lattice(2, 2.0, 8);
  const SampledField f = make_field(
      lat, [](std::array<double, 3> x) { return x[0] + 10.0 * x[1]; });
  const long lin = lat.linear_index({3, 5, 0});
  CHECK(f[lin] == doctest::Approx(lat.coord(3) + 10.0 * lat.coord(5)));
}
