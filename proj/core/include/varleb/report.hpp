#pragma once

#include <string>
#include <vector>

#include "varleb/lattice.hpp"

namespace varleb {

// One cube's contribution to a family computation. value carries the
// functional for estimate-style reports; lhs/rhs/pass carry inequality
// checks; aux is kind-specific (dilation factor, exponent, stride, ...).
struct CubeRow {
  Cube cube;
  double value = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double aux = 0.0;
  bool pass = true;
  bool skipped = false;
};

struct CubeReport {
  std::string kind;
  std::vector<CubeRow> rows;
  double estimate = 0.0;  // max of value over non-skipped rows
  long argmax = -1;       // row index attaining the estimate
  long skipped = 0;
  bool all_pass = true;
  double smallest_c = 0.0;  // smallest multiplier that would pass every row
};

// finalize estimate/argmax/skipped/all_pass from the rows
void summarize_rows(CubeReport& rep);

}  // namespace varleb
