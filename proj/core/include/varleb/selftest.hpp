#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "varleb/constants.hpp"

namespace varleb {

// one end-to-end acceptance check; `detail` carries the measured numbers that
// justify `pass`, `seconds` the wall time (the budget is part of the check)
struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

// runs all acceptance criteria, printing one [PASS]/[FAIL] line per criterion
// to `out` as each finishes, plus a summary line; an exception inside a
// criterion marks it failed and is reported in its detail text
std::vector<CriterionResult> run_acceptance(std::ostream& out, const Constants& cst = {});

bool all_passed(const std::vector<CriterionResult>& results);

// "index name" labels of the criteria, in run order
std::vector<std::string> acceptance_labels();

}  // namespace varleb
