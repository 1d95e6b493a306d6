// End-to-end acceptance gate: one line per criterion, nonzero exit when any
// criterion fails. The same checks back the `selftest` subcommand of the CLI.
#include <iostream>

#include "varleb/selftest.hpp"

int main() {
  const auto results = varleb::run_acceptance(std::cout);
  return varleb::all_passed(results) ? 0 : 1;
}
