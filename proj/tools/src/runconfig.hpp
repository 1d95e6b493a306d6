#pragma once

#include <initializer_list>
#include <string>

#include "json.hpp"
#include "varleb/catalog.hpp"
#include "varleb/constants.hpp"
#include "varleb/exponents.hpp"
#include "varleb/lattice.hpp"
#include "varleb/matrixweights.hpp"

namespace varleb_cli {

// Everything a run needs, resolved and validated. Scalar runs also carry
// wmat (the 1x1 lift) so matrix analyses work on either kind.
struct RunSetup {
  varleb::Lattice lat;
  varleb::ExponentProfile profile;
  bool is_matrix = false;
  varleb::SampledField w;
  varleb::MatrixField wmat;
  varleb::CubeFamily fam;
  const varleb::CatalogEntry* entry = nullptr;  // set for catalog weights
  varleb::Constants cst;
  std::string weight_label;
  std::string report_name = "report.json";
  std::string csv_name = "cubes.csv";
};

// Rejects keys outside the allowed list; unknown keys are configuration
// mistakes, not extensions.
void expect_keys(const nlohmann::json& obj, const std::string& where,
                 std::initializer_list<const char*> allowed);

// Required-key lookup with a readable error.
const nlohmann::json& need(const nlohmann::json& obj, const char* key,
                           const std::string& where);

RunSetup build_run(const nlohmann::json& cfg, const varleb::Constants& base);

}  // namespace varleb_cli
