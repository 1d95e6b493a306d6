#pragma once

#include <ostream>

#include "json.hpp"
#include "jsonwriter.hpp"
#include "runconfig.hpp"

namespace varleb_cli {

// Evaluates every entry of the config's "analyses" array in order, writing
// one object per analysis into the report (jw must be inside the top-level
// object) and per-cube rows into the CSV stream. Returns false when any
// pass/fail style analysis failed.
bool run_analyses(const RunSetup& s, const nlohmann::json& list,
                  JsonWriter& jw, std::ostream& csv);

}  // namespace varleb_cli
