#include "varleb/report.hpp"

namespace varleb {

void summarize_rows(CubeReport& rep) {
  rep.estimate = 0.0;
  rep.argmax = -1;
  rep.skipped = 0;
  rep.all_pass = true;
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    const CubeRow& r = rep.rows[i];
    if (r.skipped) {
      ++rep.skipped;
      continue;
    }
    if (!r.pass) rep.all_pass = false;
    if (rep.argmax < 0 || r.value > rep.estimate) {
      rep.estimate = r.value;
      rep.argmax = long(i);
    }
  }
}

}  // namespace varleb
