#pragma once

#include <optional>
#include <string>

#include "varleb/matrixweights.hpp"
#include "varleb/scalarweights.hpp"

namespace varleb {

// A named weight/exponent pairing with its expected class memberships.
// m = 0 marks scalar entries. Unset flags make no claim (either because
// the class does not apply or because the entry is deliberately flagless).
struct CatalogEntry {
  std::string name;
  int dim = 1;
  double halfwidth = 2.0;
  int m = 0;
  std::optional<double> declared_p_infty;
  std::function<double(std::array<double, 3>)> exponent;
  std::function<double(std::array<double, 3>)> weight;
  std::function<Eigen::MatrixXd(std::array<double, 3>)> matrix;
  std::optional<bool> in_ainfty;
  std::optional<bool> in_apvar;
  std::optional<bool> in_apinfty;
  std::string note;
};

const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& catalog_entry(const std::string& name);

struct Instantiated {
  bool is_matrix = false;
  ExponentProfile profile;
  SampledField w;
  MatrixField wmat;
};

Instantiated instantiate(const CatalogEntry& entry, const Lattice& lat,
                         const Constants& cst = {});
Instantiated instantiate(const std::string& name, const Lattice& lat,
                         const Constants& cst = {});

// Which family estimate a refinement sweep tracks. The power routes follow
// the membership characterizations (the weight raised to p(.) landing in
// the classical class or its dagger variant); the norm routes evaluate the
// variable-exponent functionals directly.
enum class SweepRoute {
  ainfty_w,
  ainfty_power,
  apinfty_norm,
  apvar_norm,
  apdagger_power,
  matrix_apinfty,
};

std::string to_string(SweepRoute r);

// Lattice resolution and family depth refine in lockstep: step t uses
// 2^(t + extra_bits) points per axis and dyadic levels 0..t, so the deepest
// cubes keep shrinking while their sample count stays fixed.
struct SweepStep {
  int t = 0;
  long points_per_axis = 0;
  double estimate = 0.0;
};
struct SweepResult {
  SweepRoute route{};
  std::vector<SweepStep> steps;
  double growth = 0.0;     // last estimate over first
  bool divergent = false;  // growth >= divergence_factor
  bool stable = false;     // growth <= stability_factor
};

SweepResult stability_sweep(const CatalogEntry& entry, SweepRoute route,
                            int t_first, int t_last, int extra_bits,
                            const Constants& cst = {});

// Re-derives every set flag from the matching sweep route and checks the
// direct/membership routes agree on stability.
struct FlagCheck {
  bool consistent = true;
  std::string detail;
};
FlagCheck verify_flags(const CatalogEntry& entry, int t_first, int t_last,
                       int extra_bits, const Constants& cst = {});

}  // namespace varleb
