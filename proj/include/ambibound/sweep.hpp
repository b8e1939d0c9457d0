#pragma once

// Closed-form bound curves over a weight parameter, one row per sample.

#include <iosfwd>
#include <string_view>
#include <vector>

#include "ambibound/bounds.hpp"

namespace ambibound {

enum class SweepParameter { alpha, area_u };

std::string_view to_string(SweepParameter p) noexcept;
// "alpha" or "areaU"; Errc::invalid_params otherwise.
SweepParameter parse_sweep_parameter(std::string_view name);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::alpha;
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;  // >= 2, endpoints included
  double r = 0.0;

  // Errc::invalid_params unless 0 < lo < hi, steps >= 2 and r > 0.
  void validate() const;
};

struct SweepRow {
  double param;
  double interior;  // interior-branch formula, evaluated even where infeasible
  double boundary;  // boundary-branch formula
  double combined;  // best bound: the admissible branch
  double p_opt;
  Branch branch;
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Header "param,interior,boundary,combined,p_opt,branch".
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace ambibound
