#include "ambibound/sweep.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace ambibound {

std::string_view to_string(SweepParameter p) noexcept {
  return p == SweepParameter::alpha ? "alpha" : "areaU";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
  if (name == "alpha") return SweepParameter::alpha;
  if (name == "areaU") return SweepParameter::area_u;
  throw Error(Errc::invalid_params,
              "sweep parameter must be alpha or areaU, got " +
                  std::string(name));
}

void SweepSpec::validate() const {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw Error(Errc::invalid_params, "sweep range needs 0 < lo < hi");
  }
  if (steps < 2) throw Error(Errc::invalid_params, "sweep needs steps >= 2");
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(Errc::invalid_params, "sweep needs r > 0");
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.steps));
  for (int i = 0; i < spec.steps; ++i) {
    const double x =
        i == spec.steps - 1
            ? spec.hi
            : spec.lo + (spec.hi - spec.lo) * i / (spec.steps - 1);
    const bool alpha = spec.parameter == SweepParameter::alpha;
    const BranchValues v =
        alpha ? gaussian_branches(spec.r, x) : indicator_branches(spec.r, x);
    const BoundReport best = alpha ? best_bound_gaussian(spec.r, x)
                                   : best_bound_indicator(spec.r, x);
    rows.push_back({x, v.interior, v.boundary, best.bound_value, best.p_opt,
                    best.branch});
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "param,interior,boundary,combined,p_opt,branch\n";
  out << std::setprecision(17);
  for (const SweepRow& row : rows) {
    out << row.param << ',' << row.interior << ',' << row.boundary << ','
        << row.combined << ',' << row.p_opt << ',' << to_string(row.branch)
        << '\n';
  }
}

}  // namespace ambibound
