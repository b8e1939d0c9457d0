#include "ambibound/grid.hpp"

#include <algorithm>
#include <cmath>

#include "ambibound/error.hpp"
#include "ambibound/signal.hpp"

namespace ambibound {

namespace {

std::size_t count_between(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi > lo)) {
    throw Error(Errc::invalid_params, "axis needs step > 0 and hi > lo");
  }
  const double ratio = (hi - lo) / step;
  const double rounded = std::round(ratio);
  // Allow a partial last cell to be dropped, but not rounding noise.
  const double n = std::abs(ratio - rounded) <= kGridTolerance * ratio
                       ? rounded
                       : std::floor(ratio);
  return static_cast<std::size_t>(n);
}

}  // namespace

Axis Axis::points(double lo, double hi, double step) {
  return {lo, step, count_between(lo, hi, step)};
}

Axis Axis::cells(double lo, double hi, double step) {
  return {lo + 0.5 * step, step, count_between(lo, hi, step)};
}

std::optional<std::size_t> Axis::index_of(double x) const noexcept {
  const double ratio = (x - start) / step;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > kGridTolerance || rounded < 0.0 ||
      rounded >= static_cast<double>(count)) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(rounded);
}

bool same_axis(const Axis& a, const Axis& b) noexcept {
  const double scale = std::max(a.step, b.step);
  return a.count == b.count &&
         std::abs(a.step - b.step) <= kGridTolerance * scale &&
         std::abs(a.start - b.start) <= kGridTolerance * scale;
}

bool same_grid(const Grid2D& a, const Grid2D& b) noexcept {
  return same_axis(a.tau, b.tau) && same_axis(a.nu, b.nu);
}

void Grid2D::validate() const {
  for (const Axis* axis : {&tau, &nu}) {
    if (!(axis->step > 0.0) || !std::isfinite(axis->step) ||
        !std::isfinite(axis->start) || axis->count < 2) {
      throw Error(Errc::invalid_params,
                  "phase grid needs finite steps > 0 and at least 2 points "
                  "per axis");
    }
  }
}

Grid2D default_phase_grid() {
  return {Axis::points(-4.0, 4.0, 1.0 / 32.0),
          Axis::points(-4.0, 4.0, 1.0 / 32.0)};
}

Grid2D default_cell_grid() {
  return {Axis::cells(-4.0, 4.0, 1.0 / 32.0),
          Axis::cells(-4.0, 4.0, 1.0 / 32.0)};
}

}  // namespace ambibound
