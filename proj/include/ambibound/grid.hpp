#pragma once

#include <cstddef>
#include <optional>

namespace ambibound {

// Uniform sample positions start + i * step, i = 0 .. count-1.
struct Axis {
  double start;
  double step;
  std::size_t count;

  double at(std::size_t i) const noexcept {
    return start + static_cast<double>(i) * step;
  }
  double last() const noexcept { return at(count - 1); }

  // Points lo, lo + step, ... below hi.
  static Axis points(double lo, double hi, double step);
  // Cell centres of the partition of [lo, hi) into cells of width step.
  // Rectangles whose edges sit on lo + k * step rasterize exactly.
  static Axis cells(double lo, double hi, double step);

  // Index of the sample within kGridTolerance * step of x, if any.
  std::optional<std::size_t> index_of(double x) const noexcept;

  bool operator==(const Axis&) const = default;
};

bool same_axis(const Axis& a, const Axis& b) noexcept;

// Uniform phase-space grid: rows are delays, columns are Doppler shifts.
// Each sample represents the cell of area tau.step * nu.step centred on it.
struct Grid2D {
  Axis tau;
  Axis nu;

  std::size_t size() const noexcept { return tau.count * nu.count; }
  double cell_area() const noexcept { return tau.step * nu.step; }

  // Throws Errc::invalid_params when a step is not positive or a count < 2.
  void validate() const;

  bool operator==(const Grid2D&) const = default;
};

bool same_grid(const Grid2D& a, const Grid2D& b) noexcept;

// tau, nu in [-4, 4), step 1/32, sample at the origin.
Grid2D default_phase_grid();

// Same extent with samples at cell centres, for indicator weights whose
// edges lie on multiples of 1/32.
Grid2D default_cell_grid();

}  // namespace ambibound
