#pragma once

// Nonnegative weight functions C(x) on the delay-Doppler plane.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ambibound/grid.hpp"
#include "ambibound/signal.hpp"

namespace ambibound {

struct Rect {
  double tau_min;
  double tau_max;
  double nu_min;
  double nu_max;
};

// Cells of `grid` (row-major, delay then Doppler) marked 1 belong to the
// region.
struct GridMask {
  Grid2D grid;
  std::vector<std::uint8_t> mask;
};

using Region = std::variant<Rect, GridMask>;

// Errc::degenerate_region for empty/inverted regions.
double area(const Region& region);

// alpha * exp(-alpha * pi * |x|^2), unit mass.
struct GaussianWeight {
  double alpha;
};

// chi_U(x) / |U|, unit mass.
struct IndicatorWeight {
  Region region;
  double area;
};

// Arbitrary nonnegative samples; not renormalized.
struct SampledWeight {
  Grid2D grid;
  std::vector<double> values;
};

class WeightSpec {
 public:
  using Variant = std::variant<GaussianWeight, IndicatorWeight, SampledWeight>;

  static WeightSpec gaussian(double alpha);
  static WeightSpec indicator(Region region);
  static WeightSpec sampled(Grid2D grid, std::vector<double> values);

  const Variant& get() const noexcept { return value_; }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&value_);
  }

 private:
  explicit WeightSpec(Variant v) : value_(std::move(v)) {}
  Variant value_;
};

// C(x). Indicator boundaries count as inside. Sampled weights need x on
// their grid (Errc::off_grid).
double evaluate(const WeightSpec& c, PhasePoint x);

// ||C||_s for s >= 1 (kInf allowed). Closed forms for the Gaussian and
// indicator variants, a Riemann sum for sampled weights.
double weight_lq_norm(const WeightSpec& c, double s);

// C sampled at every point of `grid`, row-major. Indicator rectangles must
// have their edges on cell boundaries and lie inside the grid
// (Errc::rasterization_mismatch); masks and sampled weights must live on
// `grid` itself.
std::vector<double> rasterize(const WeightSpec& c, const Grid2D& grid);

// Rescales a sampled weight to unit mass. Errc::degenerate_input when the
// mass is zero; other variants are returned unchanged.
WeightSpec normalize_l1(const WeightSpec& c);

// Compact JSON description, e.g. {"type":"gaussian","alpha":1}.
std::string describe(const WeightSpec& c);

// Weight JSON:
//   {"type":"gaussian","alpha":a}
//   {"type":"rect","tau":[a,b],"nu":[c,d]}
//   {"type":"mask","path":"mask.csv"}      indicator of the set cells
//   {"type":"sampled","path":"w.csv"}      sampled weight values
// Relative paths resolve against `base_dir`.
WeightSpec parse_weight_json(std::string_view text,
                             const std::filesystem::path& base_dir = {});

// Grid CSV with header "tau,nu,val", row-major in tau then nu.
struct GridValues {
  Grid2D grid;
  std::vector<double> values;
};
GridValues read_grid_csv(std::istream& in);

}  // namespace ambibound
