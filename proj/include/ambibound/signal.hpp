#pragma once

// Sampled complex waveforms on a uniform time grid.
//
// Continuous integrals over the real line are replaced by Riemann sums with
// weight dt. For the Gaussian-dominated signals this toolkit works with, the
// rectangle rule is spectrally accurate once the grid covers the tails.

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "ambibound/error.hpp"

namespace ambibound {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct TimeGrid {
  double t0;
  double dt;
  std::size_t n;

  double at(std::size_t k) const noexcept {
    return t0 + static_cast<double>(k) * dt;
  }
  bool operator==(const TimeGrid&) const = default;
};

// t in [-8, 8), dt = 1/64.
inline constexpr TimeGrid kDefaultTimeGrid{-8.0, 1.0 / 64.0, 1024};

// Relative tolerance used when comparing grid origins and steps.
inline constexpr double kGridTolerance = 1e-9;

bool same_grid(const TimeGrid& a, const TimeGrid& b) noexcept;

class Waveform {
 public:
  // Throws Errc::invalid_params for n < 2, dt <= 0 or non-finite samples.
  Waveform(double t0, double dt, std::vector<cplx> samples);
  Waveform(const TimeGrid& grid, std::vector<cplx> samples)
      : Waveform(grid.t0, grid.dt, std::move(samples)) {}

  double t0() const noexcept { return t0_; }
  double dt() const noexcept { return dt_; }
  std::size_t size() const noexcept { return samples_.size(); }
  TimeGrid grid() const noexcept { return {t0_, dt_, samples_.size()}; }
  double time(std::size_t k) const noexcept { return grid().at(k); }

  std::span<const cplx> samples() const noexcept { return samples_; }
  const cplx& operator[](std::size_t k) const noexcept { return samples_[k]; }

 private:
  double t0_;
  double dt_;
  std::vector<cplx> samples_;
};

// f(t) = exp(-a t^2 + b t + c), Re(a) > 0.
struct GaussianParams {
  cplx a;
  cplx b{0.0, 0.0};
  cplx c{0.0, 0.0};

  // Unit-L2 Gaussian with quadratic parameter a (real part > 0), centred
  // at `center` and modulated to frequency `freq`.
  static GaussianParams unit(cplx a, double center = 0.0, double freq = 0.0);
};

// x = (delay, Doppler).
struct PhasePoint {
  double delay;    // x1, seconds
  double doppler;  // x2, Hz
};

// (sum |w_k|^p dt)^(1/p); p = kInf gives max |w_k|. Errc::domain for p <= 0.
double lp_norm(const Waveform& w, double p);

// Errc::degenerate_input for the zero waveform.
Waveform normalize_l2(const Waveform& w);

// Samples exp(-a t_k^2 + b t_k + c). Errc::invalid_params when Re(a) <= 0,
// Errc::grid_too_narrow when an end sample exceeds 1e-12 of the peak.
Waveform make_gaussian(const GaussianParams& params, const TimeGrid& grid);

// (S_x f)(t) = exp(i 2 pi x2 t) f(t - x1), zero fill. x1 must be an integer
// multiple of dt (Errc::off_grid_delay otherwise).
Waveform tf_shift(const Waveform& w, PhasePoint x);

// sum conj(g_k) h_k dt. Errc::incompatible_grids on grid mismatch.
cplx inner_product(const Waveform& g, const Waveform& h);

// conj(f(t)).
Waveform conjugate(const Waveform& w);

// f(-t) on the same grid, zero fill where -t_k is off the sampled range.
// Requires 2 t0 / dt to be an integer.
Waveform time_reverse(const Waveform& w);

// sum_i coeffs[i] * parts[i]; all parts on one grid.
Waveform linear_combination(std::span<const cplx> coeffs,
                            std::span<const Waveform> parts);

// Rounds x / step to the nearest integer, or throws `code` when the ratio is
// further than kGridTolerance from an integer.
long long exact_multiple(double x, double step, Errc code,
                         std::string_view what);

// Waveform CSV: header "t,re,im", one row per sample. Spacing must be uniform
// within 1e-9 dt.
Waveform read_waveform_csv(std::istream& in);
void write_waveform_csv(std::ostream& out, const Waveform& w);

}  // namespace ambibound
