#pragma once

// Cross-ambiguity functions, Woodward ambiguity functions and Wigner
// distributions on uniform delay-Doppler grids, plus their norms.
//
//   A(x)        = <g, S_x gamma> = int conj(g(t)) exp(i2pi x2 t) gamma(t - x1) dt
//   At(tau, nu) = int g(t - tau/2) conj(gamma(t + tau/2)) exp(-i2pi nu t) dt
//   W(tau, nu)  = int g(tau + t/2) conj(gamma(tau - t/2)) exp(-i2pi nu t) dt
//
// Rows are evaluated with one FFT each. Delays must fall on the waveform's
// sample grid (half the delay for At); the Doppler step must divide the FFT
// bin spacing exactly, i.e. 1/(dt * dnu) (A, At) or 1/(2 dt * dnu) (W) must
// be an integer. The Doppler origin is free.

#include <iosfwd>
#include <vector>

#include "ambibound/grid.hpp"
#include "ambibound/signal.hpp"
#include "ambibound/weights.hpp"

namespace ambibound {

enum class SurfaceKind { ambiguity, woodward, wigner };

std::string_view to_string(SurfaceKind kind) noexcept;

struct AmbiguitySurface {
  Grid2D grid;
  SurfaceKind kind;
  std::vector<cplx> values;  // row-major: values[j * nu.count + l]

  const cplx& at(std::size_t j, std::size_t l) const noexcept {
    return values[j * grid.nu.count + l];
  }
};

// A(tau_j, nu_l) by FFT. Errc::incompatible_grids on misaligned grids.
AmbiguitySurface cross_ambiguity(const Waveform& g, const Waveform& gamma,
                                 const Grid2D& grid);

// A(tau_j, nu_l) = inner_product(g, tf_shift(gamma, x)) point by point.
// O(grid points * samples); the reference the FFT path is checked against.
AmbiguitySurface cross_ambiguity_direct(const Waveform& g,
                                        const Waveform& gamma,
                                        const Grid2D& grid);

AmbiguitySurface woodward_ambiguity(const Waveform& g, const Waveform& gamma,
                                    const Grid2D& grid);

AmbiguitySurface wigner(const Waveform& g, const Waveform& gamma,
                        const Grid2D& grid);

// (sum |values|^p dtau dnu)^(1/p). Errc::domain for p <= 0.
double surface_lp_norm(const AmbiguitySurface& s, double p);

// sum |values|^r C(x) dtau dnu, the un-rooted weighted r-norm.
double weighted_r_norm(const AmbiguitySurface& s, const WeightSpec& c,
                       double r);

double max_abs(const AmbiguitySurface& s);
double max_abs_imag(const AmbiguitySurface& s);

// Surface CSV: header "tau,nu,re,im", row-major in tau then nu.
void write_surface_csv(std::ostream& out, const AmbiguitySurface& s);

}  // namespace ambibound
