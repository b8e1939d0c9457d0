#include "ambibound/phase_plane.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "ambibound/kernels.hpp"
#include "fft.hpp"

namespace ambibound {

std::string_view to_string(SurfaceKind kind) noexcept {
  switch (kind) {
    case SurfaceKind::ambiguity: return "ambiguity";
    case SurfaceKind::woodward: return "woodward";
    case SurfaceKind::wigner: return "wigner";
  }
  return "unknown";
}

namespace {

using detail::FftSign;

// exp(i 2 pi cycles), reducing the argument first so large t * nu products
// keep full phase accuracy.
cplx unit_phase(double cycles) {
  return std::polar(1.0, 2.0 * kPi * (cycles - std::round(cycles)));
}

void check_inputs(const Waveform& g, const Waveform& gamma,
                  const Grid2D& grid) {
  grid.validate();
  if (!same_grid(g.grid(), gamma.grid())) {
    throw Error(Errc::incompatible_grids,
                "g and gamma must share one time grid");
  }
}

// Number of FFT bins N with bin width 1 / (N * span_dt) equal to dnu.
std::size_t doppler_fft_size(double span_dt, double dnu) {
  return static_cast<std::size_t>(exact_multiple(
      1.0 / span_dt, dnu, Errc::incompatible_grids,
      "Doppler step must divide the FFT bin spacing; 1/(dt*dnu)"));
}

// Row accumulator: values indexed by sample k land in bin k mod N.
class FoldedRow {
 public:
  explicit FoldedRow(std::size_t n) : buf_(n) {}

  void reset() { std::fill(buf_.begin(), buf_.end(), cplx{}); }

  void add(std::span<const cplx> h, long long first_index) {
    const auto n = static_cast<long long>(buf_.size());
    long long pos = ((first_index % n) + n) % n;
    for (const cplx& z : h) {
      buf_[static_cast<std::size_t>(pos)] += z;
      if (++pos == n) pos = 0;
    }
  }

  std::span<cplx> data() { return buf_; }
  const cplx& bin(std::size_t l) const { return buf_[l % buf_.size()]; }

 private:
  std::vector<cplx> buf_;
};

}  // namespace

AmbiguitySurface cross_ambiguity(const Waveform& g, const Waveform& gamma,
                                 const Grid2D& grid) {
  check_inputs(g, gamma, grid);
  const auto& k = kernels::active();
  const double dt = g.dt();
  const auto n = static_cast<long long>(g.size());
  const long long m0 = exact_multiple(grid.tau.start, dt,
                                      Errc::incompatible_grids, "delay origin");
  const long long dm = exact_multiple(grid.tau.step, dt,
                                      Errc::incompatible_grids, "delay step");
  const std::size_t fft_n = doppler_fft_size(dt, grid.nu.step);

  // sum_k conj(g_k) gamma_{k-m} e^{i2pi nu_l t_k}
  //   = e^{i2pi l dnu t0} * sum_k [conj(g_k) e^{i2pi nu0 t_k}] gamma_{k-m}
  //                        * e^{+i2pi l k / N}
  std::vector<cplx> pre(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    pre[i] = unit_phase(grid.nu.start * g.time(i));
  }
  std::vector<cplx> g_mod(g.size());
  k.conj_mul(g.samples(), pre, g_mod);

  std::vector<cplx> post(grid.nu.count);
  for (std::size_t l = 0; l < grid.nu.count; ++l) {
    post[l] = dt * unit_phase(static_cast<double>(l) * grid.nu.step * g.t0());
  }

  AmbiguitySurface out{grid, SurfaceKind::ambiguity,
                       std::vector<cplx>(grid.size())};
  FoldedRow row(fft_n);
  std::vector<cplx> h(g.size());
  for (std::size_t j = 0; j < grid.tau.count; ++j) {
    const long long m = m0 + static_cast<long long>(j) * dm;
    row.reset();
    const long long lo = std::max(0LL, m);
    const long long hi = std::min(n, n + m);
    if (lo < hi) {
      const auto len = static_cast<std::size_t>(hi - lo);
      std::span<cplx> seg(h.data(), len);
      k.mul(std::span<const cplx>(g_mod).subspan(lo, len),
            gamma.samples().subspan(static_cast<std::size_t>(lo - m), len),
            seg);
      row.add(seg, lo);
      detail::fft_inplace(row.data(), FftSign::positive);
    }
    cplx* dst = out.values.data() + j * grid.nu.count;
    for (std::size_t l = 0; l < grid.nu.count; ++l) {
      dst[l] = post[l] * row.bin(l);
    }
  }
  return out;
}

AmbiguitySurface cross_ambiguity_direct(const Waveform& g,
                                        const Waveform& gamma,
                                        const Grid2D& grid) {
  check_inputs(g, gamma, grid);
  AmbiguitySurface out{grid, SurfaceKind::ambiguity,
                       std::vector<cplx>(grid.size())};
  for (std::size_t j = 0; j < grid.tau.count; ++j) {
    for (std::size_t l = 0; l < grid.nu.count; ++l) {
      const PhasePoint x{grid.tau.at(j), grid.nu.at(l)};
      out.values[j * grid.nu.count + l] = inner_product(g, tf_shift(gamma, x));
    }
  }
  return out;
}

AmbiguitySurface woodward_ambiguity(const Waveform& g, const Waveform& gamma,
                                    const Grid2D& grid) {
  check_inputs(g, gamma, grid);
  const auto& k = kernels::active();
  const double dt = g.dt();
  const auto n = static_cast<long long>(g.size());
  // Half-delays must land on samples: tau = 2 m dt.
  const long long m0 = exact_multiple(grid.tau.start, 2.0 * dt,
                                      Errc::incompatible_grids,
                                      "delay origin (in units of 2 dt)");
  const long long dm = exact_multiple(grid.tau.step, 2.0 * dt,
                                      Errc::incompatible_grids,
                                      "delay step (in units of 2 dt)");
  const std::size_t fft_n = doppler_fft_size(dt, grid.nu.step);

  // sum_k g_{k-m} conj(gamma_{k+m}) e^{-i2pi nu_l t_k}
  std::vector<cplx> pre(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    pre[i] = unit_phase(-grid.nu.start * g.time(i));
  }
  std::vector<cplx> post(grid.nu.count);
  for (std::size_t l = 0; l < grid.nu.count; ++l) {
    post[l] = dt * unit_phase(-static_cast<double>(l) * grid.nu.step * g.t0());
  }

  AmbiguitySurface out{grid, SurfaceKind::woodward,
                       std::vector<cplx>(grid.size())};
  FoldedRow row(fft_n);
  std::vector<cplx> h(g.size());
  for (std::size_t j = 0; j < grid.tau.count; ++j) {
    const long long m = m0 + static_cast<long long>(j) * dm;
    const long long am = m < 0 ? -m : m;
    row.reset();
    if (am < n - am) {
      const long long lo = am;
      const auto len = static_cast<std::size_t>(n - 2 * am);
      std::span<cplx> seg(h.data(), len);
      k.conj_mul(gamma.samples().subspan(static_cast<std::size_t>(lo + m), len),
                 g.samples().subspan(static_cast<std::size_t>(lo - m), len),
                 seg);
      k.mul(seg, std::span<const cplx>(pre).subspan(lo, len), seg);
      row.add(seg, lo);
      detail::fft_inplace(row.data(), FftSign::negative);
    }
    cplx* dst = out.values.data() + j * grid.nu.count;
    for (std::size_t l = 0; l < grid.nu.count; ++l) {
      dst[l] = post[l] * row.bin(l);
    }
  }
  return out;
}

AmbiguitySurface wigner(const Waveform& g, const Waveform& gamma,
                        const Grid2D& grid) {
  check_inputs(g, gamma, grid);
  const auto& k = kernels::active();
  const double dt = g.dt();
  const auto n = static_cast<long long>(g.size());
  // Substituting t = 2u dt:
  //   W(tau, nu) = 2 dt sum_u g(tau + u dt) conj(gamma(tau - u dt))
  //                          e^{-i2pi (2 nu dt) u}
  // so tau must be a sample time and 2 dnu dt = 1/N.
  const long long i0 = exact_multiple(grid.tau.start - g.t0(), dt,
                                      Errc::incompatible_grids,
                                      "Wigner time origin");
  const long long di = exact_multiple(grid.tau.step, dt,
                                      Errc::incompatible_grids,
                                      "Wigner time step");
  const std::size_t fft_n = doppler_fft_size(2.0 * dt, grid.nu.step);

  // pre[u + n - 1] = e^{-i2pi 2 nu0 u dt}, u in [-(n-1), n-1]
  std::vector<cplx> pre(static_cast<std::size_t>(2 * n - 1));
  for (long long u = -(n - 1); u <= n - 1; ++u) {
    pre[static_cast<std::size_t>(u + n - 1)] =
        unit_phase(-2.0 * grid.nu.start * static_cast<double>(u) * dt);
  }
  // gamma_rev[k] = gamma[n-1-k], so gamma[i-u] = gamma_rev[n-1-i+u].
  std::vector<cplx> gamma_rev(gamma.samples().rbegin(),
                              gamma.samples().rend());

  AmbiguitySurface out{grid, SurfaceKind::wigner,
                       std::vector<cplx>(grid.size())};
  FoldedRow row(fft_n);
  std::vector<cplx> h(g.size());
  const std::span<const cplx> pre_span(pre);
  for (std::size_t j = 0; j < grid.tau.count; ++j) {
    const long long i = i0 + static_cast<long long>(j) * di;
    row.reset();
    const long long u_lo = std::max(-i, i - n + 1);
    const long long u_hi = std::min(n - 1 - i, i);
    if (u_lo <= u_hi) {
      const auto len = static_cast<std::size_t>(u_hi - u_lo + 1);
      std::span<cplx> seg(h.data(), len);
      k.conj_mul(std::span<const cplx>(gamma_rev).subspan(
                     static_cast<std::size_t>(n - 1 - i + u_lo), len),
                 g.samples().subspan(static_cast<std::size_t>(i + u_lo), len),
                 seg);
      k.mul(seg, pre_span.subspan(static_cast<std::size_t>(u_lo + n - 1), len),
            seg);
      row.add(seg, u_lo);
      detail::fft_inplace(row.data(), FftSign::negative);
    }
    cplx* dst = out.values.data() + j * grid.nu.count;
    for (std::size_t l = 0; l < grid.nu.count; ++l) {
      dst[l] = 2.0 * dt * row.bin(l);
    }
  }
  return out;
}

double surface_lp_norm(const AmbiguitySurface& s, double p) {
  if (!(p > 0.0)) throw Error(Errc::domain, "surface_lp_norm needs p > 0");
  const double da = s.grid.cell_area();
  const auto& k = kernels::active();
  if (p == 2.0) return std::sqrt(k.sum_abs2(s.values) * da);
  std::vector<double> mag2(s.values.size());
  k.abs2(s.values, mag2);
  const double peak2 = *std::max_element(mag2.begin(), mag2.end());
  if (peak2 == 0.0) return 0.0;
  double acc = 0.0;
  for (double m : mag2) acc += std::pow(m / peak2, 0.5 * p);
  return std::sqrt(peak2) * std::pow(acc * da, 1.0 / p);
}

double weighted_r_norm(const AmbiguitySurface& s, const WeightSpec& c,
                       double r) {
  if (!(r > 0.0)) throw Error(Errc::domain, "weighted_r_norm needs r > 0");
  const std::vector<double> weight = rasterize(c, s.grid);
  const auto& k = kernels::active();
  std::vector<double> mag(s.values.size());
  k.abs2(s.values, mag);
  if (r != 2.0) {
    for (double& m : mag) m = std::pow(m, 0.5 * r);
  }
  return k.dot(mag, weight) * s.grid.cell_area();
}

double max_abs(const AmbiguitySurface& s) {
  double m = 0.0;
  for (const cplx& z : s.values) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_imag(const AmbiguitySurface& s) {
  double m = 0.0;
  for (const cplx& z : s.values) m = std::max(m, std::abs(z.imag()));
  return m;
}

void write_surface_csv(std::ostream& out, const AmbiguitySurface& s) {
  out << "tau,nu,re,im\n" << std::setprecision(17);
  for (std::size_t j = 0; j < s.grid.tau.count; ++j) {
    for (std::size_t l = 0; l < s.grid.nu.count; ++l) {
      const cplx& z = s.at(j, l);
      out << s.grid.tau.at(j) << ',' << s.grid.nu.at(l) << ',' << z.real()
          << ',' << z.imag() << '\n';
    }
  }
}

}  // namespace ambibound
