#include "ambibound/signal.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ambibound/kernels.hpp"

namespace ambibound {

bool same_grid(const TimeGrid& a, const TimeGrid& b) noexcept {
  if (a.n != b.n) return false;
  const double scale = std::max(a.dt, b.dt);
  return std::abs(a.dt - b.dt) <= kGridTolerance * scale &&
         std::abs(a.t0 - b.t0) <= kGridTolerance * scale;
}

long long exact_multiple(double x, double step, Errc code,
                         std::string_view what) {
  const double ratio = x / step;
  const double rounded = std::round(ratio);
  if (!std::isfinite(ratio) || std::abs(ratio - rounded) > kGridTolerance) {
    std::ostringstream msg;
    msg << what << ": " << std::setprecision(17) << x
        << " is not an integer multiple of " << step;
    throw Error(code, msg.str());
  }
  return static_cast<long long>(rounded);
}

Waveform::Waveform(double t0, double dt, std::vector<cplx> samples)
    : t0_(t0), dt_(dt), samples_(std::move(samples)) {
  if (samples_.size() < 2) {
    throw Error(Errc::invalid_params, "waveform needs at least 2 samples");
  }
  if (!(dt_ > 0.0) || !std::isfinite(dt_) || !std::isfinite(t0_)) {
    throw Error(Errc::invalid_params, "waveform needs finite t0 and dt > 0");
  }
  for (const cplx& z : samples_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(Errc::invalid_params, "waveform sample is not finite");
    }
  }
}

GaussianParams GaussianParams::unit(cplx a, double center, double freq) {
  if (!(a.real() > 0.0)) {
    throw Error(Errc::invalid_params, "Gaussian needs Re(a) > 0");
  }
  // N exp(-a (t - center)^2) exp(i 2 pi freq t), with N^4 = 2 Re(a) / pi.
  const double norm = std::pow(2.0 * a.real() / kPi, 0.25);
  return {a, 2.0 * a * center + cplx(0.0, 2.0 * kPi * freq),
          -a * center * center + std::log(norm)};
}

double lp_norm(const Waveform& w, double p) {
  if (!(p > 0.0)) throw Error(Errc::domain, "lp_norm needs p > 0");
  const auto s = w.samples();
  if (std::isinf(p)) {
    double m = 0.0;
    for (const cplx& z : s) m = std::max(m, std::abs(z));
    return m;
  }
  if (p == 2.0) return std::sqrt(kernels::active().sum_abs2(s) * w.dt());
  // Scale by the peak so large p neither overflows nor underflows.
  double peak = 0.0;
  for (const cplx& z : s) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return 0.0;
  double acc = 0.0;
  for (const cplx& z : s) acc += std::pow(std::abs(z) / peak, p);
  return peak * std::pow(acc * w.dt(), 1.0 / p);
}

Waveform normalize_l2(const Waveform& w) {
  const double norm = lp_norm(w, 2.0);
  if (!(norm > 0.0)) {
    throw Error(Errc::degenerate_input, "cannot normalize the zero waveform");
  }
  std::vector<cplx> out(w.samples().begin(), w.samples().end());
  for (cplx& z : out) z /= norm;
  return Waveform(w.grid(), std::move(out));
}

Waveform make_gaussian(const GaussianParams& params, const TimeGrid& grid) {
  if (!(params.a.real() > 0.0)) {
    throw Error(Errc::invalid_params, "Gaussian needs Re(a) > 0");
  }
  std::vector<cplx> samples(grid.n);
  for (std::size_t k = 0; k < grid.n; ++k) {
    const double t = grid.at(k);
    samples[k] = std::exp(-params.a * t * t + params.b * t + params.c);
  }
  double peak = 0.0;
  for (const cplx& z : samples) peak = std::max(peak, std::abs(z));
  if (!(peak > 0.0) || !std::isfinite(peak)) {
    throw Error(Errc::invalid_params, "Gaussian samples are not finite");
  }
  if (std::abs(samples.front()) >= 1e-12 * peak ||
      std::abs(samples.back()) >= 1e-12 * peak) {
    throw Error(Errc::grid_too_narrow,
                "Gaussian tails exceed 1e-12 of the peak at the grid edges");
  }
  return Waveform(grid, std::move(samples));
}

Waveform tf_shift(const Waveform& w, PhasePoint x) {
  const long long m =
      exact_multiple(x.delay, w.dt(), Errc::off_grid_delay, "tf_shift delay");
  const auto n = static_cast<long long>(w.size());
  std::vector<cplx> out(w.size());
  for (long long k = 0; k < n; ++k) {
    const long long src = k - m;
    if (src < 0 || src >= n) continue;
    const double t = w.time(static_cast<std::size_t>(k));
    out[k] = std::polar(1.0, 2.0 * kPi * x.doppler * t) *
             w[static_cast<std::size_t>(src)];
  }
  return Waveform(w.grid(), std::move(out));
}

cplx inner_product(const Waveform& g, const Waveform& h) {
  if (!same_grid(g.grid(), h.grid())) {
    throw Error(Errc::incompatible_grids,
                "inner_product needs waveforms on identical grids");
  }
  return kernels::active().conj_dot(g.samples(), h.samples()) * g.dt();
}

Waveform conjugate(const Waveform& w) {
  std::vector<cplx> out(w.size());
  std::transform(w.samples().begin(), w.samples().end(), out.begin(),
                 [](const cplx& z) { return std::conj(z); });
  return Waveform(w.grid(), std::move(out));
}

Waveform time_reverse(const Waveform& w) {
  // -t_k = t0 + (offset - k) dt with offset = -2 t0 / dt.
  const long long offset = exact_multiple(-2.0 * w.t0(), w.dt(),
                                          Errc::incompatible_grids,
                                          "time_reverse grid origin");
  const auto n = static_cast<long long>(w.size());
  std::vector<cplx> out(w.size());
  for (long long k = 0; k < n; ++k) {
    const long long src = offset - k;
    if (src >= 0 && src < n) out[k] = w[static_cast<std::size_t>(src)];
  }
  return Waveform(w.grid(), std::move(out));
}

Waveform linear_combination(std::span<const cplx> coeffs,
                            std::span<const Waveform> parts) {
  if (coeffs.size() != parts.size() || parts.empty()) {
    throw Error(Errc::invalid_params,
                "linear_combination needs matching, non-empty inputs");
  }
  std::vector<cplx> out(parts.front().size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!same_grid(parts[i].grid(), parts.front().grid())) {
      throw Error(Errc::incompatible_grids,
                  "linear_combination needs waveforms on one grid");
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] += coeffs[i] * parts[i][k];
    }
  }
  return Waveform(parts.front().grid(), std::move(out));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view field, std::size_t line) {
  field = trim(field);
  double v = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(Errc::parse, "line " + std::to_string(line) +
                                 ": cannot parse number '" +
                                 std::string(field) + "'");
  }
  return v;
}

}  // namespace

Waveform read_waveform_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "t,re,im") {
    throw Error(Errc::parse, "waveform CSV must start with header 't,re,im'");
  }
  std::vector<double> times;
  std::vector<cplx> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto c1 = row.find(',');
    const auto c2 = row.find(',', c1 == row.npos ? c1 : c1 + 1);
    if (c1 == row.npos || c2 == row.npos ||
        row.find(',', c2 + 1) != row.npos) {
      throw Error(Errc::parse,
                  "line " + std::to_string(line_no) + ": expected 3 fields");
    }
    times.push_back(parse_double(row.substr(0, c1), line_no));
    samples.emplace_back(parse_double(row.substr(c1 + 1, c2 - c1 - 1), line_no),
                         parse_double(row.substr(c2 + 1), line_no));
  }
  if (times.size() < 2) {
    throw Error(Errc::parse, "waveform CSV needs at least 2 samples");
  }
  const double t0 = times.front();
  const double dt = (times.back() - t0) / static_cast<double>(times.size() - 1);
  if (!(dt > 0.0)) throw Error(Errc::parse, "waveform times must increase");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (std::abs(times[k] - (t0 + static_cast<double>(k) * dt)) >
        kGridTolerance * dt) {
      throw Error(Errc::parse, "waveform CSV time axis is not uniform (row " +
                                   std::to_string(k + 2) + ")");
    }
  }
  return Waveform(t0, dt, std::move(samples));
}

void write_waveform_csv(std::ostream& out, const Waveform& w) {
  out << "t,re,im\n" << std::setprecision(17);
  for (std::size_t k = 0; k < w.size(); ++k) {
    out << w.time(k) << ',' << w[k].real() << ',' << w[k].imag() << '\n';
  }
}

}  // namespace ambibound
