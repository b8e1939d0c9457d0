#include "doctest.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <sstream>

#include "ambibound/phase_plane.hpp"
#include "ambibound/verify.hpp"
#include "support.hpp"

using namespace ambibound;
using boost::math::quadrature::gauss_kronrod;

namespace {

cplx integrate(auto f) {
  auto part = [&](auto pick) {
    return gauss_kronrod<double, 61>::integrate([&](double t) { return pick(f(t)); },
                                                -9.0, 9.0, 15, 1e-14);
  };
  return {part([](cplx z) { return z.real(); }), part([](cplx z) { return z.imag(); })};
}

double max_diff(const AmbiguitySurface& a, const AmbiguitySurface& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    d = std::max(d, std::abs(a.values[i] - b.values[i]));
  }
  return d;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::io;
}

const Grid2D kSmall{Axis::points(-0.5, 0.5, 1.0 / 32), {-0.7, 1.0 / 16, 32}};

}  // namespace

TEST_SUITE("phase_plane") {

TEST_CASE("FFT path matches the direct sum") {
  auto rng = scenario_rng(1, "fft-direct");
  for (int i = 0; i < 3; ++i) {
    const Waveform g = random_waveform(rng, kDefaultTimeGrid);
    const Waveform h = random_waveform(rng, kDefaultTimeGrid);
    CHECK(max_diff(cross_ambiguity(g, h, kSmall), cross_ambiguity_direct(g, h, kSmall)) < 1e-10);
  }
}

TEST_CASE("FFT shorter than the waveform folds correctly") {
  // dnu = 1/4 gives N = 256 < 1024 samples.
  auto rng = scenario_rng(2, "fold");
  const Waveform g = random_waveform(rng, kDefaultTimeGrid);
  const Waveform h = random_waveform(rng, kDefaultTimeGrid);
  const Grid2D grid{Axis::points(-1, 1, 1.0 / 8), {-2.0, 0.25, 16}};
  CHECK(max_diff(cross_ambiguity(g, h, grid), cross_ambiguity_direct(g, h, grid)) < 1e-10);
}

TEST_CASE("surfaces against quadrature of the continuous definitions") {
  auto rng = testing::rng(21);
  const auto m1 = testing::random_mixture(rng);
  const auto m2 = testing::random_mixture(rng);
  const Waveform g = m1.sample(kDefaultTimeGrid);
  const Waveform h = m2.sample(kDefaultTimeGrid);
  const AmbiguitySurface a = cross_ambiguity(g, h, kSmall);
  const AmbiguitySurface at = woodward_ambiguity(g, h, kSmall);
  const AmbiguitySurface w = wigner(g, h, kSmall);
  const std::size_t picks[][2] = {{0, 0}, {5, 17}, {16, 3}, {31, 31}, {20, 9}};
  for (const auto& [j, l] : picks) {
    const double tau = kSmall.tau.at(j), nu = kSmall.nu.at(l);
    CAPTURE(tau);
    CAPTURE(nu);
    const cplx want_a = integrate([&](double t) {
      return std::conj(m1(t)) * std::polar(1.0, 2 * kPi * nu * t) * m2(t - tau);
    });
    const cplx want_at = integrate([&](double t) {
      return m1(t - tau / 2) * std::conj(m2(t + tau / 2)) * std::polar(1.0, -2 * kPi * nu * t);
    });
    const cplx want_w = integrate([&](double t) {
      return m1(tau + t / 2) * std::conj(m2(tau - t / 2)) * std::polar(1.0, -2 * kPi * nu * t);
    });
    CHECK(std::abs(a.at(j, l) - want_a) < 1e-10);
    CHECK(std::abs(at.at(j, l) - want_at) < 1e-10);
    CHECK(std::abs(w.at(j, l) - want_w) < 1e-10);
  }
}

TEST_CASE("matched unit Gaussians give |A| = exp(-pi |x|^2 / 2)") {
  const Waveform g = make_gaussian(GaussianParams::unit({kPi, 0.0}), kDefaultTimeGrid);
  const AmbiguitySurface s = cross_ambiguity(g, g, default_phase_grid());
  double worst = 0.0;
  for (std::size_t j = 0; j < s.grid.tau.count; ++j) {
    for (std::size_t l = 0; l < s.grid.nu.count; ++l) {
      const double x1 = s.grid.tau.at(j), x2 = s.grid.nu.at(l);
      worst = std::max(worst, std::abs(std::abs(s.at(j, l)) - std::exp(-kPi * (x1 * x1 + x2 * x2) / 2)));
    }
  }
  CHECK(worst < 1e-12);
  CHECK(max_abs(s) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Moyal identity on random pairs") {
  auto rng = scenario_rng(4, "moyal-unit");
  for (int i = 0; i < 5; ++i) {
    const Waveform g = random_waveform(rng, kDefaultTimeGrid);
    const Waveform h = random_waveform(rng, kDefaultTimeGrid);
    CHECK(surface_lp_norm(cross_ambiguity(g, h, default_phase_grid()), 2.0) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("phase relation between A and the Woodward form") {
  auto rng = scenario_rng(5, "phase");
  const Waveform g = random_waveform(rng, kDefaultTimeGrid);
  const Waveform h = random_waveform(rng, kDefaultTimeGrid);
  const Grid2D grid{Axis::points(-1, 1, 1.0 / 32), Axis::points(-1, 1, 1.0 / 32)};
  const std::size_t n = grid.tau.count;
  const Grid2D mirrored{{-grid.tau.last(), grid.tau.step, n}, {-grid.nu.last(), grid.nu.step, n}};
  const AmbiguitySurface a = cross_ambiguity(g, h, grid);
  const AmbiguitySurface at = woodward_ambiguity(conjugate(g), conjugate(h), mirrored);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) {
      const cplx rhs = std::polar(1.0, kPi * grid.tau.at(j) * grid.nu.at(l)) * at.at(n - 1 - j, n - 1 - l);
      worst = std::max(worst, std::abs(a.at(j, l) - rhs));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("Wigner distribution is a reflected, scaled Woodward form") {
  auto rng = scenario_rng(6, "wigner");
  const Waveform g = random_waveform(rng, kDefaultTimeGrid);
  const Waveform h = random_waveform(rng, kDefaultTimeGrid);
  const Grid2D grid{Axis::points(-1, 1, 1.0 / 32), Axis::points(-1, 1, 1.0 / 32)};
  const std::size_t n = grid.tau.count;
  const Grid2D scaled{{-2 * grid.tau.last(), 2 * grid.tau.step, n}, {2 * grid.nu.start, 2 * grid.nu.step, n}};
  const AmbiguitySurface w = wigner(g, h, grid);
  const AmbiguitySurface at = woodward_ambiguity(g, time_reverse(h), scaled);
  double reflected = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) {
      reflected = std::max(reflected, std::abs(w.at(j, l) - 2.0 * at.at(n - 1 - j, l)));
    }
  }
  CHECK(reflected < 1e-12);
}

TEST_CASE("auto-Wigner distribution is real") {
  auto rng = scenario_rng(7, "wigner-real");
  const Waveform g = random_waveform(rng, kDefaultTimeGrid);
  const AmbiguitySurface w = wigner(g, g, default_phase_grid());
  CHECK(max_abs_imag(w) < 1e-10);
  CHECK(max_abs(w) > 0.1);
}

TEST_CASE("matched Gaussians against a Gaussian weight") {
  const Waveform g = make_gaussian(GaussianParams::unit({kPi, 0.0}), kDefaultTimeGrid);
  const AmbiguitySurface s = cross_ambiguity(g, g, default_phase_grid());
  for (double alpha : {0.25, 1.0, 2.0}) {
    for (double r : {1.0, 2.0, 3.0}) {
      CHECK(weighted_r_norm(s, WeightSpec::gaussian(alpha), r) ==
            doctest::Approx(2 * alpha / (2 * alpha + r)).epsilon(1e-9));
    }
  }
}

TEST_CASE("grid compatibility is enforced") {
  const Waveform g = make_gaussian(GaussianParams::unit({kPi, 0.0}), kDefaultTimeGrid);
  const Grid2D bad_nu{Axis::points(-1, 1, 1.0 / 32), Axis::points(-1, 1, 0.03)};
  CHECK(code_of([&] { cross_ambiguity(g, g, bad_nu); }) == Errc::incompatible_grids);
  const Grid2D bad_tau{Axis::points(-1, 1, 0.01), Axis::points(-1, 1, 1.0 / 32)};
  CHECK(code_of([&] { cross_ambiguity(g, g, bad_tau); }) == Errc::incompatible_grids);
  // Woodward needs tau / 2 on the sample grid.
  const Grid2D odd_tau{Axis::points(-1, 1, 1.0 / 64), Axis::points(-1, 1, 1.0 / 32)};
  CHECK(code_of([&] { woodward_ambiguity(g, g, odd_tau); }) == Errc::incompatible_grids);
  const Waveform other = make_gaussian(GaussianParams::unit({kPi, 0.0}), {-8.0, 1.0 / 32, 512});
  CHECK(code_of([&] { cross_ambiguity(g, other, default_phase_grid()); }) == Errc::incompatible_grids);
  const AmbiguitySurface s = cross_ambiguity(g, g, kSmall);
  CHECK(code_of([&] { surface_lp_norm(s, 0.0); }) == Errc::domain);
  CHECK(code_of([&] { weighted_r_norm(s, WeightSpec::gaussian(1.0), -1.0); }) == Errc::domain);
}

TEST_CASE("surface CSV layout") {
  const Waveform g = make_gaussian(GaussianParams::unit({kPi, 0.0}), kDefaultTimeGrid);
  const Grid2D grid{Axis::points(0, 0.25, 1.0 / 8), Axis::points(0, 0.25, 1.0 / 8)};
  std::ostringstream out;
  write_surface_csv(out, cross_ambiguity(g, g, grid));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "tau,nu,re,im");
  std::getline(in, line);
  CHECK(line.rfind("0,0,1,", 0) == 0);
  std::getline(in, line);
  CHECK(line.rfind("0,0.125,", 0) == 0);
  int rows = 2;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
}

}
