#pragma once

// Shared helpers for the test binaries: seeded generators, continuous
// Gaussian mixtures for quadrature oracles, and tolerance checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "ambibound/signal.hpp"

namespace testing {

using ambibound::cplx;
using ambibound::kPi;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// sum_i coeff_i exp(-a_i t^2 + b_i t + c_i), kept alongside its samples so
// integrals can be taken against the continuous function.
struct Mixture {
  std::vector<cplx> coeffs;
  std::vector<ambibound::GaussianParams> parts;

  cplx operator()(double t) const {
    cplx s{};
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto& p = parts[i];
      s += coeffs[i] * std::exp(-p.a * t * t + p.b * t + p.c);
    }
    return s;
  }

  ambibound::Waveform sample(const ambibound::TimeGrid& grid) const {
    std::vector<ambibound::Waveform> w;
    for (const auto& p : parts) w.push_back(ambibound::make_gaussian(p, grid));
    return ambibound::linear_combination(coeffs, w);
  }
};

inline Mixture random_mixture(std::mt19937_64& g, int max_parts = 3) {
  Mixture m;
  const int k = std::uniform_int_distribution<int>(1, max_parts)(g);
  for (int i = 0; i < k; ++i) {
    const cplx a{kPi * uniform(g, 0.8, 1.5), kPi * uniform(g, -0.4, 0.4)};
    m.parts.push_back(ambibound::GaussianParams::unit(
        a, uniform(g, -0.5, 0.5), uniform(g, -0.5, 0.5)));
    m.coeffs.push_back(std::polar(uniform(g, 0.3, 1.0), uniform(g, 0.0, 2 * kPi)));
  }
  return m;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace testing
