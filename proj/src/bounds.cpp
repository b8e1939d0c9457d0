#include "ambibound/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace ambibound {

namespace {

constexpr double kE = 2.71828182845904523536;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(Errc::domain, std::string(what) + " must be finite and > 0");
  }
}

double lieb_constant_unchecked(double p, double a, double b) {
  const double q = p / (p - 1.0);
  // Hausdorff-Young in the Doppler variable contributes c_q^p; the sharp
  // Young inequality for |g|^q * |gamma|^q in L^{p/q} contributes
  // c_{a/q} c_{b/q} c_{(p/q)'}, and c_{s'} = 1 / c_s.
  const double young = beckner_constant(a / q) * beckner_constant(b / q) /
                       beckner_constant(p / q);
  return std::pow(beckner_constant(q), p) * std::pow(young, p / q);
}

// Guards the constant against convention drift: H(p, 2, 2) must be 2/p.
bool lieb_self_test() {
  for (double p : {3.0, 4.0, 6.0}) {
    const double h = lieb_constant_unchecked(p, 2.0, 2.0);
    if (std::abs(h - 2.0 / p) > 1e-9 * (2.0 / p)) {
      throw std::logic_error("lieb_constant self-test failed: H(p,2,2) != 2/p");
    }
  }
  return true;
}

// Closed-form f(p) for the Gaussian weight.
double gaussian_f(double r, double alpha, double p) {
  const double frac = (p - 1.0) / p;
  return std::pow(2.0 * alpha / (r * p), 1.0 / p) * std::pow(frac, frac);
}

double gaussian_split(double r) { return (2.0 - r) / 2.0; }

// Golden-section minimization of h on [lo, hi].
template <class F>
double golden_section(F&& h, double lo, double hi, double rel_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = h(x1), f2 = h(x2);
  while (b - a > rel_tol * 0.5 * (a + b)) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = h(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = h(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

// Bisection on the sign of a central difference of h, which resolves the
// stationary point well below the sqrt(eps) limit of value comparisons.
// Returns p unchanged when [lo, hi] does not bracket a sign change.
template <class F>
double refine_stationary(F&& h, double p, double lo, double hi) {
  auto slope = [&](double x) {
    const double step = 1e-5 * x;
    return h(x + step) - h(x - step);
  };
  double a = std::max(lo, p * (1.0 - 1e-4));
  double b = std::min(hi, p * (1.0 + 1e-4));
  if (!(slope(a) < 0.0 && slope(b) > 0.0)) return p;
  for (int i = 0; i < 100 && b - a > 1e-13 * b; ++i) {
    const double m = 0.5 * (a + b);
    (slope(m) > 0.0 ? b : a) = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

double beckner_constant(double s) {
  if (!(s >= 1.0)) throw Error(Errc::domain, "beckner_constant needs s >= 1");
  if (s == 1.0 || std::isinf(s)) return 1.0;
  const double sc = s / (s - 1.0);
  return std::pow(s, 1.0 / (2.0 * s)) * std::pow(sc, -1.0 / (2.0 * sc));
}

double lieb_constant(double p, double a, double b) {
  static const bool checked = lieb_self_test();
  (void)checked;
  if (!(p > 2.0) || !std::isfinite(p)) {
    throw Error(Errc::domain, "lieb_constant needs 2 < p < inf");
  }
  const double q = p / (p - 1.0);
  const double tol = 1e-12;
  if (a < q * (1.0 - tol) || a > p * (1.0 + tol) || b < q * (1.0 - tol) ||
      b > p * (1.0 + tol)) {
    throw Error(Errc::domain, "lieb_constant needs p/(p-1) <= a, b <= p");
  }
  if (std::abs(1.0 / a + 1.0 / b - 1.0) > tol) {
    throw Error(Errc::domain, "lieb_constant needs 1/a + 1/b = 1");
  }
  return lieb_constant_unchecked(p, std::clamp(a, q, p), std::clamp(b, q, p));
}

LiebCheck lieb_bound_check(const Waveform& g, const Waveform& gamma, double p,
                           double a, double b, const Grid2D& grid) {
  const double h = lieb_constant(p, a, b);
  const AmbiguitySurface s = cross_ambiguity(g, gamma, grid);
  return {std::pow(surface_lp_norm(s, p), p),
          h * std::pow(lp_norm(g, a), p) * std::pow(lp_norm(gamma, b), p)};
}

double p_floor(double r) {
  require_positive(r, "r");
  return std::max(1.0, 2.0 / r);
}

double main_bound(double r, double p, const WeightSpec& c) {
  const double floor = p_floor(r);
  if (!(p >= floor * (1.0 - 1e-12)) || std::isnan(p)) {
    throw Error(Errc::domain, "main_bound needs p >= max(1, 2/r)");
  }
  if (std::isinf(p)) return weight_lq_norm(c, 1.0);
  const double q = p <= 1.0 ? kInf : p / (p - 1.0);
  return std::pow(2.0 / (r * p), 1.0 / p) * weight_lq_norm(c, q);
}

std::string_view to_string(Branch b) noexcept {
  return b == Branch::interior ? "interior" : "boundary";
}

BranchValues gaussian_branches(double r, double alpha) {
  require_positive(r, "r");
  if (!(alpha >= 0.0)) throw Error(Errc::domain, "alpha must be >= 0");
  return {2.0 * alpha / (2.0 * alpha + r), gaussian_f(r, alpha, p_floor(r))};
}

BranchValues indicator_branches(double r, double area_u) {
  require_positive(r, "r");
  require_positive(area_u, "|U|");
  const double r_star = std::max(r, 2.0);
  return {std::exp(-r * area_u / (2.0 * kE)),
          std::pow(2.0 / (r_star * area_u), r / r_star)};
}

BoundReport best_bound_gaussian(double r, double alpha) {
  require_positive(r, "r");
  require_positive(alpha, "alpha");
  const BranchValues v = gaussian_branches(r, alpha);
  BoundReport rep;
  rep.r = r;
  rep.weight = describe(WeightSpec::gaussian(alpha));
  rep.feasible_interior = alpha >= gaussian_split(r);
  if (rep.feasible_interior) {
    rep.bound_value = v.interior;
    rep.p_opt = 2.0 * alpha / r + 1.0;
    rep.branch = Branch::interior;
    rep.tight = true;
  } else {
    rep.bound_value = v.boundary;
    rep.p_opt = 2.0 / r;
    rep.branch = Branch::boundary;
    rep.tight = false;
  }
  return rep;
}

BoundReport best_bound_indicator(double r, double area_u) {
  require_positive(r, "r");
  require_positive(area_u, "|U|");
  const double r_star = std::max(r, 2.0);
  const BranchValues v = indicator_branches(r, area_u);
  BoundReport rep;
  rep.r = r;
  rep.weight = "{\"type\":\"indicator\",\"area\":" +
               std::to_string(area_u) + "}";
  rep.feasible_interior = area_u <= 2.0 * kE / r_star;
  rep.tight = false;
  if (rep.feasible_interior) {
    rep.bound_value = v.interior;
    rep.p_opt = 2.0 * kE / (r * area_u);
    rep.branch = Branch::interior;
  } else {
    rep.bound_value = v.boundary;
    rep.p_opt = r_star / r;
    rep.branch = Branch::boundary;
  }
  return rep;
}

BoundReport best_bound_closed(double r, const WeightSpec& c) {
  if (const auto* w = c.as<GaussianWeight>()) {
    return best_bound_gaussian(r, w->alpha);
  }
  if (const auto* w = c.as<IndicatorWeight>()) {
    BoundReport rep = best_bound_indicator(r, w->area);
    rep.weight = describe(c);
    return rep;
  }
  throw Error(Errc::unsupported, "no closed-form bound for sampled weights");
}

BoundReport bound_at_p(double r, double p, const WeightSpec& c) {
  BoundReport rep;
  rep.r = r;
  rep.p_opt = p;
  rep.bound_value = main_bound(r, p, c);
  rep.weight = describe(c);
  const double floor = p_floor(r);
  rep.branch = std::abs(p - floor) <= 1e-12 * floor ? Branch::boundary
                                                    : Branch::interior;
  rep.feasible_interior = rep.branch == Branch::interior;
  if (const auto* w = c.as<GaussianWeight>()) {
    const double p_min = 2.0 * w->alpha / r + 1.0;
    rep.tight = w->alpha >= gaussian_split(r) && p > 1.0 &&
                std::abs(p - p_min) <= 1e-9 * p_min;
  }
  return rep;
}

BoundReport best_bound_numeric(double r, const WeightSpec& c, double p_max) {
  const double floor = p_floor(r);
  if (!(p_max > floor) || !std::isfinite(p_max)) {
    throw Error(Errc::domain, "best_bound_numeric needs p_max > max(1, 2/r)");
  }
  auto log_f = [&](double p) {
    const double v = main_bound(r, std::max(p, floor), c);
    if (!std::isfinite(v) || !(v > 0.0)) {
      if (v == 0.0) return -kInf;
      throw Error(Errc::weight_norm_divergence,
                  "weight norm is not finite at p = " + std::to_string(p));
    }
    return std::log(v);
  };

  // Coarse log-spaced scan locates the basin (possibly at the floor).
  constexpr int kScan = 256;
  const double log_lo = std::log(floor), log_hi = std::log(p_max);
  std::array<double, kScan + 1> ps{};
  int best = 0;
  double best_val = kInf;
  for (int i = 0; i <= kScan; ++i) {
    ps[i] = i == kScan ? p_max
                       : std::exp(log_lo + (log_hi - log_lo) * i / kScan);
    if (i == 0) ps[i] = floor;
    const double v = log_f(ps[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = ps[std::max(best - 1, 0)];
  const double hi = ps[std::min(best + 1, kScan)];
  double p = golden_section(log_f, lo, hi, 1e-10);
  if (log_f(floor) <= log_f(p)) {
    p = floor;
  } else {
    p = refine_stationary(log_f, p, floor * (1.0 + 1e-5), p_max / (1.0 + 1e-5));
  }

  BoundReport rep;
  rep.r = r;
  rep.weight = describe(c);
  rep.branch = std::abs(p - floor) <= 1e-8 * floor ? Branch::boundary
                                                   : Branch::interior;
  if (rep.branch == Branch::boundary) p = floor;
  rep.p_opt = p;
  rep.bound_value = main_bound(r, p, c);
  rep.feasible_interior = rep.branch == Branch::interior;
  if (const auto* w = c.as<GaussianWeight>()) {
    rep.tight = w->alpha >= gaussian_split(r);
  }
  return rep;
}

EqualityCertificate equality_certificate(const AmbiguitySurface& s,
                                         const WeightSpec& c, double r,
                                         double p) {
  require_positive(r, "r");
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(Errc::domain, "equality_certificate needs 1 < p < inf");
  }
  constexpr double kThreshold = 1e-12;
  const std::vector<double> weight = rasterize(c, s.grid);
  const double exponent = r * (p - 1.0);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < weight.size(); ++i) {
    const double a = std::abs(s.values[i]);
    if (a > kThreshold && weight[i] > kThreshold) {
      sum += std::log(weight[i]) - exponent * std::log(a);
      ++count;
    }
  }
  if (count == 0) {
    throw Error(Errc::degenerate_certificate,
                "no grid points where both |A| and C exceed 1e-12");
  }
  const double lambda = std::exp(sum / static_cast<double>(count));
  const double c_max = *std::max_element(weight.begin(), weight.end());
  double residual = 0.0;
  for (std::size_t i = 0; i < weight.size(); ++i) {
    const double a = std::abs(s.values[i]);
    if (a > kThreshold && weight[i] > kThreshold) {
      residual = std::max(
          residual, std::abs(weight[i] - lambda * std::pow(a, exponent)));
    }
  }
  return {lambda, residual / c_max, p, r};
}

double renyi_entropy(const AmbiguitySurface& s, const WeightSpec& c,
                     double r) {
  require_positive(r, "r");
  if (r == 1.0) {
    throw Error(Errc::unsupported_order, "Renyi entropy of order 1");
  }
  const double v = weighted_r_norm(s, c, r);
  if (!(v > 0.0)) {
    throw Error(Errc::degenerate_input, "weighted norm is zero");
  }
  return std::log(v) / (1.0 - r);
}

}  // namespace ambibound
