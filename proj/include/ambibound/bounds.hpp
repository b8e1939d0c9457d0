#pragma once

// Upper bounds on weighted norms || |A|^r C ||_1 of cross-ambiguity
// functions between unit-norm waveforms.
//
// For every p >= max(1, 2/r) Hoelder's inequality followed by Lieb's sharp
// ambiguity bound gives
//
//   || |A|^r C ||_1 <= (2 / (r p))^(1/p) * ||C||_{p/(p-1)}
//
// The best bound minimizes the right-hand side over p. Gaussian and
// indicator weights admit closed-form minimizers; anything else goes
// through a bracketed golden-section search.

#include <string>

#include "ambibound/phase_plane.hpp"
#include "ambibound/weights.hpp"

namespace ambibound {

// Babenko-Beckner constant s^(1/(2s)) * s'^(-1/(2s')), s' = s/(s-1); equals
// 1 at s = 1.
double beckner_constant(double s);

// Lieb's constant H(p, a, b) for ||A||_p^p <= H ||g||_a^p ||gamma||_b^p.
// Needs 2 < p < inf, q = p/(p-1) <= a, b <= p and 1/a + 1/b = 1.
// H(p, 2, 2) = 2/p.
double lieb_constant(double p, double a, double b);

struct LiebCheck {
  double lhs;  // ||A||_p^p measured on the grid
  double rhs;  // H(p,a,b) ||g||_a^p ||gamma||_b^p
};

LiebCheck lieb_bound_check(const Waveform& g, const Waveform& gamma, double p,
                           double a, double b, const Grid2D& grid);

// Smallest admissible p, max(1, 2/r).
double p_floor(double r);

// (2/(r p))^(1/p) ||C||_{p/(p-1)}; p = 1 uses ||C||_inf.
double main_bound(double r, double p, const WeightSpec& c);

enum class Branch { interior, boundary };

std::string_view to_string(Branch b) noexcept;

struct BoundReport {
  double bound_value = 0.0;
  double p_opt = 0.0;
  Branch branch = Branch::interior;
  bool feasible_interior = false;  // unconstrained minimizer is admissible
  bool tight = false;              // equality attainable (matched Gaussians)
  double r = 0.0;
  std::string weight;  // describe(weight)
};

// Both branch expressions of the Gaussian-weight optimum:
//   interior: 2 alpha / (2 alpha + r)              at p = 2 alpha / r + 1
//   boundary: f(p_floor); alpha^(r/2) (1 - r/2)^(1 - r/2) for r <= 2
struct BranchValues {
  double interior;
  double boundary;
};
BranchValues gaussian_branches(double r, double alpha);

// Both branch expressions of the indicator-weight optimum, r* = max(r, 2):
//   interior: exp(-r |U| / (2e))                   at p = 2e / (r |U|)
//   boundary: (2 / (r* |U|))^(r / r*)              at p = r* / r
BranchValues indicator_branches(double r, double area_u);

BoundReport best_bound_gaussian(double r, double alpha);
BoundReport best_bound_indicator(double r, double area_u);

// Dispatches on the weight variant; Errc::unsupported for sampled weights.
BoundReport best_bound_closed(double r, const WeightSpec& c);

// Bound at a fixed p (no optimization).
BoundReport bound_at_p(double r, double p, const WeightSpec& c);

// Minimizes main_bound over [p_floor, p_max] by a coarse log-grid scan
// followed by golden-section refinement to 1e-10 relative in p.
BoundReport best_bound_numeric(double r, const WeightSpec& c,
                               double p_max = 1024.0);

// Hoelder equality condition C(x) = lambda |A(x)|^(r(p-1)).
struct EqualityCertificate {
  double lambda;
  double max_relative_residual;
  double p;
  double r;
};

// lambda fitted in the log domain over points where |A| and C exceed 1e-12;
// residual max |C - lambda |A|^(r(p-1))| / max C.
EqualityCertificate equality_certificate(const AmbiguitySurface& s,
                                         const WeightSpec& c, double r,
                                         double p);

// H(r) = log(sum |A|^r C dx) / (1 - r), natural log.
double renyi_entropy(const AmbiguitySurface& s, const WeightSpec& c, double r);

}  // namespace ambibound
