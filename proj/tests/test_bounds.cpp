#include "doctest.h"

#include <map>

#include "ambibound/bounds.hpp"
#include "ambibound/verify.hpp"
#include "support.hpp"

using namespace ambibound;

namespace {

const double kE = std::exp(1.0);

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::io;
}

Waveform matched_gaussian() {
  return make_gaussian(GaussianParams::unit({kPi, 0.0}), kDefaultTimeGrid);
}

// Constrained minimum of main_bound over a dense log-spaced p grid.
double brute_force_min(double r, const WeightSpec& c) {
  const double lo = p_floor(r);
  double best = main_bound(r, lo, c);
  for (int i = 1; i <= 20000; ++i) {
    const double p = lo * std::pow(256.0, i / 20000.0);
    best = std::min(best, main_bound(r, p, c));
  }
  return best;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("Lieb constant reduces to 2/p at a = b = 2") {
  for (double p : {2.5, 3.0, 4.0, 6.0, 10.0}) {
    CHECK(testing::rel_err(lieb_constant(p, 2, 2), 2 / p) < 1e-12);
  }
  CHECK(lieb_constant(4, 2, 2) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("Lieb constant domain") {
  CHECK(code_of([] { lieb_constant(2.0, 2, 2); }) == Errc::domain);
  CHECK(code_of([] { lieb_constant(kInf, 2, 2); }) == Errc::domain);
  CHECK(code_of([] { lieb_constant(3.0, 1.2, 6.0); }) == Errc::domain);  // a < q
  CHECK(code_of([] { lieb_constant(3.0, 2.0, 2.5); }) == Errc::domain);  // 1/a + 1/b != 1
  auto g = testing::rng(31);
  for (int i = 0; i < 50; ++i) {
    const double p = testing::uniform(g, 2.01, 12);
    const double q = p / (p - 1);
    // 1/a in [1 - 1/q, 1/q] keeps both a and b inside [q, p]
    const double inv_a = testing::uniform(g, 1 - 1 / q, 1 / q);
    const double h = lieb_constant(p, 1 / inv_a, 1 / (1 - inv_a));
    CHECK(h > 0);
    CHECK(h <= 1.0 + 1e-12);
  }
}

TEST_CASE("Beckner constant") {
  CHECK(beckner_constant(1.0) == 1.0);
  CHECK(beckner_constant(2.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double s : {1.2, 1.5, 3.0, 7.0}) {
    CHECK(beckner_constant(s) * beckner_constant(s / (s - 1)) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(code_of([] { beckner_constant(0.5); }) == Errc::domain);
}

TEST_CASE("Lieb inequality on random pairs") {
  auto rng = scenario_rng(2, "lieb-random");
  const Grid2D grid = default_phase_grid();
  for (int i = 0; i < 10; ++i) {
    const Waveform g = random_waveform(rng, kDefaultTimeGrid, 2, 4);
    const Waveform h = random_waveform(rng, kDefaultTimeGrid, 2, 4);
    const LiebCheck c4 = lieb_bound_check(g, h, 4, 2, 2, grid);
    CHECK(c4.rhs == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c4.lhs < c4.rhs);
    const LiebCheck c3 = lieb_bound_check(g, h, 3, 1.6, 1.6 / 0.6, grid);
    CHECK(c3.lhs <= c3.rhs * (1 + 1e-9));
  }
  const Waveform g = matched_gaussian();
  const LiebCheck eq = lieb_bound_check(g, g, 4, 2, 2, grid);
  CHECK(eq.lhs == doctest::Approx(0.5).epsilon(1e-9));
  const Waveform far = make_gaussian(GaussianParams::unit({kPi, 0.0}, 5.0), kDefaultTimeGrid);
  CHECK(lieb_bound_check(g, far, 4, 2, 2, grid).lhs < 0.4);
}

TEST_CASE("main bound values") {
  CHECK(main_bound(2, 2, WeightSpec::gaussian(1)) == doctest::Approx(0.5).epsilon(1e-14));
  const WeightSpec u1 = WeightSpec::indicator(Rect{0, 1, 0, 1});
  CHECK(main_bound(2, kE, u1) == doctest::Approx(std::pow(1 / kE, 1 / kE)).epsilon(1e-14));
  CHECK(main_bound(2, 1, WeightSpec::gaussian(3)) == 3.0);
  CHECK(code_of([] { main_bound(1, 1.5, WeightSpec::gaussian(1)); }) == Errc::domain);
  CHECK(code_of([] { main_bound(0, 1.5, WeightSpec::gaussian(1)); }) == Errc::domain);
  CHECK(p_floor(0.5) == 4.0);
  CHECK(p_floor(3.0) == 1.0);
}

TEST_CASE("Gaussian closed form") {
  const BoundReport b = best_bound_gaussian(2, 1);
  CHECK(b.bound_value == 0.5);
  CHECK(b.p_opt == 2.0);
  CHECK(b.tight);
  CHECK(b.branch == Branch::interior);
  const BoundReport lo = best_bound_gaussian(1, 0.25);
  CHECK(lo.bound_value == doctest::Approx(std::sqrt(0.125)).epsilon(1e-15));
  CHECK(lo.branch == Branch::boundary);
  CHECK_FALSE(lo.tight);
  CHECK(lo.p_opt == 2.0);
  for (double alpha : {1e-3, 0.1, 5.0}) CHECK(best_bound_gaussian(2, alpha).branch == Branch::interior);
  CHECK(code_of([] { best_bound_gaussian(1, 0); }) == Errc::domain);
  CHECK(code_of([] { best_bound_gaussian(-1, 1); }) == Errc::domain);
}

TEST_CASE("indicator closed form") {
  CHECK(best_bound_indicator(2, 4).bound_value == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(best_bound_indicator(2, 0.1).bound_value == doctest::Approx(std::exp(-0.1 / kE)).epsilon(1e-15));
  const BranchValues at_e = indicator_branches(2, kE);
  CHECK(at_e.interior == doctest::Approx(1 / kE).epsilon(1e-15));
  CHECK(at_e.boundary == doctest::Approx(1 / kE).epsilon(1e-15));
  for (double r : {0.5, 1.0, 3.0}) {
    for (double u : {0.2, 1.0, 3.0, 9.0}) CHECK_FALSE(best_bound_indicator(r, u).tight);
  }
  CHECK(code_of([] { best_bound_indicator(1, 0); }) == Errc::domain);
}

TEST_CASE("branch continuity at the split") {
  for (double r : {0.5, 1.0, 1.5, 1.9}) {
    const double split = (2 - r) / 2;
    const BranchValues v = gaussian_branches(r, split);
    CHECK(std::abs(v.interior - split) < 1e-12);
    CHECK(std::abs(v.boundary - split) < 1e-12);
    // boundary closed form for r <= 2
    for (double alpha : {0.05, 0.2}) {
      CHECK(gaussian_branches(r, alpha).boundary ==
            doctest::Approx(std::pow(alpha, r / 2) * std::pow(1 - r / 2, 1 - r / 2)).epsilon(1e-14));
    }
  }
  for (double r : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    const BranchValues v = indicator_branches(r, 2 * kE / std::max(r, 2.0));
    CHECK(std::abs(v.interior - v.boundary) < 1e-12);
  }
}

TEST_CASE("interior branch never exceeds the boundary branch") {
  auto g = testing::rng(41);
  for (int i = 0; i < 500; ++i) {
    const double r = testing::uniform(g, 0.2, 4);
    const double alpha = testing::uniform(g, 1e-3, 4);
    const BranchValues gv = gaussian_branches(r, alpha);
    CHECK(gv.interior <= gv.boundary + 1e-15);
    const BranchValues iv = indicator_branches(r, testing::uniform(g, 0.05, 10));
    CHECK(iv.interior <= iv.boundary + 1e-15);
  }
}

TEST_CASE("closed forms are the constrained minimum over p") {
  for (double r : {0.5, 1.0, 1.9, 2.0, 3.0}) {
    for (double alpha : {0.05, 0.3, 1.0, 2.5}) {
      const double best = best_bound_gaussian(r, alpha).bound_value;
      CHECK(brute_force_min(r, WeightSpec::gaussian(alpha)) == doctest::Approx(best).epsilon(1e-7));
    }
    for (double u : {0.25, 1.0, 2.0, 4.0, 8.0}) {
      const WeightSpec c = WeightSpec::indicator(Rect{0, u, 0, 1});
      CHECK(brute_force_min(r, c) == doctest::Approx(best_bound_indicator(r, u).bound_value).epsilon(1e-7));
    }
  }
}

TEST_CASE("numeric optimizer agrees with the closed forms") {
  for (double r : {0.5, 1.0, 2.0, 3.0}) {
    for (double alpha : {0.1, 0.5, 1.0, 2.0}) {
      const BoundReport c = best_bound_gaussian(r, alpha);
      const BoundReport n = best_bound_numeric(r, WeightSpec::gaussian(alpha));
      CAPTURE(r);
      CAPTURE(alpha);
      CHECK(std::abs(n.bound_value - c.bound_value) < 1e-9);
      CHECK(std::abs(n.p_opt - c.p_opt) < 1e-6);
      // at alpha = (2 - r) / 2 the minimizer is the floor itself; either label fits
      if (std::abs(c.p_opt - p_floor(r)) > 1e-6) CHECK(n.branch == c.branch);
    }
    for (double u : {0.5, 1.0, 2.0, 5.0}) {
      const BoundReport c = best_bound_indicator(r, u);
      const BoundReport n = best_bound_numeric(r, WeightSpec::indicator(Rect{0, u, 0, 1}));
      CAPTURE(r);
      CAPTURE(u);
      CHECK(std::abs(n.bound_value - c.bound_value) < 1e-9);
      CHECK(std::abs(n.p_opt - c.p_opt) < 1e-6);
    }
  }
  CHECK(code_of([] { best_bound_numeric(1, WeightSpec::gaussian(1), 1.5); }) == Errc::domain);
}

TEST_CASE("numeric optimizer on a sampled Gaussian") {
  const Grid2D grid = default_phase_grid();
  const WeightSpec c = WeightSpec::sampled(grid, rasterize(WeightSpec::gaussian(1), grid));
  const BoundReport n = best_bound_numeric(2, c);
  CHECK(std::abs(n.bound_value - 0.5) < 1e-3);
  CHECK(code_of([&] { best_bound_closed(2, c); }) == Errc::unsupported);
}

TEST_CASE("first-order condition at the Gaussian optimum") {
  for (double r : {1.0, 2.0, 3.0}) {
    for (double alpha : {0.6, 1.0, 2.0}) {
      const WeightSpec c = WeightSpec::gaussian(alpha);
      const double p = best_bound_gaussian(r, alpha).p_opt;
      const double h = 1e-5;
      const double d = (main_bound(r, p + h, c) - main_bound(r, p - h, c)) / (2 * h);
      CHECK(std::abs(d) < 1e-8);
      // derivative formula away from the optimum
      const double p2 = p * 1.7;
      const double d2 = (main_bound(r, p2 + h, c) - main_bound(r, p2 - h, c)) / (2 * h);
      const double f2 = main_bound(r, p2, c);
      CHECK(d2 == doctest::Approx(f2 / (p2 * p2) * std::log(r * (p2 - 1) / (2 * alpha))).epsilon(1e-6));
    }
  }
}

TEST_CASE("bound at a fixed p") {
  const BoundReport at1 = bound_at_p(2, 1, WeightSpec::gaussian(1));
  CHECK(at1.bound_value == 1.0);
  CHECK_FALSE(at1.tight);
  CHECK(bound_at_p(2, 2, WeightSpec::gaussian(1)).tight);
  CHECK_FALSE(bound_at_p(2, 2.5, WeightSpec::gaussian(1)).tight);
  CHECK_FALSE(bound_at_p(1, 2, WeightSpec::gaussian(0.25)).tight);
  CHECK(code_of([] { bound_at_p(0.5, 3, WeightSpec::gaussian(1)); }) == Errc::domain);
}

TEST_CASE("dominance over random pairs") {
  auto rng = scenario_rng(0, "dominance");
  const Grid2D points = default_phase_grid();
  const Grid2D cells = default_cell_grid();
  const std::vector<WeightSpec> gaussians = {WeightSpec::gaussian(0.25), WeightSpec::gaussian(1),
                                             WeightSpec::gaussian(3)};
  const std::vector<WeightSpec> rects = {WeightSpec::indicator(Rect{-0.5, 0.5, -0.25, 0.25}),
                                         WeightSpec::indicator(Rect{-1.5, 0.25, -0.5, 1.0}),
                                         WeightSpec::indicator(Rect{-1, 1, -1, 1})};
  const double rs[] = {1.0, 1.5, 2.0, 3.0};
  std::map<std::string, double> bounds;
  for (double r : rs) {
    for (const auto* set : {&gaussians, &rects}) {
      for (const WeightSpec& c : *set) bounds[describe(c) + std::to_string(r)] = best_bound_closed(r, c).bound_value;
    }
  }
  double min_indicator_margin = kInf;
  for (int i = 0; i < 200; ++i) {
    const Waveform g = random_waveform(rng, kDefaultTimeGrid);
    const Waveform h = random_waveform(rng, kDefaultTimeGrid);
    const AmbiguitySurface sp = cross_ambiguity(g, h, points);
    const AmbiguitySurface sc = cross_ambiguity(g, h, cells);
    for (double r : rs) {
      for (const WeightSpec& c : gaussians) {
        CHECK(weighted_r_norm(sp, c, r) <= bounds[describe(c) + std::to_string(r)] + 1e-6);
      }
      for (const WeightSpec& c : rects) {
        const double margin = bounds[describe(c) + std::to_string(r)] - weighted_r_norm(sc, c, r);
        min_indicator_margin = std::min(min_indicator_margin, margin);
      }
    }
  }
  CHECK(min_indicator_margin > 0.0);
}

TEST_CASE("per-p dominance") {
  auto rng = scenario_rng(0, "per-p");
  const Grid2D grid = default_phase_grid();
  for (int i = 0; i < 10; ++i) {
    const Waveform g = random_waveform(rng, kDefaultTimeGrid);
    const Waveform h = random_waveform(rng, kDefaultTimeGrid);
    const AmbiguitySurface s = cross_ambiguity(g, h, grid);
    for (double r : {1.0, 2.0, 3.0}) {
      const WeightSpec c = WeightSpec::gaussian(0.7);
      const double v = weighted_r_norm(s, c, r);
      const double lo = p_floor(r);
      for (int k = 0; k <= 40; ++k) {
        const double p = lo * std::pow(64.0 / lo, k / 40.0);
        CHECK(v <= main_bound(r, p, c) + 1e-6);
      }
    }
  }
}

TEST_CASE("matched Gaussians attain the bound") {
  const AmbiguitySurface s = cross_ambiguity(matched_gaussian(), matched_gaussian(), default_phase_grid());
  for (auto [alpha, r] : {std::pair{1.0, 2.0}, {2.0, 2.0}, {1.0, 1.0}, {0.6, 1.0}, {0.5, 3.0}}) {
    const double v = weighted_r_norm(s, WeightSpec::gaussian(alpha), r);
    CHECK(testing::rel_err(v, best_bound_gaussian(r, alpha).bound_value) < 2e-4);
  }
  const double gap = best_bound_gaussian(1, 0.25).bound_value -
                     weighted_r_norm(s, WeightSpec::gaussian(0.25), 1);
  CHECK(gap > 0.019);
}

TEST_CASE("equality certificate") {
  const AmbiguitySurface s = cross_ambiguity(matched_gaussian(), matched_gaussian(), default_phase_grid());
  const EqualityCertificate eq = equality_certificate(s, WeightSpec::gaussian(1), 2, 2);
  CHECK(eq.max_relative_residual < 1e-4);
  CHECK(eq.lambda == doctest::Approx(1.0).epsilon(1e-6));

  const Grid2D cells = default_cell_grid();
  const AmbiguitySurface sc = cross_ambiguity(matched_gaussian(), matched_gaussian(), cells);
  const EqualityCertificate no = equality_certificate(sc, WeightSpec::indicator(Rect{-1, 1, -1, 1}), 2, kE / 2);
  CHECK(no.max_relative_residual > 0.1);

  // a surface built as C^(1/(r(p-1))) certifies itself
  const Grid2D grid = default_phase_grid();
  const WeightSpec c = WeightSpec::gaussian(0.8);
  const auto w = rasterize(c, grid);
  AmbiguitySurface self{grid, SurfaceKind::ambiguity, std::vector<cplx>(w.size())};
  for (std::size_t i = 0; i < w.size(); ++i) self.values[i] = std::pow(w[i], 1 / (3.0 * 1.5));
  const EqualityCertificate ok = equality_certificate(self, c, 3, 2.5);
  CHECK(ok.max_relative_residual < 1e-10);
  CHECK(ok.lambda == doctest::Approx(1.0).epsilon(1e-10));

  const WeightSpec zero = WeightSpec::sampled(grid, std::vector<double>(grid.size(), 0.0));
  CHECK(code_of([&] { equality_certificate(s, zero, 2, 2); }) == Errc::degenerate_certificate);
  CHECK(code_of([&] { equality_certificate(s, c, 2, 1); }) == Errc::domain);
}

TEST_CASE("Renyi entropy") {
  const Grid2D grid = default_phase_grid();
  const AmbiguitySurface s = cross_ambiguity(matched_gaussian(), matched_gaussian(), grid);
  const WeightSpec c = WeightSpec::gaussian(1);
  CHECK(renyi_entropy(s, c, 2) == doctest::Approx(std::log(2.0)).epsilon(1e-3));
  CHECK(renyi_entropy(s, c, 2) == doctest::Approx(-std::log(weighted_r_norm(s, c, 2))).epsilon(1e-14));
  CHECK(code_of([&] { renyi_entropy(s, c, 1); }) == Errc::unsupported_order);

  auto w = rasterize(c, grid);
  const WeightSpec base = WeightSpec::sampled(grid, w);
  for (double& v : w) v *= 3.0;
  const WeightSpec scaled = WeightSpec::sampled(grid, w);
  for (double r : {0.5, 2.0, 3.0}) {
    CHECK(renyi_entropy(s, scaled, r) - renyi_entropy(s, base, r) ==
          doctest::Approx(std::log(3.0) / (1 - r)).epsilon(1e-12));
  }
  const WeightSpec zero = WeightSpec::sampled(grid, std::vector<double>(grid.size(), 0.0));
  CHECK(code_of([&] { renyi_entropy(s, zero, 2); }) == Errc::degenerate_input);
}

}
