#include "ambibound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "ambibound/bounds.hpp"
#include "ambibound/phase_plane.hpp"

namespace ambibound {

namespace {

using Scenario = ScenarioResult (*)(const ScenarioConfig&);

ScenarioResult finish(ScenarioResult r) {
  r.passed = r.comparison == Comparison::within
                 ? std::abs(r.measured - r.expected) <= r.tolerance
                 : r.measured < r.expected - r.tolerance;
  return r;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

Waveform unit_gaussian(double re_a = kPi) {
  return make_gaussian(GaussianParams::unit(cplx{re_a, 0.0}), kDefaultTimeGrid);
}

// 64 x 64 grid around the origin, step 1/32.
Grid2D relation_grid() {
  return {Axis::points(-1.0, 1.0, 1.0 / 32), Axis::points(-1.0, 1.0, 1.0 / 32)};
}

ScenarioResult moyal(const ScenarioConfig& cfg) {
  auto rng = scenario_rng(cfg.seed, "moyal");
  const Grid2D grid = default_phase_grid();
  double worst = 1.0;
  for (int i = 0; i < cfg.random_pairs; ++i) {
    const Waveform g = random_waveform(rng, kDefaultTimeGrid);
    const Waveform h = random_waveform(rng, kDefaultTimeGrid);
    const double v = surface_lp_norm(cross_ambiguity(g, h, grid), 2.0);
    if (std::abs(v - 1.0) > std::abs(worst - 1.0)) worst = v;
  }
  return finish({"moyal", false, worst, 1.0, 1e-6, Comparison::within,
                 "worst ||A||_2 over " + std::to_string(cfg.random_pairs) +
                     " random unit pairs"});
}

ScenarioResult gaussian_tight(const ScenarioConfig&) {
  const double alpha = 1.0, r = 2.0;
  const Waveform g = unit_gaussian();
  const AmbiguitySurface s = cross_ambiguity(g, g, default_phase_grid());
  const double measured = weighted_r_norm(s, WeightSpec::gaussian(alpha), r);
  const BoundReport b = best_bound_gaussian(r, alpha);
  const double expected = 2.0 * alpha / (2.0 * alpha + r);
  ScenarioResult res{"gaussian_tight", false, measured, expected,
                     2e-4 * expected, Comparison::within,
                     "alpha=1 r=2, bound " + fmt(b.bound_value) + " at p=" +
                         fmt(b.p_opt)};
  res = finish(res);
  res.passed = res.passed && b.tight && b.bound_value == expected;
  return res;
}

ScenarioResult gaussian_boundary_gap(const ScenarioConfig&) {
  const double alpha = 0.25, r = 1.0;
  const Waveform g = unit_gaussian();
  const AmbiguitySurface s = cross_ambiguity(g, g, default_phase_grid());
  const double measured = weighted_r_norm(s, WeightSpec::gaussian(alpha), r);
  const BoundReport b = best_bound_gaussian(r, alpha);
  const double matched = 2.0 * alpha / (2.0 * alpha + r);
  ScenarioResult res{"gaussian_boundary_gap", false, measured, b.bound_value,
                     0.019, Comparison::below,
                     "r=1 alpha=0.25, matched value " + fmt(matched) +
                         ", branch " + std::string(to_string(b.branch))};
  res = finish(res);
  res.passed = res.passed && std::abs(measured - matched) <= 2e-4 &&
               b.branch == Branch::boundary;
  return res;
}

ScenarioResult indicator_strict(const ScenarioConfig& cfg) {
  auto rng = scenario_rng(cfg.seed, "indicator_strict");
  const Grid2D grid = default_cell_grid();
  // Areas 0.5, 1, 2.71875 (the nearest cell-aligned area above e) and 4.
  const std::vector<Rect> rects = {
      {-0.5, 0.5, -0.25, 0.25},
      {-0.5, 0.5, -0.5, 0.5},
      {-29.0 / 32, 29.0 / 32, -0.75, 0.75},
      {-1.0, 1.0, -1.0, 1.0},
  };
  std::vector<WeightSpec> weights;
  for (const Rect& u : rects) weights.push_back(WeightSpec::indicator(u));

  double worst = 0.0;
  std::string where;
  for (int i = 0; i <= cfg.random_pairs; ++i) {
    const Waveform g = i == 0 ? unit_gaussian() : random_waveform(rng, kDefaultTimeGrid);
    const Waveform h = i == 0 ? g : random_waveform(rng, kDefaultTimeGrid);
    const AmbiguitySurface s = cross_ambiguity(g, h, grid);
    for (double r : {1.0, 2.0, 3.0}) {
      for (const WeightSpec& c : weights) {
        const double bound = best_bound_closed(r, c).bound_value;
        const double ratio = weighted_r_norm(s, c, r) / bound;
        if (ratio > worst) {
          worst = ratio;
          where = "r=" + fmt(r) + " |U|=" +
                  fmt(c.as<IndicatorWeight>()->area) + " pair " +
                  std::to_string(i);
        }
      }
    }
  }
  return finish({"indicator_strict", false, worst, 1.0, 0.0, Comparison::below,
                 "max value/bound, " + where});
}

double max_relation_error(const AmbiguitySurface& lhs,
                          const std::function<cplx(std::size_t, std::size_t)>& rhs) {
  double err = 0.0;
  for (std::size_t j = 0; j < lhs.grid.tau.count; ++j) {
    for (std::size_t l = 0; l < lhs.grid.nu.count; ++l) {
      err = std::max(err, std::abs(lhs.at(j, l) - rhs(j, l)));
    }
  }
  return err;
}

ScenarioResult wigner_relation(const ScenarioConfig& cfg) {
  auto rng = scenario_rng(cfg.seed, "wigner_relation");
  const Grid2D grid = relation_grid();
  const std::size_t n = grid.tau.count;
  // W(tau, nu) = 2 At_{g, gamma^-}(-2 tau, 2 nu)
  const Grid2D scaled{{-2.0 * grid.tau.last(), 2.0 * grid.tau.step, n},
                      {2.0 * grid.nu.start, 2.0 * grid.nu.step, grid.nu.count}};
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const Waveform g = random_waveform(rng, kDefaultTimeGrid);
    const Waveform h = random_waveform(rng, kDefaultTimeGrid);
    const AmbiguitySurface w = wigner(g, h, grid);
    const AmbiguitySurface at = woodward_ambiguity(g, time_reverse(h), scaled);
    worst = std::max(worst, max_relation_error(w, [&](std::size_t j, std::size_t l) {
                       return 2.0 * at.at(n - 1 - j, l);
                     }));
  }
  return finish({"wigner_relation", false, worst, 0.0, 1e-8, Comparison::within,
                 "max |W(tau,nu) - 2 At_{g,gamma^-}(-2tau,2nu)|, 5 pairs, 64x64"});
}

ScenarioResult phase_relation(const ScenarioConfig& cfg) {
  auto rng = scenario_rng(cfg.seed, "phase_relation");
  const Grid2D grid = relation_grid();
  const std::size_t nt = grid.tau.count, nn = grid.nu.count;
  // A(x) = exp(i pi x1 x2) At_{conj g, conj gamma}(-x1, -x2)
  const Grid2D mirrored{{-grid.tau.last(), grid.tau.step, nt},
                        {-grid.nu.last(), grid.nu.step, nn}};
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const Waveform g = random_waveform(rng, kDefaultTimeGrid);
    const Waveform h = random_waveform(rng, kDefaultTimeGrid);
    const AmbiguitySurface a = cross_ambiguity(g, h, grid);
    const AmbiguitySurface at =
        woodward_ambiguity(conjugate(g), conjugate(h), mirrored);
    worst = std::max(worst, max_relation_error(a, [&](std::size_t j, std::size_t l) {
                       const double phase =
                           0.5 * grid.tau.at(j) * grid.nu.at(l);
                       return std::polar(1.0, 2.0 * kPi * phase) *
                              at.at(nt - 1 - j, nn - 1 - l);
                     }));
  }
  return finish({"phase_relation", false, worst, 0.0, 1e-8, Comparison::within,
                 "max |A(x) - e^{i pi x1 x2} At_{conj g,conj gamma}(-x)|, 5 pairs, 64x64"});
}

ScenarioResult wssus_example(const ScenarioConfig& cfg) {
  auto rng = scenario_rng(cfg.seed, "wssus_example");
  const double tau_d = 0.25, b_d = 0.2, r = 2.0;
  const Grid2D grid{Axis::cells(-4.0, 4.0, 1.0 / 32), Axis::cells(-4.0, 4.0, 0.05)};
  const WeightSpec c = WeightSpec::indicator(Rect{0.0, tau_d, -b_d, b_d});
  const BoundReport b = best_bound_closed(r, c);

  double worst = 0.0;
  for (double re_a : {0.5 * kPi, kPi, 2.0 * kPi}) {
    const Waveform g = unit_gaussian(re_a);
    worst = std::max(worst, weighted_r_norm(cross_ambiguity(g, g, grid), c, r));
  }
  for (int i = 0; i < cfg.random_pairs; ++i) {
    const Waveform g = random_waveform(rng, kDefaultTimeGrid);
    const Waveform h = random_waveform(rng, kDefaultTimeGrid);
    worst = std::max(worst, weighted_r_norm(cross_ambiguity(g, h, grid), c, r));
  }
  ScenarioResult res{"wssus_example", false, worst, b.bound_value, 0.0,
                     Comparison::below,
                     "2 B_d tau_d = 0.1, r=2, bound exp(-0.1/e) = " +
                         fmt(std::exp(-0.1 / std::exp(1.0)))};
  res = finish(res);
  res.passed = res.passed &&
               std::abs(b.bound_value - std::exp(-0.1 / std::exp(1.0))) <= 1e-12;
  return res;
}

ScenarioResult lieb_gaussian_equality(const ScenarioConfig&) {
  const Waveform g = unit_gaussian();
  const LiebCheck c = lieb_bound_check(g, g, 4.0, 2.0, 2.0, default_phase_grid());
  ScenarioResult res{"lieb_gaussian_equality", false, c.lhs, 0.5, 1e-5,
                     Comparison::within,
                     "||A||_4^4 for matched unit Gaussians, H(4,2,2) ||g||^4 = " +
                         fmt(c.rhs)};
  res = finish(res);
  res.passed = res.passed && std::abs(c.rhs - 0.5) <= 1e-12;
  return res;
}

const std::vector<std::pair<std::string, Scenario>>& registry() {
  static const std::vector<std::pair<std::string, Scenario>> r = {
      {"moyal", moyal},
      {"gaussian_tight", gaussian_tight},
      {"gaussian_boundary_gap", gaussian_boundary_gap},
      {"indicator_strict", indicator_strict},
      {"wigner_relation", wigner_relation},
      {"phase_relation", phase_relation},
      {"wssus_example", wssus_example},
      {"lieb_gaussian_equality", lieb_gaussian_equality},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

ScenarioResult run_scenario(std::string_view name, const ScenarioConfig& config) {
  for (const auto& [n, fn] : registry()) {
    if (n == name) return fn(config);
  }
  throw Error(Errc::not_found, "unknown scenario: " + std::string(name));
}

std::vector<ScenarioResult> run_all(std::uint64_t seed) {
  std::vector<ScenarioResult> out;
  for (const auto& [name, fn] : registry()) {
    try {
      out.push_back(fn({seed}));
    } catch (const std::exception& e) {
      out.push_back({name, false, kInf, 0.0, 0.0, Comparison::within,
                     std::string("raised: ") + e.what()});
    }
  }
  return out;
}

void write_results_csv(std::ostream& out,
                       const std::vector<ScenarioResult>& results) {
  out << "name,passed,measured,expected,tolerance\n" << std::setprecision(17);
  for (const ScenarioResult& r : results) {
    out << r.name << ',' << (r.passed ? "true" : "false") << ',' << r.measured
        << ',' << r.expected << ',' << r.tolerance << '\n';
  }
}

std::string results_json(const std::vector<ScenarioResult>& results,
                         std::uint64_t seed) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const ScenarioResult& r : results) {
    all = all && r.passed;
    arr.push_back({{"name", r.name},
                   {"passed", r.passed},
                   {"measured", r.measured},
                   {"expected", r.expected},
                   {"tolerance", r.tolerance},
                   {"comparison", r.comparison == Comparison::within ? "within" : "below"},
                   {"detail", r.detail}});
  }
  nlohmann::json doc = {{"seed", seed}, {"all_passed", all}, {"results", arr}};
  return doc.dump(2);
}

std::mt19937_64 scenario_rng(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 14695981039346656037ull;  // FNV-1a
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  // splitmix64 finalizer over the combined key
  std::uint64_t z = h ^ (seed + 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return std::mt19937_64(z ^ (z >> 31));
}

Waveform random_waveform(std::mt19937_64& rng, const TimeGrid& grid,
                         int min_parts, int max_parts) {
  if (min_parts < 1 || max_parts < min_parts) {
    throw Error(Errc::invalid_params, "random_waveform part counts");
  }
  std::uniform_int_distribution<int> parts(min_parts, max_parts);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  const int k = parts(rng);
  std::vector<Waveform> comps;
  std::vector<cplx> coeffs;
  for (int i = 0; i < k; ++i) {
    const cplx a{kPi * uniform(0.8, 1.5), kPi * uniform(-0.4, 0.4)};
    const double center = uniform(-0.5, 0.5);
    const double freq = uniform(-0.5, 0.5);
    comps.push_back(make_gaussian(GaussianParams::unit(a, center, freq), grid));
    coeffs.push_back(std::polar(uniform(0.3, 1.0), uniform(0.0, 2.0 * kPi)));
  }
  return normalize_l2(linear_combination(coeffs, comps));
}

}  // namespace ambibound
