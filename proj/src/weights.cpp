#include "ambibound/weights.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace ambibound {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_rect(const Rect& r) {
  const bool finite = std::isfinite(r.tau_min) && std::isfinite(r.tau_max) &&
                      std::isfinite(r.nu_min) && std::isfinite(r.nu_max);
  if (!finite || !(r.tau_max > r.tau_min) || !(r.nu_max > r.nu_min)) {
    throw Error(Errc::degenerate_region,
                "rectangle needs tau_max > tau_min and nu_max > nu_min");
  }
}

std::size_t mask_count(const GridMask& m) {
  return static_cast<std::size_t>(
      std::count_if(m.mask.begin(), m.mask.end(),
                    [](std::uint8_t v) { return v != 0; }));
}

void validate_mask(const GridMask& m) {
  m.grid.validate();
  if (m.mask.size() != m.grid.size()) {
    throw Error(Errc::invalid_params, "mask size does not match its grid");
  }
  if (mask_count(m) == 0) {
    throw Error(Errc::degenerate_region, "mask has no cells set");
  }
}

// Cell indices [first, last) of `axis` covered by [lo, hi]; the interval
// edges must sit on cell boundaries.
std::pair<std::size_t, std::size_t> covered_cells(const Axis& axis, double lo,
                                                  double hi,
                                                  std::string_view name) {
  const double origin = axis.start - 0.5 * axis.step;
  auto edge = [&](double x) {
    const double ratio = (x - origin) / axis.step;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > kGridTolerance) {
      throw Error(Errc::rasterization_mismatch,
                  std::string(name) +
                      " edge is not on a cell boundary of the grid");
    }
    return rounded;
  };
  const double first = edge(lo);
  const double last = edge(hi);
  if (first < 0.0 || last > static_cast<double>(axis.count)) {
    throw Error(Errc::rasterization_mismatch,
                std::string(name) + " extent is not covered by the grid");
  }
  return {static_cast<std::size_t>(first), static_cast<std::size_t>(last)};
}

// Candidate cells containing x; two when x sits on a boundary.
std::vector<std::size_t> cells_containing(const Axis& axis, double x) {
  const double r = (x - axis.start) / axis.step + 0.5;
  const double f = std::floor(r);
  std::vector<std::size_t> out;
  auto push = [&](double idx) {
    if (idx >= 0.0 && idx < static_cast<double>(axis.count)) {
      out.push_back(static_cast<std::size_t>(idx));
    }
  };
  push(f);
  if (std::abs(r - f) <= kGridTolerance) push(f - 1.0);
  if (std::abs(r - (f + 1.0)) <= kGridTolerance) push(f + 1.0);
  return out;
}

bool inside(const Region& region, PhasePoint x) {
  return std::visit(
      overloaded{
          [&](const Rect& r) {
            return x.delay >= r.tau_min && x.delay <= r.tau_max &&
                   x.doppler >= r.nu_min && x.doppler <= r.nu_max;
          },
          [&](const GridMask& m) {
            for (std::size_t j : cells_containing(m.grid.tau, x.delay)) {
              for (std::size_t l : cells_containing(m.grid.nu, x.doppler)) {
                if (m.mask[j * m.grid.nu.count + l] != 0) return true;
              }
            }
            return false;
          }},
      region);
}

}  // namespace

double area(const Region& region) {
  return std::visit(
      overloaded{[](const Rect& r) {
                   validate_rect(r);
                   return (r.tau_max - r.tau_min) * (r.nu_max - r.nu_min);
                 },
                 [](const GridMask& m) {
                   validate_mask(m);
                   return static_cast<double>(mask_count(m)) *
                          m.grid.cell_area();
                 }},
      region);
}

WeightSpec WeightSpec::gaussian(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(Errc::invalid_params, "Gaussian weight needs alpha > 0");
  }
  return WeightSpec(GaussianWeight{alpha});
}

WeightSpec WeightSpec::indicator(Region region) {
  const double a = area(region);
  return WeightSpec(IndicatorWeight{std::move(region), a});
}

WeightSpec WeightSpec::sampled(Grid2D grid, std::vector<double> values) {
  grid.validate();
  if (values.size() != grid.size()) {
    throw Error(Errc::invalid_params,
                "sampled weight size does not match its grid");
  }
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(Errc::invalid_params,
                  "sampled weight values must be finite and >= 0");
    }
  }
  return WeightSpec(SampledWeight{grid, std::move(values)});
}

double evaluate(const WeightSpec& c, PhasePoint x) {
  return std::visit(
      overloaded{
          [&](const GaussianWeight& w) {
            const double r2 = x.delay * x.delay + x.doppler * x.doppler;
            return w.alpha * std::exp(-w.alpha * kPi * r2);
          },
          [&](const IndicatorWeight& w) {
            return inside(w.region, x) ? 1.0 / w.area : 0.0;
          },
          [&](const SampledWeight& w) {
            const auto j = w.grid.tau.index_of(x.delay);
            const auto l = w.grid.nu.index_of(x.doppler);
            if (!j || !l) {
              throw Error(Errc::off_grid,
                          "point is not on the sampled weight's grid");
            }
            return w.values[*j * w.grid.nu.count + *l];
          }},
      c.get());
}

double weight_lq_norm(const WeightSpec& c, double s) {
  if (!(s >= 1.0)) throw Error(Errc::domain, "weight_lq_norm needs s >= 1");
  const bool inf = std::isinf(s);
  return std::visit(
      overloaded{
          [&](const GaussianWeight& w) {
            if (inf) return w.alpha;
            return std::pow(1.0 / s, 1.0 / s) *
                   std::pow(w.alpha, (s - 1.0) / s);
          },
          [&](const IndicatorWeight& w) {
            if (inf) return 1.0 / w.area;
            return std::pow(w.area, (1.0 - s) / s);
          },
          [&](const SampledWeight& w) {
            const double peak = *std::max_element(w.values.begin(),
                                                  w.values.end());
            if (inf || peak == 0.0) return peak;
            double acc = 0.0;
            for (double v : w.values) acc += std::pow(v / peak, s);
            return peak * std::pow(acc * w.grid.cell_area(), 1.0 / s);
          }},
      c.get());
}

std::vector<double> rasterize(const WeightSpec& c, const Grid2D& grid) {
  grid.validate();
  std::vector<double> out(grid.size(), 0.0);
  std::visit(
      overloaded{
          [&](const GaussianWeight& w) {
            for (std::size_t j = 0; j < grid.tau.count; ++j) {
              const double t = grid.tau.at(j);
              for (std::size_t l = 0; l < grid.nu.count; ++l) {
                const double f = grid.nu.at(l);
                out[j * grid.nu.count + l] =
                    w.alpha * std::exp(-w.alpha * kPi * (t * t + f * f));
              }
            }
          },
          [&](const IndicatorWeight& w) {
            const double level = 1.0 / w.area;
            if (const auto* r = std::get_if<Rect>(&w.region)) {
              const auto [j0, j1] =
                  covered_cells(grid.tau, r->tau_min, r->tau_max, "delay");
              const auto [l0, l1] =
                  covered_cells(grid.nu, r->nu_min, r->nu_max, "Doppler");
              for (std::size_t j = j0; j < j1; ++j) {
                for (std::size_t l = l0; l < l1; ++l) {
                  out[j * grid.nu.count + l] = level;
                }
              }
              return;
            }
            const auto& m = std::get<GridMask>(w.region);
            if (!same_grid(m.grid, grid)) {
              throw Error(Errc::rasterization_mismatch,
                          "mask grid differs from the surface grid");
            }
            for (std::size_t i = 0; i < out.size(); ++i) {
              out[i] = m.mask[i] != 0 ? level : 0.0;
            }
          },
          [&](const SampledWeight& w) {
            if (!same_grid(w.grid, grid)) {
              throw Error(Errc::off_grid,
                          "sampled weight grid differs from the surface grid");
            }
            out = w.values;
          }},
      c.get());
  return out;
}

WeightSpec normalize_l1(const WeightSpec& c) {
  const auto* w = c.as<SampledWeight>();
  if (w == nullptr) return c;
  double mass = 0.0;
  for (double v : w->values) mass += v;
  mass *= w->grid.cell_area();
  if (!(mass > 0.0)) {
    throw Error(Errc::degenerate_input, "sampled weight has zero mass");
  }
  std::vector<double> values = w->values;
  for (double& v : values) v /= mass;
  return WeightSpec::sampled(w->grid, std::move(values));
}

std::string describe(const WeightSpec& c) {
  using nlohmann::json;
  const json j = std::visit(
      overloaded{
          [](const GaussianWeight& w) {
            return json{{"type", "gaussian"}, {"alpha", w.alpha}};
          },
          [](const IndicatorWeight& w) {
            if (const auto* r = std::get_if<Rect>(&w.region)) {
              return json{{"type", "rect"},
                          {"tau", {r->tau_min, r->tau_max}},
                          {"nu", {r->nu_min, r->nu_max}},
                          {"area", w.area}};
            }
            const auto& m = std::get<GridMask>(w.region);
            return json{{"type", "mask"},
                        {"cells", mask_count(m)},
                        {"area", w.area}};
          },
          [](const SampledWeight& w) {
            return json{{"type", "sampled"},
                        {"n_tau", w.grid.tau.count},
                        {"n_nu", w.grid.nu.count}};
          }},
      c.get());
  return j.dump();
}

namespace {

Axis axis_from_values(std::vector<double> v, std::string_view name) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (v.size() < 2) {
    throw Error(Errc::parse,
                "grid CSV needs at least 2 distinct " + std::string(name) +
                    " values");
  }
  const double step = (v.back() - v.front()) / static_cast<double>(v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i] - (v.front() + static_cast<double>(i) * step)) >
        kGridTolerance * step) {
      throw Error(Errc::parse,
                  "grid CSV " + std::string(name) + " axis is not uniform");
    }
  }
  return {v.front(), step, v.size()};
}

double parse_field(std::string_view s, std::size_t line) {
  while (!s.empty() && (s.front() == ' ')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(Errc::parse, "line " + std::to_string(line) +
                                 ": cannot parse number '" + std::string(s) +
                                 "'");
  }
  return v;
}

std::ifstream open_or_throw(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(Errc::io, "cannot open " + p.string());
  return in;
}

}  // namespace

GridValues read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("tau,nu,val", 0) != 0) {
    throw Error(Errc::parse, "grid CSV must start with header 'tau,nu,val'");
  }
  std::vector<double> taus, nus, vals;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::string_view row(line);
    const auto c1 = row.find(',');
    const auto c2 = c1 == row.npos ? row.npos : row.find(',', c1 + 1);
    if (c2 == row.npos || row.find(',', c2 + 1) != row.npos) {
      throw Error(Errc::parse,
                  "line " + std::to_string(line_no) + ": expected 3 fields");
    }
    taus.push_back(parse_field(row.substr(0, c1), line_no));
    nus.push_back(parse_field(row.substr(c1 + 1, c2 - c1 - 1), line_no));
    vals.push_back(parse_field(row.substr(c2 + 1), line_no));
  }
  GridValues out{{axis_from_values(taus, "tau"), axis_from_values(nus, "nu")},
                 {}};
  out.values.assign(out.grid.size(), 0.0);
  std::vector<bool> seen(out.grid.size(), false);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const auto j = out.grid.tau.index_of(taus[i]);
    const auto l = out.grid.nu.index_of(nus[i]);
    if (!j || !l) throw Error(Errc::parse, "grid CSV point is off its grid");
    const std::size_t idx = *j * out.grid.nu.count + *l;
    if (seen[idx]) throw Error(Errc::parse, "grid CSV repeats a point");
    seen[idx] = true;
    out.values[idx] = vals[i];
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(Errc::parse, "grid CSV does not cover its full grid");
  }
  return out;
}

WeightSpec parse_weight_json(std::string_view text,
                             const std::filesystem::path& base_dir) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string("weight JSON: ") + e.what());
  }
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "gaussian") {
      return WeightSpec::gaussian(j.at("alpha").get<double>());
    }
    if (type == "rect") {
      const auto tau = j.at("tau").get<std::vector<double>>();
      const auto nu = j.at("nu").get<std::vector<double>>();
      if (tau.size() != 2 || nu.size() != 2) {
        throw Error(Errc::parse, "rect weight needs tau:[a,b] and nu:[c,d]");
      }
      return WeightSpec::indicator(Rect{tau[0], tau[1], nu[0], nu[1]});
    }
    if (type == "mask" || type == "sampled") {
      std::filesystem::path p = j.at("path").get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      auto in = open_or_throw(p);
      GridValues gv = read_grid_csv(in);
      if (type == "sampled") {
        return WeightSpec::sampled(gv.grid, std::move(gv.values));
      }
      GridMask m{gv.grid, std::vector<std::uint8_t>(gv.values.size())};
      for (std::size_t i = 0; i < gv.values.size(); ++i) {
        if (gv.values[i] != 0.0 && gv.values[i] != 1.0) {
          throw Error(Errc::parse, "mask values must be 0 or 1");
        }
        m.mask[i] = gv.values[i] != 0.0 ? 1 : 0;
      }
      return WeightSpec::indicator(std::move(m));
    }
    throw Error(Errc::parse, "unknown weight type '" + type + "'");
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string("weight JSON: ") + e.what());
  }
}

}  // namespace ambibound
