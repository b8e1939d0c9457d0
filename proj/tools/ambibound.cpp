// ambibound: command-line front end.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage, 3 data
// incompatibility, 4 unsupported mode.

#include <charconv>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ambibound/bounds.hpp"
#include "ambibound/phase_plane.hpp"
#include "ambibound/sweep.hpp"
#include "ambibound/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace ambibound;

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitUnsupported = 4;

struct Globals {
  std::string grid_t;
  std::string grid_tau;
  std::string grid_nu;
  bool cells = false;
  std::string out;
  std::uint64_t seed = 0;
  bool no_timestamp = false;
};

int exit_code(Errc e) {
  switch (e) {
    case Errc::domain:
    case Errc::invalid_params:
    case Errc::unsupported_order:
    case Errc::not_found:
      return kExitUsage;
    case Errc::unsupported:
      return kExitUnsupported;
    default:
      return kExitData;
  }
}

// "3", "-8", "1/64", "-1/32"
double parse_number(std::string_view s) {
  auto one = [](std::string_view t) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || p != t.data() + t.size()) {
      throw Error(Errc::invalid_params, "not a number: " + std::string(t));
    }
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return one(s);
  return one(s.substr(0, slash)) / one(s.substr(slash + 1));
}

// "lo:hi:step"
std::array<double, 3> parse_range(const std::string& spec, const char* flag) {
  std::array<double, 3> v{};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const auto end = i < 2 ? spec.find(':', pos) : spec.size();
    if (end == std::string::npos) {
      throw Error(Errc::invalid_params,
                  std::string(flag) + " expects lo:hi:step, got " + spec);
    }
    v[i] = parse_number(std::string_view(spec).substr(pos, end - pos));
    pos = end + 1;
  }
  if (!(v[1] > v[0]) || !(v[2] > 0.0)) {
    throw Error(Errc::invalid_params, std::string(flag) + " needs lo < hi, step > 0");
  }
  return v;
}

TimeGrid time_grid(const Globals& g) {
  if (g.grid_t.empty()) return kDefaultTimeGrid;
  const auto [lo, hi, step] = parse_range(g.grid_t, "--grid-t");
  const Axis a = Axis::points(lo, hi, step);
  return {a.start, a.step, a.count};
}

Grid2D phase_grid(const Globals& g) {
  Grid2D grid = g.cells ? default_cell_grid() : default_phase_grid();
  auto axis = [&](const std::string& spec, const char* flag, Axis& out) {
    if (spec.empty()) return;
    const auto [lo, hi, step] = parse_range(spec, flag);
    out = g.cells ? Axis::cells(lo, hi, step) : Axis::points(lo, hi, step);
  };
  axis(g.grid_tau, "--grid-tau", grid.tau);
  axis(g.grid_nu, "--grid-nu", grid.nu);
  grid.validate();
  return grid;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io, "cannot write " + path);
  return f;
}

Waveform load_waveform(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::io, "cannot read " + path);
  return read_waveform_csv(f);
}

// Inline JSON or @path.
WeightSpec load_weight(const std::string& arg) {
  std::string text = arg;
  fs::path base;
  if (!arg.empty() && arg.front() == '@') {
    const fs::path p = arg.substr(1);
    std::ifstream f(p);
    if (!f) throw Error(Errc::io, "cannot read " + p.string());
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
    base = p.parent_path();
  }
  try {
    return parse_weight_json(text, base);
  } catch (const Error& e) {
    if (e.code() == Errc::parse) throw Error(Errc::invalid_params, e.what());
    throw;
  }
}

std::string timestamp() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json axis_json(const Axis& a) {
  return {{"start", a.start}, {"step", a.step}, {"count", a.count}};
}

json report_json(const BoundReport& b) {
  return {{"bound_value", b.bound_value},
          {"p_opt", b.p_opt},
          {"branch", std::string(to_string(b.branch))},
          {"feasible_interior", b.feasible_interior},
          {"tight", b.tight},
          {"r", b.r},
          {"weight", json::parse(b.weight)}};
}

void emit(const Globals& g, const json& doc) {
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!g.out.empty()) open_out(g.out) << text;
}

// gen ---------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  double a_re = kPi;
  double a_im = 0.0;
  double center = 0.0;
  double freq = 0.0;
  double freq2 = 1.0;
};

int cmd_gen(const Globals& g, const GenArgs& a) {
  if (!(a.a_re > 0.0)) throw Error(Errc::invalid_params, "--a-re must be > 0");
  const TimeGrid grid = time_grid(g);
  Waveform w = make_gaussian(
      GaussianParams::unit(cplx{a.a_re, a.kind == "chirp" ? a.a_im : 0.0},
                           a.center, a.freq),
      grid);
  if (a.kind == "two_tone") {
    const Waveform w2 =
        make_gaussian(GaussianParams::unit(cplx{a.a_re, 0.0}, a.center, a.freq2), grid);
    const std::vector<cplx> coeffs = {1.0, 1.0};
    const std::vector<Waveform> parts = {w, w2};
    w = linear_combination(coeffs, parts);
  }
  w = normalize_l2(w);
  auto f = open_out(g.out);
  write_waveform_csv(f, w);
  return 0;
}

// surface -----------------------------------------------------------------

struct SurfaceArgs {
  std::string g, gamma, kind = "ambiguity", summary;
};

int cmd_surface(const Globals& gl, const SurfaceArgs& a) {
  const Waveform g = load_waveform(a.g);
  const Waveform h = load_waveform(a.gamma);
  const Grid2D grid = phase_grid(gl);
  AmbiguitySurface s = a.kind == "woodward" ? woodward_ambiguity(g, h, grid)
                       : a.kind == "wigner" ? wigner(g, h, grid)
                                            : cross_ambiguity(g, h, grid);
  {
    auto f = open_out(gl.out);
    write_surface_csv(f, s);
  }
  json doc = {{"kind", std::string(to_string(s.kind))},
              {"tau", axis_json(grid.tau)},
              {"nu", axis_json(grid.nu)},
              {"l2_norm", surface_lp_norm(s, 2.0)},
              {"max_abs", max_abs(s)},
              {"max_abs_imag", max_abs_imag(s)}};
  if (!gl.no_timestamp) doc["timestamp"] = timestamp();
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  open_out(a.summary.empty() ? gl.out + ".json" : a.summary) << text;
  return 0;
}

// wnorm -------------------------------------------------------------------

struct WnormArgs {
  std::string g, gamma, weight;
  double r = 2.0;
};

int cmd_wnorm(const Globals& gl, const WnormArgs& a) {
  const WeightSpec c = load_weight(a.weight);
  const Waveform g = load_waveform(a.g);
  const Waveform h = load_waveform(a.gamma);
  Globals grid_flags = gl;
  if (c.as<IndicatorWeight>() && gl.grid_tau.empty() && gl.grid_nu.empty()) {
    grid_flags.cells = true;
  }
  const Grid2D grid = phase_grid(grid_flags);
  const AmbiguitySurface s = cross_ambiguity(g, h, grid);
  json doc = {{"weighted_r_norm", weighted_r_norm(s, c, a.r)},
              {"r", a.r},
              {"weight", json::parse(describe(c))}};
  if (a.r != 1.0) doc["renyi_entropy"] = renyi_entropy(s, c, a.r);
  emit(gl, doc);
  return 0;
}

// bound -------------------------------------------------------------------

struct BoundArgs {
  std::string weight, mode = "closed";
  double r = 2.0;
  std::optional<double> p;
  double p_max = 1024.0;
};

int cmd_bound(const Globals& gl, const BoundArgs& a) {
  const WeightSpec c = load_weight(a.weight);
  BoundReport b;
  if (a.mode == "closed") {
    b = best_bound_closed(a.r, c);
  } else if (a.mode == "numeric") {
    b = best_bound_numeric(a.r, c, a.p_max);
  } else {
    if (!a.p) throw Error(Errc::invalid_params, "--mode at-p needs --p");
    b = bound_at_p(a.r, *a.p, c);
  }
  emit(gl, report_json(b));
  return 0;
}

// sweep -------------------------------------------------------------------

struct SweepArgs {
  std::string param = "alpha";
  double lo = 0.0, hi = 0.0, r = 1.0;
  int steps = 0;
};

int cmd_sweep(const Globals& gl, const SweepArgs& a) {
  SweepSpec spec{parse_sweep_parameter(a.param), a.lo, a.hi, a.steps, a.r};
  const auto rows = run_sweep(spec);
  auto f = open_out(gl.out);
  write_sweep_csv(f, rows);
  return 0;
}

// verify ------------------------------------------------------------------

int cmd_verify(const Globals& gl) {
  const auto results = run_all(gl.seed);
  bool all = true;
  for (const ScenarioResult& r : results) {
    all = all && r.passed;
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  measured="
              << std::setprecision(10) << r.measured << " expected=" << r.expected
              << " tol=" << r.tolerance << "  " << r.detail << '\n';
  }
  if (!gl.out.empty()) {
    auto f = open_out(gl.out);
    write_results_csv(f, results);
    open_out(gl.out + ".json") << results_json(results, gl.seed) << '\n';
  }
  return all ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted ambiguity-norm bounds"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals gl;
  app.add_option("--grid-t", gl.grid_t, "Time grid lo:hi:step (default -8:8:1/64)");
  app.add_option("--grid-tau", gl.grid_tau, "Delay grid lo:hi:step (default -4:4:1/32)");
  app.add_option("--grid-nu", gl.grid_nu, "Doppler grid lo:hi:step (default -4:4:1/32)");
  app.add_flag("--cells", gl.cells, "Sample delay/Doppler grids at cell centres");
  app.add_option("--out", gl.out, "Output path");
  app.add_option("--seed", gl.seed, "Random seed");
  app.add_flag("--no-timestamp", gl.no_timestamp, "Omit timestamps from JSON summaries");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a unit-norm waveform CSV");
  gen_cmd->add_option("kind", gen.kind)->required()->check(
      CLI::IsMember({"gaussian", "chirp", "two_tone"}));
  gen_cmd->add_option("--a-re", gen.a_re, "Re(a), > 0");
  gen_cmd->add_option("--a-im", gen.a_im, "Im(a), chirp rate (chirp only)");
  gen_cmd->add_option("--center", gen.center);
  gen_cmd->add_option("--freq", gen.freq);
  gen_cmd->add_option("--freq2", gen.freq2, "Second tone (two_tone only)");

  SurfaceArgs surf;
  auto* surf_cmd = app.add_subcommand("surface", "Compute a phase-space surface");
  surf_cmd->add_option("--g", surf.g)->required();
  surf_cmd->add_option("--gamma", surf.gamma)->required();
  surf_cmd->add_option("--kind", surf.kind)->check(
      CLI::IsMember({"ambiguity", "woodward", "wigner"}));
  surf_cmd->add_option("--summary", surf.summary, "Summary JSON path (default <out>.json)");

  WnormArgs wn;
  auto* wn_cmd = app.add_subcommand("wnorm", "Weighted r-norm of A_{g,gamma}");
  wn_cmd->add_option("--g", wn.g)->required();
  wn_cmd->add_option("--gamma", wn.gamma)->required();
  wn_cmd->add_option("--weight", wn.weight, "Weight JSON or @file")->required();
  wn_cmd->add_option("--r", wn.r);

  BoundArgs bd;
  auto* bd_cmd = app.add_subcommand("bound", "Evaluate or optimize the norm bound");
  bd_cmd->add_option("--weight", bd.weight, "Weight JSON or @file")->required();
  bd_cmd->add_option("--r", bd.r);
  bd_cmd->add_option("--mode", bd.mode)->check(CLI::IsMember({"closed", "numeric", "at-p"}));
  bd_cmd->add_option("--p", bd.p);
  bd_cmd->add_option("--p-max", bd.p_max);

  SweepArgs sw;
  auto* sw_cmd = app.add_subcommand("sweep", "Bound curves over alpha or |U|");
  sw_cmd->add_option("--param", sw.param)->check(CLI::IsMember({"alpha", "areaU"}));
  sw_cmd->add_option("--lo", sw.lo)->required();
  sw_cmd->add_option("--hi", sw.hi)->required();
  sw_cmd->add_option("--steps", sw.steps)->required();
  sw_cmd->add_option("--r", sw.r);

  auto* ver_cmd = app.add_subcommand("verify", "Run the verification scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen_cmd->parsed() || surf_cmd->parsed() || sw_cmd->parsed()) {
      if (gl.out.empty()) {
        std::cerr << "error: --out is required\n";
        return kExitUsage;
      }
    }
    if (gen_cmd->parsed()) return cmd_gen(gl, gen);
    if (surf_cmd->parsed()) return cmd_surface(gl, surf);
    if (wn_cmd->parsed()) return cmd_wnorm(gl, wn);
    if (bd_cmd->parsed()) return cmd_bound(gl, bd);
    if (sw_cmd->parsed()) return cmd_sweep(gl, sw);
    if (ver_cmd->parsed()) return cmd_verify(gl);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code(e.code());
  }
  return kExitUsage;
}
