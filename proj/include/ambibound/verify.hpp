#pragma once

// Scripted verification scenarios run at the default grids.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ambibound/signal.hpp"

namespace ambibound {

enum class Comparison {
  within,  // |measured - expected| <= tolerance
  below,   // measured < expected - tolerance
};

struct ScenarioResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::within;
  std::string detail;
};

struct ScenarioConfig {
  std::uint64_t seed = 0;
  int random_pairs = 20;
};

// Registered names, in run order.
const std::vector<std::string>& scenario_names();

// Errc::not_found for unknown names.
ScenarioResult run_scenario(std::string_view name,
                            const ScenarioConfig& config = {});

std::vector<ScenarioResult> run_all(std::uint64_t seed);

// CSV header "name,passed,measured,expected,tolerance".
void write_results_csv(std::ostream& out,
                       const std::vector<ScenarioResult>& results);
std::string results_json(const std::vector<ScenarioResult>& results,
                         std::uint64_t seed);

// Generator derived from (seed, name) so scenarios are independent.
std::mt19937_64 scenario_rng(std::uint64_t seed, std::string_view name);

// Unit-norm sum of `min_parts`..`max_parts` Gaussians with random centres,
// widths, chirps, frequency offsets and complex amplitudes.
Waveform random_waveform(std::mt19937_64& rng, const TimeGrid& grid,
                         int min_parts = 1, int max_parts = 4);

}  // namespace ambibound
