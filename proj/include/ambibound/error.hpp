#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ambibound {

enum class Errc {
  domain,                  // argument outside the mathematical domain
  degenerate_input,        // zero waveform, zero norm, ...
  invalid_params,          // Gaussian parameters, malformed specs
  grid_too_narrow,         // Gaussian tails not contained in the time grid
  off_grid_delay,          // delay is not an integer multiple of dt
  incompatible_grids,      // waveforms or surfaces on different grids
  off_grid,                // point not on the sampled weight's grid
  degenerate_region,       // empty mask, zero-area rectangle
  rasterization_mismatch,  // region edges do not fall on cell boundaries
  weight_norm_divergence,  // non-finite weight norm during optimization
  degenerate_certificate,  // no grid points above the certificate threshold
  unsupported_order,       // Renyi order r = 1
  unsupported,             // operation has no closed form for this input
  not_found,               // unknown scenario
  parse,                   // malformed CSV / JSON
  io,                      // file could not be opened
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ambibound
