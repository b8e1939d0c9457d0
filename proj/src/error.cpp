#include "ambibound/error.hpp"

namespace ambibound {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::domain: return "domain";
    case Errc::degenerate_input: return "degenerate-input";
    case Errc::invalid_params: return "invalid-params";
    case Errc::grid_too_narrow: return "grid-too-narrow";
    case Errc::off_grid_delay: return "off-grid-delay";
    case Errc::incompatible_grids: return "incompatible-grids";
    case Errc::off_grid: return "off-grid";
    case Errc::degenerate_region: return "degenerate-region";
    case Errc::rasterization_mismatch: return "rasterization-mismatch";
    case Errc::weight_norm_divergence: return "weight-norm-divergence";
    case Errc::degenerate_certificate: return "degenerate-certificate";
    case Errc::unsupported_order: return "unsupported-order";
    case Errc::unsupported: return "unsupported";
    case Errc::not_found: return "not-found";
    case Errc::parse: return "parse";
    case Errc::io: return "io";
  }
  return "unknown";
}

}  // namespace ambibound
