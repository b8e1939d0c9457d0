#pragma once

// Data-parallel inner loops behind the waveform and surface operations.
//
// Every kernel has a scalar reference implementation. SIMD variants (AVX2+FMA
// on x86-64, NEON on AArch64) are compiled when enabled and selected at
// runtime from the CPU feature set. The environment variable AMBIBOUND_ISA
// (scalar | avx2 | neon) forces a particular table when it is available.
//
// Variants differ only in summation order; results agree to a few ulps and
// each variant is deterministic on its own.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace ambibound::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  Isa isa;
  // out[i] = conj(a[i]) * b[i]
  void (*conj_mul)(std::span<const cplx> a, std::span<const cplx> b,
                   std::span<cplx> out);
  // out[i] = a[i] * b[i]
  void (*mul)(std::span<const cplx> a, std::span<const cplx> b,
              std::span<cplx> out);
  // sum_i conj(a[i]) * b[i]
  cplx (*conj_dot)(std::span<const cplx> a, std::span<const cplx> b);
  // out[i] = |v[i]|^2
  void (*abs2)(std::span<const cplx> v, std::span<double> out);
  // sum_i |v[i]|^2
  double (*sum_abs2)(std::span<const cplx> v);
  // sum_i a[i] * b[i]
  double (*dot)(std::span<const double> a, std::span<const double> b);
};

const KernelTable& scalar_table() noexcept;

// nullptr when the variant was not compiled in.
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;

// True when the variant is compiled in and the running CPU supports it.
bool isa_supported(Isa isa) noexcept;

std::string_view isa_name(Isa isa) noexcept;

// The table used by the library. Chosen once on first use.
const KernelTable& active() noexcept;

// Overrides the runtime selection; returns false (and leaves the selection
// unchanged) when the requested variant is unavailable.
bool set_active(Isa isa) noexcept;

// RAII override for tests and benchmarks.
class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa) noexcept;
  ~ScopedIsa();
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;
  bool engaged() const noexcept { return engaged_; }

 private:
  Isa previous_;
  bool engaged_;
};

}  // namespace ambibound::kernels
