#include <atomic>
#include <cstdlib>
#include <string_view>

#include "ambibound/kernels.hpp"

namespace ambibound::kernels {

#ifndef AMBIBOUND_HAVE_AVX2
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif
#ifndef AMBIBOUND_HAVE_NEON
const KernelTable* neon_table() noexcept { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(AMBIBOUND_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return &scalar_table();
    case Isa::avx2: return cpu_has_avx2() ? avx2_table() : nullptr;
    case Isa::neon: return neon_table();
  }
  return nullptr;
}

const KernelTable* select_initial() noexcept {
  if (const char* env = std::getenv("AMBIBOUND_ISA")) {
    const std::string_view want(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (want == isa_name(isa)) {
        if (const KernelTable* t = table_for(isa)) return t;
      }
    }
  }
  if (const KernelTable* t = table_for(Isa::avx2)) return t;
  if (const KernelTable* t = table_for(Isa::neon)) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{select_initial()};
  return table;
}

}  // namespace

bool isa_supported(Isa isa) noexcept { return table_for(isa) != nullptr; }

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

const KernelTable& active() noexcept {
  return *current().load(std::memory_order_acquire);
}

bool set_active(Isa isa) noexcept {
  const KernelTable* t = table_for(isa);
  if (t == nullptr) return false;
  current().store(t, std::memory_order_release);
  return true;
}

ScopedIsa::ScopedIsa(Isa isa) noexcept
    : previous_(active().isa), engaged_(set_active(isa)) {}

ScopedIsa::~ScopedIsa() {
  if (engaged_) set_active(previous_);
}

}  // namespace ambibound::kernels
