#include "ambibound/kernels.hpp"

#include <cassert>

namespace ambibound::kernels {
namespace {

void conj_mul(std::span<const cplx> a, std::span<const cplx> b,
              std::span<cplx> out) {
  assert(a.size() == b.size() && out.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br + ai * bi, ar * bi - ai * br);
  }
}

void mul(std::span<const cplx> a, std::span<const cplx> b,
         std::span<cplx> out) {
  assert(a.size() == b.size() && out.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br - ai * bi, ar * bi + ai * br);
  }
}

cplx conj_dot(std::span<const cplx> a, std::span<const cplx> b) {
  assert(a.size() == b.size());
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

void abs2(std::span<const cplx> v, std::span<double> out) {
  assert(v.size() == out.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
  }
}

double sum_abs2(std::span<const cplx> v) {
  double acc = 0.0;
  for (const cplx& z : v) acc += z.real() * z.real() + z.imag() * z.imag();
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

constexpr KernelTable kScalar{Isa::scalar, conj_mul, mul, conj_dot,
                              abs2,        sum_abs2, dot};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace ambibound::kernels
