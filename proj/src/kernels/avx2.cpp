// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma
// and must only be entered after a runtime CPU check (see dispatch.cpp).

#include "ambibound/kernels.hpp"

#include <immintrin.h>

#include <cassert>

namespace ambibound::kernels {
namespace {

// One __m256d holds two interleaved complex doubles: [re0 im0 re1 im1].
inline const double* raw(const cplx* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* raw(cplx* p) { return reinterpret_cast<double*>(p); }

// conj(a) * b for two packed complex values.
inline __m256d conj_mul2(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);        // ar ar
  const __m256d a_im = _mm256_permute_pd(a, 0xF);   // ai ai
  const __m256d b_sw = _mm256_permute_pd(b, 0x5);   // bi br
  // even lanes: ar*br + ai*bi, odd lanes: ar*bi - ai*br
  return _mm256_fmsubadd_pd(a_re, b, _mm256_mul_pd(a_im, b_sw));
}

inline __m256d mul2(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);
  const __m256d a_im = _mm256_permute_pd(a, 0xF);
  const __m256d b_sw = _mm256_permute_pd(b, 0x5);
  // even lanes: ar*br - ai*bi, odd lanes: ar*bi + ai*br
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_sw));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void conj_mul(std::span<const cplx> a, std::span<const cplx> b,
              std::span<cplx> out) {
  assert(a.size() == b.size() && out.size() == a.size());
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(raw(a.data() + i));
    const __m256d vb = _mm256_loadu_pd(raw(b.data() + i));
    _mm256_storeu_pd(raw(out.data() + i), conj_mul2(va, vb));
  }
  for (; i < n; ++i) out[i] = std::conj(a[i]) * b[i];
}

void mul(std::span<const cplx> a, std::span<const cplx> b,
         std::span<cplx> out) {
  assert(a.size() == b.size() && out.size() == a.size());
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(raw(a.data() + i));
    const __m256d vb = _mm256_loadu_pd(raw(b.data() + i));
    _mm256_storeu_pd(raw(out.data() + i), mul2(va, vb));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br - ai * bi, ar * bi + ai * br);
  }
}

cplx conj_dot(std::span<const cplx> a, std::span<const cplx> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  // acc_p collects (ar*br, ar*bi), acc_q collects (ai*bi, ai*br).
  __m256d acc_p0 = _mm256_setzero_pd(), acc_q0 = _mm256_setzero_pd();
  __m256d acc_p1 = _mm256_setzero_pd(), acc_q1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a0 = _mm256_loadu_pd(raw(a.data() + i));
    const __m256d b0 = _mm256_loadu_pd(raw(b.data() + i));
    const __m256d a1 = _mm256_loadu_pd(raw(a.data() + i + 2));
    const __m256d b1 = _mm256_loadu_pd(raw(b.data() + i + 2));
    acc_p0 = _mm256_fmadd_pd(_mm256_movedup_pd(a0), b0, acc_p0);
    acc_q0 = _mm256_fmadd_pd(_mm256_permute_pd(a0, 0xF),
                             _mm256_permute_pd(b0, 0x5), acc_q0);
    acc_p1 = _mm256_fmadd_pd(_mm256_movedup_pd(a1), b1, acc_p1);
    acc_q1 = _mm256_fmadd_pd(_mm256_permute_pd(a1, 0xF),
                             _mm256_permute_pd(b1, 0x5), acc_q1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d a0 = _mm256_loadu_pd(raw(a.data() + i));
    const __m256d b0 = _mm256_loadu_pd(raw(b.data() + i));
    acc_p0 = _mm256_fmadd_pd(_mm256_movedup_pd(a0), b0, acc_p0);
    acc_q0 = _mm256_fmadd_pd(_mm256_permute_pd(a0, 0xF),
                             _mm256_permute_pd(b0, 0x5), acc_q0);
  }
  const __m256d p = _mm256_add_pd(acc_p0, acc_p1);
  const __m256d q = _mm256_add_pd(acc_q0, acc_q1);
  alignas(32) double ps[4];
  alignas(32) double qs[4];
  _mm256_store_pd(ps, p);
  _mm256_store_pd(qs, q);
  double re = (ps[0] + qs[0]) + (ps[2] + qs[2]);
  double im = (ps[1] - qs[1]) + (ps[3] - qs[3]);
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

void abs2(std::span<const cplx> v, std::span<double> out) {
  assert(v.size() == out.size());
  const std::size_t n = v.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(raw(v.data() + i));
    const __m256d v1 = _mm256_loadu_pd(raw(v.data() + i + 2));
    // hadd gives [|v0|^2 |v2|^2 |v1|^2 |v3|^2]; restore element order.
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0),
                                     _mm256_mul_pd(v1, v1));
    _mm256_storeu_pd(out.data() + i, _mm256_permute4x64_pd(h, 0xD8));
  }
  for (; i < n; ++i) {
    out[i] = v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
  }
}

double sum_abs2(std::span<const cplx> v) {
  const std::size_t n = v.size();
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(raw(v.data() + i));
    const __m256d v1 = _mm256_loadu_pd(raw(v.data() + i + 2));
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d v0 = _mm256_loadu_pd(raw(v.data() + i));
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    acc += v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
  }
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i),
                           _mm256_loadu_pd(b.data() + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 4),
                           _mm256_loadu_pd(b.data() + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i),
                           _mm256_loadu_pd(b.data() + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

constexpr KernelTable kAvx2{Isa::avx2, conj_mul, mul, conj_dot,
                            abs2,      sum_abs2, dot};

}  // namespace

const KernelTable* avx2_table() noexcept { return &kAvx2; }

}  // namespace ambibound::kernels
