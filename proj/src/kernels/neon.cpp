// NEON variants for AArch64. Advanced SIMD is mandatory on AArch64, so no
// runtime feature probe is needed beyond the architecture itself.

#include "ambibound/kernels.hpp"

#include <arm_neon.h>

#include <cassert>

namespace ambibound::kernels {
namespace {

// One float64x2_t holds one complex double: [re im].
inline const double* raw(const cplx* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* raw(cplx* p) { return reinterpret_cast<double*>(p); }

const float64x2_t kConjSign = {1.0, -1.0};
const float64x2_t kMulSign = {-1.0, 1.0};

// conj(a) * b = [ar*br + ai*bi, ar*bi - ai*br]
inline float64x2_t conj_mul1(float64x2_t a, float64x2_t b) {
  const float64x2_t a_re = vdupq_laneq_f64(a, 0);
  const float64x2_t a_im = vdupq_laneq_f64(a, 1);
  const float64x2_t b_sw = vextq_f64(b, b, 1);  // bi br
  return vfmaq_f64(vmulq_f64(a_re, b), vmulq_f64(a_im, b_sw), kConjSign);
}

// a * b = [ar*br - ai*bi, ar*bi + ai*br]
inline float64x2_t mul1(float64x2_t a, float64x2_t b) {
  const float64x2_t a_re = vdupq_laneq_f64(a, 0);
  const float64x2_t a_im = vdupq_laneq_f64(a, 1);
  const float64x2_t b_sw = vextq_f64(b, b, 1);
  return vfmaq_f64(vmulq_f64(a_re, b), vmulq_f64(a_im, b_sw), kMulSign);
}

void conj_mul(std::span<const cplx> a, std::span<const cplx> b,
              std::span<cplx> out) {
  assert(a.size() == b.size() && out.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    vst1q_f64(raw(out.data() + i),
              conj_mul1(vld1q_f64(raw(a.data() + i)),
                        vld1q_f64(raw(b.data() + i))));
  }
}

void mul(std::span<const cplx> a, std::span<const cplx> b,
         std::span<cplx> out) {
  assert(a.size() == b.size() && out.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    vst1q_f64(raw(out.data() + i), mul1(vld1q_f64(raw(a.data() + i)),
                                        vld1q_f64(raw(b.data() + i))));
  }
}

cplx conj_dot(std::span<const cplx> a, std::span<const cplx> b) {
  assert(a.size() == b.size());
  float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= a.size(); i += 2) {
    acc0 = vaddq_f64(acc0, conj_mul1(vld1q_f64(raw(a.data() + i)),
                                     vld1q_f64(raw(b.data() + i))));
    acc1 = vaddq_f64(acc1, conj_mul1(vld1q_f64(raw(a.data() + i + 1)),
                                     vld1q_f64(raw(b.data() + i + 1))));
  }
  if (i < a.size()) {
    acc0 = vaddq_f64(acc0, conj_mul1(vld1q_f64(raw(a.data() + i)),
                                     vld1q_f64(raw(b.data() + i))));
  }
  const float64x2_t acc = vaddq_f64(acc0, acc1);
  return {vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1)};
}

void abs2(std::span<const cplx> v, std::span<double> out) {
  assert(v.size() == out.size());
  std::size_t i = 0;
  for (; i + 2 <= v.size(); i += 2) {
    const float64x2_t v0 = vld1q_f64(raw(v.data() + i));
    const float64x2_t v1 = vld1q_f64(raw(v.data() + i + 1));
    vst1q_f64(out.data() + i,
              vpaddq_f64(vmulq_f64(v0, v0), vmulq_f64(v1, v1)));
  }
  for (; i < v.size(); ++i) {
    out[i] = v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
  }
}

double sum_abs2(std::span<const cplx> v) {
  float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= v.size(); i += 2) {
    const float64x2_t v0 = vld1q_f64(raw(v.data() + i));
    const float64x2_t v1 = vld1q_f64(raw(v.data() + i + 1));
    acc0 = vfmaq_f64(acc0, v0, v0);
    acc1 = vfmaq_f64(acc1, v1, v1);
  }
  if (i < v.size()) {
    const float64x2_t v0 = vld1q_f64(raw(v.data() + i));
    acc0 = vfmaq_f64(acc0, v0, v0);
  }
  return vaddvq_f64(vaddq_f64(acc0, acc1));
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a.data() + i), vld1q_f64(b.data() + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a.data() + i + 2),
                     vld1q_f64(b.data() + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

const KernelTable kNeon{Isa::neon, conj_mul, mul, conj_dot,
                        abs2,      sum_abs2, dot};

}  // namespace

const KernelTable* neon_table() noexcept { return &kNeon; }

}  // namespace ambibound::kernels
