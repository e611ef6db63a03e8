#include <arm_neon.h>

#include <cassert>

#include "kernels_impl.hpp"

namespace adaptive_pool::kernels::neon {

// Two float64x2 registers stand in for the four logical lanes: lo holds
// lanes 0-1, hi holds lanes 2-3.

namespace {

double fold(float64x2_t lo, float64x2_t hi) {
  double lane[4];
  vst1q_f64(lane, lo);
  vst1q_f64(lane + 2, hi);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace

double sum(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t blocked = n - n % 4;
  const double* p = x.data();
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < blocked; i += 4) {
    lo = vaddq_f64(lo, vld1q_f64(p + i));
    hi = vaddq_f64(hi, vld1q_f64(p + i + 2));
  }
  double total = fold(lo, hi);
  for (std::size_t i = blocked; i < n; ++i) total += p[i];
  return total;
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const std::size_t blocked = n - n % 4;
  const double* px = x.data();
  const double* py = y.data();
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < blocked; i += 4) {
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(px + i), vld1q_f64(py + i)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(px + i + 2), vld1q_f64(py + i + 2)));
  }
  double total = fold(lo, hi);
  for (std::size_t i = blocked; i < n; ++i) total += px[i] * py[i];
  return total;
}

void add(std::span<double> acc, std::span<const double> x) {
  assert(acc.size() == x.size());
  const std::size_t n = acc.size();
  const std::size_t blocked = n - n % 2;
  double* pa = acc.data();
  const double* px = x.data();
  for (std::size_t i = 0; i < blocked; i += 2) {
    vst1q_f64(pa + i, vaddq_f64(vld1q_f64(pa + i), vld1q_f64(px + i)));
  }
  for (std::size_t i = blocked; i < n; ++i) pa[i] += px[i];
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  const std::size_t n = y.size();
  const std::size_t blocked = n - n % 2;
  const double* px = x.data();
  double* py = y.data();
  const float64x2_t va = vdupq_n_f64(a);
  for (std::size_t i = 0; i < blocked; i += 2) {
    vst1q_f64(py + i, vaddq_f64(vld1q_f64(py + i), vmulq_f64(va, vld1q_f64(px + i))));
  }
  for (std::size_t i = blocked; i < n; ++i) py[i] += a * px[i];
}

}  // namespace adaptive_pool::kernels::neon
