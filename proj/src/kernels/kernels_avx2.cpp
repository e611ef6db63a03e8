// Compiled with -mavx2 only (no -mfma): mul and add stay separate roundings.

#include <immintrin.h>

#include <cassert>

#include "kernels_impl.hpp"

namespace adaptive_pool::kernels::avx2 {

namespace {

double fold(__m256d acc) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace

double sum(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t blocked = n - n % 4;
  const double* p = x.data();
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < blocked; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(p + i));
  }
  double total = fold(acc);
  for (std::size_t i = blocked; i < n; ++i) total += p[i];
  return total;
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const std::size_t blocked = n - n % 4;
  const double* px = x.data();
  const double* py = y.data();
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < blocked; i += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i));
    acc = _mm256_add_pd(acc, prod);
  }
  double total = fold(acc);
  for (std::size_t i = blocked; i < n; ++i) total += px[i] * py[i];
  return total;
}

void add(std::span<double> acc, std::span<const double> x) {
  assert(acc.size() == x.size());
  const std::size_t n = acc.size();
  const std::size_t blocked = n - n % 4;
  double* pa = acc.data();
  const double* px = x.data();
  for (std::size_t i = 0; i < blocked; i += 4) {
    _mm256_storeu_pd(pa + i, _mm256_add_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(px + i)));
  }
  for (std::size_t i = blocked; i < n; ++i) pa[i] += px[i];
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  const std::size_t n = y.size();
  const std::size_t blocked = n - n % 4;
  const double* px = x.data();
  double* py = y.data();
  const __m256d va = _mm256_set1_pd(a);
  for (std::size_t i = 0; i < blocked; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(px + i));
    _mm256_storeu_pd(py + i, _mm256_add_pd(_mm256_loadu_pd(py + i), prod));
  }
  for (std::size_t i = blocked; i < n; ++i) py[i] += a * px[i];
}

}  // namespace adaptive_pool::kernels::avx2
