#pragma once

#include <span>

namespace adaptive_pool::kernels {

#if defined(ADAPTIVE_POOL_HAS_AVX2)
namespace avx2 {
double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
void add(std::span<double> acc, std::span<const double> x);
void axpy(double a, std::span<const double> x, std::span<double> y);
}  // namespace avx2
#endif

#if defined(ADAPTIVE_POOL_HAS_NEON)
namespace neon {
double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
void add(std::span<double> acc, std::span<const double> x);
void axpy(double a, std::span<const double> x, std::span<double> y);
}  // namespace neon
#endif

}  // namespace adaptive_pool::kernels
