#pragma once

// Inner-loop arithmetic used by pooling, importance marginals and the toy
// predictor. Every variant reduces with the same four-lane association:
// lane k accumulates elements 4i+k, lanes fold as (l0+l1)+(l2+l3), and the
// tail is added left to right. With FP contraction disabled the scalar and
// vector paths therefore produce bit-identical results.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace adaptive_pool::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  /// Sum of all elements.
  double (*sum)(std::span<const double> x);
  /// Inner product; spans must have equal length.
  double (*dot)(std::span<const double> x, std::span<const double> y);
  /// acc[i] += x[i]
  void (*add)(std::span<double> acc, std::span<const double> x);
  /// y[i] += a * x[i]
  void (*axpy)(double a, std::span<const double> x, std::span<double> y);
};

/// Table for `isa`, or nullptr when it was not compiled in or the CPU lacks it.
const KernelTable* kernels_for(Isa isa);

/// ISAs usable on this machine, scalar first.
std::vector<Isa> available_isas();

/// Best available table. ADAPTIVE_POOL_SIMD=scalar|avx2|neon overrides the
/// choice (falls back to scalar when the requested ISA is unavailable).
const KernelTable& active();

namespace scalar {
double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
void add(std::span<double> acc, std::span<const double> x);
void axpy(double a, std::span<const double> x, std::span<double> y);
}  // namespace scalar

}  // namespace adaptive_pool::kernels
