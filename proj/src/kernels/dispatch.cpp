#include <cstdlib>
#include <string>

#include "adaptive_pool/kernels.hpp"
#include "kernels_impl.hpp"

namespace adaptive_pool::kernels {

namespace {

constexpr KernelTable kScalarTable{Isa::Scalar, &scalar::sum, &scalar::dot, &scalar::add,
                                   &scalar::axpy};

#if defined(ADAPTIVE_POOL_HAS_AVX2)
constexpr KernelTable kAvx2Table{Isa::Avx2, &avx2::sum, &avx2::dot, &avx2::add, &avx2::axpy};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}
#endif

#if defined(ADAPTIVE_POOL_HAS_NEON)
constexpr KernelTable kNeonTable{Isa::Neon, &neon::sum, &neon::dot, &neon::add, &neon::axpy};
#endif

const KernelTable& select_active() {
  const char* env = std::getenv("ADAPTIVE_POOL_SIMD");
  if (env != nullptr) {
    const std::string want(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (want == isa_name(isa)) {
        const KernelTable* table = kernels_for(isa);
        return table != nullptr ? *table : kScalarTable;
      }
    }
  }
  const auto isas = available_isas();
  return *kernels_for(isas.back());
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

const KernelTable* kernels_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return &kScalarTable;
    case Isa::Avx2:
#if defined(ADAPTIVE_POOL_HAS_AVX2)
      return cpu_has_avx2() ? &kAvx2Table : nullptr;
#else
      return nullptr;
#endif
    case Isa::Neon:
#if defined(ADAPTIVE_POOL_HAS_NEON)
      return &kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::Scalar};
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (kernels_for(isa) != nullptr) out.push_back(isa);
  }
  return out;
}

const KernelTable& active() {
  static const KernelTable& table = select_active();
  return table;
}

}  // namespace adaptive_pool::kernels
