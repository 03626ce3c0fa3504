#include <cstdlib>
#include <string_view>

#include "asymrep/kernels.hpp"

namespace asymrep::kernels {

#if defined(ASYMREP_HAVE_AVX2)
namespace detail {
const KernelTable* avx2_table();
}
#endif

const KernelTable* avx2() {
#if defined(ASYMREP_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

namespace {
const KernelTable& pick() {
  const char* env = std::getenv("ASYMREP_SIMD");
  std::string_view want = env ? env : "";
  if (want == "scalar") return scalar();
  if (const KernelTable* t = avx2()) return *t;
  return scalar();
}
}  // namespace

const KernelTable& active() {
  static const KernelTable& table = pick();
  return table;
}

}  // namespace asymrep::kernels
