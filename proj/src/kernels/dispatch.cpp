#include <cstdlib>
#include <string_view>

#include "irltrack/kernels/quad4.hpp"

namespace irltrack::kernels {

namespace {

constexpr KernelTable kScalar{Isa::kScalar, &quad_form4_scalar, &sym_rank1_update4_scalar};
#if defined(IRLTRACK_HAVE_AVX2_TU)
constexpr KernelTable kAvx2{Isa::kAvx2, &quad_form4_avx2, &sym_rank1_update4_avx2};
#endif

const KernelTable& select() {
  const char* forced = std::getenv("IRLTRACK_ISA");
  if (forced != nullptr && std::string_view(forced) == "scalar") return kScalar;
  return table_for(Isa::kAvx2);
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& table_for(Isa isa) {
#if defined(IRLTRACK_HAVE_AVX2_TU)
  if (isa == Isa::kAvx2 && cpu_has_avx2()) return kAvx2;
#endif
  (void)isa;
  return kScalar;
}

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace irltrack::kernels
