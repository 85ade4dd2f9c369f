#include <cstdlib>
#include <string_view>

#include "lbpkit/kernels.hpp"

namespace lbpkit::kernels {

#if defined(LBPKIT_HAVE_AVX2)
const KernelTable& avx2_table_unchecked() noexcept;
#endif

const KernelTable* avx2_table() noexcept {
#if defined(LBPKIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

bool force_scalar() {
  const char* v = std::getenv("LBPKIT_FORCE_SCALAR");
  return v != nullptr && *v != '\0' && std::string_view(v) != "0";
}

const KernelTable& select() {
  if (!force_scalar()) {
    if (const KernelTable* t = avx2_table()) return *t;
  }
  return scalar_table();
}

}  // namespace

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

}  // namespace lbpkit::kernels
