#include "impl.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace shapemetrics::kernels {

namespace {

constexpr KernelTable kScalarTable{Isa::scalar, "scalar", &scalar::bin_indices,
                                   &scalar::moment_sums, &scalar::adjacent_white_pairs};

#if defined(SHAPEMETRICS_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Isa::avx2, "avx2", &avx2::bin_indices, &avx2::moment_sums,
                                 &avx2::adjacent_white_pairs};
#endif

const KernelTable& select_active() {
  if (const char* forced = std::getenv("SHAPEMETRICS_ISA"); forced && *forced) {
    const std::string name(forced);
    if (name == "scalar") return kScalarTable;
    if (name == "avx2") return kernels_for(Isa::avx2);
    throw std::invalid_argument("SHAPEMETRICS_ISA: unknown instruction set '" + name + "'");
  }
  if (isa_supported(Isa::avx2)) return kernels_for(Isa::avx2);
  return kScalarTable;
}

}  // namespace

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(SHAPEMETRICS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_supported(isa))
    throw std::runtime_error("instruction set not available: " + std::string(isa_name(isa)));
  switch (isa) {
    case Isa::scalar:
      return kScalarTable;
    case Isa::avx2:
#if defined(SHAPEMETRICS_HAVE_AVX2)
      return kAvx2Table;
#else
      break;
#endif
  }
  throw std::runtime_error("instruction set not compiled in");
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select_active();
  return table;
}

std::vector<Isa> supported_isas() {
  std::vector<Isa> out{Isa::scalar};
  if (isa_supported(Isa::avx2)) out.push_back(Isa::avx2);
  return out;
}

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace shapemetrics::kernels
