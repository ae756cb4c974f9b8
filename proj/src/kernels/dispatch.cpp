#include <atomic>
#include <cstdlib>
#include <string>

#include "fewdist/error.hpp"
#include "variants.hpp"

namespace fewdist::simd {
namespace {

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
#if defined(FEWDIST_X86_KERNELS)
    case Isa::avx2:
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
    case Isa::avx512:
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx512f") &&
             __builtin_cpu_supports("avx512vpopcntdq");
#endif
    default:
      return false;
  }
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("FEWDIST_KERNEL")) {
    if (auto isa = parse_isa(env)) {
      if (const KernelTable* t = kernel_table(*isa)) return t;
    }
  }
  return kernel_table(best_supported_isa());
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

const KernelTable* kernel_table(Isa isa) {
  if (!cpu_has(isa)) return nullptr;
  switch (isa) {
    case Isa::scalar:
      return &detail::scalar_table;
#if defined(FEWDIST_X86_KERNELS)
    case Isa::avx2:
      return &detail::avx2_table;
    case Isa::avx512:
      return &detail::avx512_table;
#endif
    default:
      return nullptr;
  }
}

std::vector<Isa> supported_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::avx512}) {
    if (kernel_table(isa) != nullptr) out.push_back(isa);
  }
  return out;
}

Isa best_supported_isa() { return supported_isas().back(); }

const KernelTable& active_kernels() {
  return *active_slot().load(std::memory_order_acquire);
}

void select_isa(Isa isa) {
  const KernelTable* t = kernel_table(isa);
  if (t == nullptr) {
    fail(ErrorKind::invalid_argument,
         "kernel variant '" + std::string(isa_name(isa)) +
             "' is not available on this build or CPU");
  }
  active_slot().store(t, std::memory_order_release);
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::avx512:
      return "avx512";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::avx512}) {
    if (isa_name(isa) == name) return isa;
  }
  return std::nullopt;
}

}  // namespace fewdist::simd
