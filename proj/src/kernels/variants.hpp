#pragma once

// Per-ISA entry points. Each variant lives in its own translation unit so
// that ISA-specific code generation cannot leak into shared inline symbols.

#include "fewdist/kernels.hpp"

namespace fewdist::simd::detail {

extern const KernelTable scalar_table;
#if defined(FEWDIST_X86_KERNELS)
extern const KernelTable avx2_table;
extern const KernelTable avx512_table;
#endif

}  // namespace fewdist::simd::detail
