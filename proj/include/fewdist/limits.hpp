#pragma once

#include <cstdint>

namespace fewdist {

// Resource caps shared by every exhaustive operation. Operations check these
// before allocating or scanning and refuse with ErrorKind::budget.
struct Limits {
  // Largest membership table (distance grid or sieve). 256 MiB is one bit per
  // integer up to 2^31.
  std::uint64_t max_table_bytes = std::uint64_t{1} << 28;
  // Largest number of 4-point subsets a scan may visit.
  std::uint64_t max_quad_visits = 5'000'000'000;
  // Largest point set build_box will materialize.
  std::uint64_t max_points = std::uint64_t{1} << 24;
  // 0 selects the hardware concurrency.
  unsigned workers = 1;
};

}  // namespace fewdist
