#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fewdist/bitset.hpp"
#include "fewdist/error.hpp"
#include "fewdist/limits.hpp"
#include "fewdist/parallel.hpp"

namespace fewdist::detail {

inline void check_table_budget(std::uint64_t bits, const Limits& limits,
                               const std::string& what) {
  const std::uint64_t bytes = DenseBitset::bytes_for(bits);
  if (bytes > limits.max_table_bytes) {
    fail(ErrorKind::budget, what + " needs " + std::to_string(bytes) +
                                " bytes, above --max-sieve-bytes=" +
                                std::to_string(limits.max_table_bytes));
  }
}

// Workers that fit the table budget when each keeps a private table.
inline unsigned affordable_workers(std::uint64_t bits, const Limits& limits,
                                   std::size_t tasks) {
  unsigned w = limits.workers == 0 ? default_workers() : limits.workers;
  w = static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(tasks, 1)));
  const std::uint64_t bytes = std::max<std::uint64_t>(DenseBitset::bytes_for(bits), 1);
  const std::uint64_t fit = std::max<std::uint64_t>(limits.max_table_bytes / bytes, 1);
  return static_cast<unsigned>(std::min<std::uint64_t>(w, fit));
}

// Runs mark(table, task) for every task, each worker on a private table, and
// ORs the tables together. The result does not depend on the worker count.
template <class Mark>
DenseBitset mark_partitioned(std::uint64_t bits, std::size_t tasks,
                             const Limits& limits, Mark&& mark) {
  const unsigned workers = affordable_workers(bits, limits, tasks);
  std::vector<DenseBitset> local(workers, DenseBitset(bits));
  parallel_for(tasks, workers, [&](unsigned w, std::size_t task) { mark(local[w], task); });
  for (unsigned w = 1; w < workers; ++w) local[0].merge(local[w]);
  return std::move(local[0]);
}

}  // namespace fewdist::detail
