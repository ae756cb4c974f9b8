#include "fewdist/lattice.hpp"

#include <algorithm>
#include <string>

#include "fewdist/bitset.hpp"
#include "fewdist/checked.hpp"
#include "fewdist/error.hpp"
#include "fewdist/kernels.hpp"
#include "marking.hpp"

namespace fewdist {
namespace {

using detail::check_table_budget;
using detail::mark_partitioned;

// The SIMD pair kernels work in 32-bit lanes.
constexpr std::int64_t kKernelDistanceLimit = std::int64_t{1} << 31;

void require_box_side(std::int64_t m, std::int64_t min_side) {
  require(m >= min_side, "box side m must be >= " + std::to_string(min_side) +
                             " (got " + std::to_string(m) + ")");
  if (m > kMaxBoxSide) {
    fail(ErrorKind::overflow, "box side m=" + std::to_string(m) +
                                  " exceeds the 64-bit safe bound 2^30");
  }
}

DenseBitset value_grid(const LatticeModel& model, std::int64_t m,
                       const Limits& limits) {
  require_box_side(m, 2);
  const std::int64_t bound = max_squared_distance_bound(m, model.k());
  const auto bits = static_cast<std::uint64_t>(bound) + 1;
  check_table_budget(bits, limits, "distance value grid");
  const std::int64_t k = model.k();
  const auto side = static_cast<std::size_t>(m);
  DenseBitset grid = mark_partitioned(bits, side, limits, [&](DenseBitset& t, std::size_t u) {
    const auto uu = static_cast<std::int64_t>(u);
    for (std::int64_t v = 0; v < m; ++v) t.set(static_cast<std::uint64_t>(uu * uu + k * v * v));
  });
  grid.words()[0] &= ~std::uint64_t{1};  // the zero difference
  return grid;
}

std::vector<SquaredDistance> to_values(const std::vector<std::uint64_t>& positions) {
  return {positions.begin(), positions.end()};
}

}  // namespace

LatticeModel::LatticeModel(std::int64_t k) : k_(k) {
  require(k >= 1, "anisotropy k must be >= 1 (got " + std::to_string(k) + ")");
}

Displacement operator-(const LatticePoint& p, const LatticePoint& q) {
  return {checked::sub(p.x, q.x), checked::sub(p.y, q.y)};
}

LatticePoint operator+(const LatticePoint& p, const Displacement& t) {
  return {checked::add(p.x, t.du), checked::add(p.y, t.dv)};
}

PointSet::PointSet(LatticeModel model, std::vector<LatticePoint> points)
    : model_(model), points_(std::move(points)) {
  if (points_.empty()) return;
  std::int64_t min_x = points_[0].x, max_x = min_x;
  std::int64_t min_y = points_[0].y, max_y = min_y;
  for (const LatticePoint& p : points_) {
    if (p.x < -kMaxCoordinate || p.x > kMaxCoordinate || p.y < -kMaxCoordinate ||
        p.y > kMaxCoordinate) {
      fail(ErrorKind::overflow, "point (" + std::to_string(p.x) + "," +
                                    std::to_string(p.y) +
                                    ") lies outside the supported coordinate range");
    }
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  std::vector<LatticePoint> sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    fail(ErrorKind::invalid_argument, "duplicate point (" + std::to_string(dup->x) +
                                          "," + std::to_string(dup->y) + ")");
  }
  diameter_bound_ = squared_distance(model_, {min_x, min_y}, {max_x, max_y});
}

PointSet::PointSet(LatticeModel model, std::vector<LatticePoint> points,
                   std::int64_t box_side)
    : model_(model),
      points_(std::move(points)),
      box_side_(box_side),
      diameter_bound_(max_squared_distance_bound(box_side, model.k())) {}

PointSet build_box(const LatticeModel& model, std::int64_t m, const Limits& limits) {
  require_box_side(m, 1);
  max_squared_distance_bound(m, model.k());  // throws when the box overflows
  const auto count = static_cast<std::uint64_t>(checked::mul(m, m));
  if (count > limits.max_points) {
    fail(ErrorKind::budget, "box of side " + std::to_string(m) + " has " +
                                std::to_string(count) + " points, above the cap of " +
                                std::to_string(limits.max_points));
  }
  std::vector<LatticePoint> points;
  points.reserve(count);
  for (std::int64_t y = 0; y < m; ++y) {
    for (std::int64_t x = 0; x < m; ++x) points.push_back({x, y});
  }
  return PointSet(model, std::move(points), m);
}

SquaredDistance squared_distance(const LatticeModel& model, const LatticePoint& p,
                                 const LatticePoint& q) {
  const Displacement d = p - q;
  return dot_product(model, d, d);
}

std::int64_t dot_product(const LatticeModel& model, const Displacement& u,
                         const Displacement& v) {
  return checked::add(checked::mul(u.du, v.du),
                      checked::mul(model.k(), checked::mul(u.dv, v.dv)));
}

std::int64_t max_squared_distance_bound(std::int64_t m, std::int64_t k) {
  require(m >= 1, "box side m must be >= 1");
  require(k >= 1, "anisotropy k must be >= 1");
  const std::int64_t side = m - 1;
  return checked::mul(checked::add(k, 1), checked::mul(side, side));
}

std::vector<SquaredDistance> distinct_squared_distances(const PointSet& points,
                                                        const Limits& limits) {
  require(points.size() >= 2, "distinct distances need at least 2 points");
  if (const auto side = points.box_side()) {
    return value_grid_squared_distances(points.model(), *side, limits);
  }
  return pairwise_distinct_squared_distances(points, limits);
}

std::vector<SquaredDistance> pairwise_distinct_squared_distances(const PointSet& points,
                                                                 const Limits& limits) {
  require(points.size() >= 2, "distinct distances need at least 2 points");
  const std::size_t n = points.size();
  const std::int64_t k = points.model().k();
  const SquaredDistance bound = points.diameter_bound();
  const auto bits = static_cast<std::uint64_t>(bound) + 1;

  if (bound < kKernelDistanceLimit && k < kKernelDistanceLimit &&
      DenseBitset::bytes_for(bits) <= limits.max_table_bytes) {
    std::vector<std::int32_t> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = static_cast<std::int32_t>(points[i].x);
      ys[i] = static_cast<std::int32_t>(points[i].y);
    }
    const simd::KernelTable& kernels = simd::active_kernels();
    DenseBitset seen = mark_partitioned(bits, n - 1, limits, [&](DenseBitset& t, std::size_t i) {
      kernels.mark_distances(xs[i], ys[i], xs.data() + i + 1, ys.data() + i + 1,
                             n - i - 1, static_cast<std::int32_t>(k), t.words().data());
    });
    return to_values(seen.set_positions());
  }

  // Sparse fallback for sets whose diameter is too large for a table.
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (pairs > limits.max_table_bytes / sizeof(SquaredDistance)) {
    fail(ErrorKind::budget, "pair list of " + std::to_string(pairs) +
                                " distances exceeds --max-sieve-bytes=" +
                                std::to_string(limits.max_table_bytes));
  }
  std::vector<SquaredDistance> values;
  values.reserve(pairs);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      values.push_back(squared_distance(points.model(), points[i], points[j]));
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::uint64_t pairwise_distinct_count(const PointSet& points, const Limits& limits) {
  return pairwise_distinct_squared_distances(points, limits).size();
}

std::uint64_t distinct_count_via_value_grid(const LatticeModel& model, std::int64_t m,
                                            const Limits& limits) {
  return value_grid(model, m, limits).count();
}

std::vector<SquaredDistance> value_grid_squared_distances(const LatticeModel& model,
                                                          std::int64_t m,
                                                          const Limits& limits) {
  return to_values(value_grid(model, m, limits).set_positions());
}

PointSet take_prefix_subset(const PointSet& points, std::size_t n) {
  require(n >= 1, "prefix size n must be >= 1");
  require(n <= points.size(), "prefix size n=" + std::to_string(n) +
                                  " exceeds the set size " + std::to_string(points.size()));
  if (n == points.size()) return points;
  std::vector<LatticePoint> prefix(points.points().begin(),
                                   points.points().begin() + static_cast<std::ptrdiff_t>(n));
  return PointSet(points.model(), std::move(prefix));
}

}  // namespace fewdist
