#pragma once

// Points of the anisotropic lattice {(x, sqrt(k) * y) : x, y integers}.
//
// Everything is kept in integer coordinates: the squared Euclidean distance
// between two lattice points is u^2 + k*v^2 for the coordinate difference
// (u, v), and inner products are u1*v1 + k*u2*v2. No floating point is used.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fewdist/limits.hpp"

namespace fewdist {

using SquaredDistance = std::int64_t;

// Boxes are limited to side 2^30 so that every coordinate difference fits in
// 31 bits.
inline constexpr std::int64_t kMaxBoxSide = std::int64_t{1} << 30;
inline constexpr std::int64_t kMaxCoordinate = kMaxBoxSide - 1;

class LatticeModel {
 public:
  explicit LatticeModel(std::int64_t k);

  std::int64_t k() const noexcept { return k_; }

  friend bool operator==(const LatticeModel&, const LatticeModel&) = default;

 private:
  std::int64_t k_;
};

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

// Coordinate difference of two lattice points, in lattice units.
struct Displacement {
  std::int64_t du = 0;
  std::int64_t dv = 0;

  friend bool operator==(const Displacement&, const Displacement&) = default;
};

Displacement operator-(const LatticePoint& p, const LatticePoint& q);
LatticePoint operator+(const LatticePoint& p, const Displacement& t);

// Distinct points under one model. A set produced by build_box remembers its
// side length so that distance queries can use the value grid.
class PointSet {
 public:
  // Rejects duplicate points, coordinates outside [-kMaxCoordinate,
  // kMaxCoordinate], and sets whose diameter overflows 64 bits.
  PointSet(LatticeModel model, std::vector<LatticePoint> points);

  const LatticeModel& model() const noexcept { return model_; }
  std::span<const LatticePoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const LatticePoint& operator[](std::size_t i) const { return points_[i]; }

  // Side m when this is exactly the box {0..m-1}^2 in row-major order.
  std::optional<std::int64_t> box_side() const noexcept { return box_side_; }

  // Upper bound on any squared distance within the set (from the bounding box).
  SquaredDistance diameter_bound() const noexcept { return diameter_bound_; }

 private:
  friend PointSet build_box(const LatticeModel&, std::int64_t, const Limits&);
  PointSet(LatticeModel model, std::vector<LatticePoint> points,
           std::int64_t box_side);

  LatticeModel model_;
  std::vector<LatticePoint> points_;
  std::optional<std::int64_t> box_side_;
  SquaredDistance diameter_bound_ = 0;
};

// The m*m points (x, y) with 0 <= x, y < m, y outer and x inner.
PointSet build_box(const LatticeModel& model, std::int64_t m,
                   const Limits& limits = {});

// (p.x - q.x)^2 + k * (p.y - q.y)^2; throws ErrorKind::overflow rather than
// wrapping.
SquaredDistance squared_distance(const LatticeModel& model,
                                 const LatticePoint& p, const LatticePoint& q);

// Inner product of the planar vectors (u.du, sqrt(k) u.dv) and
// (v.du, sqrt(k) v.dv).
std::int64_t dot_product(const LatticeModel& model, const Displacement& u,
                         const Displacement& v);

// (k + 1) * (m - 1)^2, the largest squared distance inside the m-box.
std::int64_t max_squared_distance_bound(std::int64_t m, std::int64_t k);

// Sorted distinct nonzero squared distances. Full boxes go through the value
// grid; any other set through the pair loop.
std::vector<SquaredDistance> distinct_squared_distances(
    const PointSet& points, const Limits& limits = {});

// Always the O(n^2) loop over unordered pairs, whatever the set's shape.
std::vector<SquaredDistance> pairwise_distinct_squared_distances(
    const PointSet& points, const Limits& limits = {});
std::uint64_t pairwise_distinct_count(const PointSet& points,
                                      const Limits& limits = {});

// Distinct nonzero values of u^2 + k*v^2 over 0 <= u, v < m, which are exactly
// the squared distances of the m-box. O(m^2) time.
std::uint64_t distinct_count_via_value_grid(const LatticeModel& model,
                                            std::int64_t m,
                                            const Limits& limits = {});
std::vector<SquaredDistance> value_grid_squared_distances(
    const LatticeModel& model, std::int64_t m, const Limits& limits = {});

// First n points in the set's order.
PointSet take_prefix_subset(const PointSet& points, std::size_t n);

}  // namespace fewdist
