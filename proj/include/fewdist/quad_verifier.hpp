#pragma once

// Exhaustive check that every 4-point subset of a lattice point set spans at
// least three distinct distances, plus exact-integer detectors for the
// two-distance shapes (square, regular-pentagon trapezoid, and the shapes
// containing an equilateral triangle).

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "fewdist/lattice.hpp"
#include "fewdist/limits.hpp"

namespace fewdist {

// Four distinct points and their six pairwise squared distances.
class Quad {
 public:
  static Quad from_points(const LatticeModel& model,
                          const std::array<LatticePoint, 4>& points);

  // For externally supplied distance lists: the stored multiset must equal
  // the one recomputed from the points, otherwise ErrorKind::invalid_argument.
  static Quad from_parts(const LatticeModel& model,
                         const std::array<LatticePoint, 4>& points,
                         const std::array<SquaredDistance, 6>& distances);

  const LatticeModel& model() const noexcept { return model_; }
  const std::array<LatticePoint, 4>& points() const noexcept { return points_; }
  // Sorted ascending.
  const std::array<SquaredDistance, 6>& distances() const noexcept { return sorted_; }

  SquaredDistance distance(int i, int j) const;

  friend bool operator==(const Quad&, const Quad&) = default;

 private:
  Quad(const LatticeModel& model, const std::array<LatticePoint, 4>& points);

  LatticeModel model_;
  std::array<LatticePoint, 4> points_;
  std::array<std::array<SquaredDistance, 4>, 4> pairwise_{};
  std::array<SquaredDistance, 6> sorted_{};
};

Quad quad_distances(const LatticeModel& model, const std::array<LatticePoint, 4>& points);

// Number of distinct values among the six squared distances.
int distinct_count(const Quad& quad);

enum class ShapeTag { square, pentagon_trapezoid, equilateral_bearing, not_two_distance };

std::string_view to_string(ShapeTag tag);

// Short and long pair counts of a two-distance quad.
struct EdgeSplit {
  int short_edges = 0;
  int long_edges = 0;

  friend bool operator==(const EdgeSplit&, const EdgeSplit&) = default;
};

struct TwoDistanceClass {
  ShapeTag tag = ShapeTag::not_two_distance;
  std::optional<EdgeSplit> split;  // empty iff tag == not_two_distance

  friend bool operator==(const TwoDistanceClass&, const TwoDistanceClass&) = default;
};

bool is_square_quad(const Quad& quad);
bool contains_equilateral_triangle(const Quad& quad);

// Exact test of long/short == (3 + sqrt 5) / 2, i.e. 2*long - 3*short ==
// short*sqrt(5), squared out to integers.
bool is_golden_ratio_squared(SquaredDistance short_distance, SquaredDistance long_distance);

// Requires exactly two distinct distances.
bool pentagon_ratio_test(const Quad& quad);

struct DetectorFlags {
  bool square = false;
  bool pentagon_trapezoid = false;
  bool equilateral = false;
};

// Exactly one detector must fire on a two-distance quad; anything else throws
// ErrorKind::integrity.
TwoDistanceClass resolve_two_distance_class(const DetectorFlags& flags, EdgeSplit split);

TwoDistanceClass classify_two_distance(const Quad& quad);

enum class Verdict { pass, fail };

std::string_view to_string(Verdict verdict);

struct VerificationReport {
  // C(n, 4) on pass; the 1-based lexicographic rank of the witness on fail.
  std::uint64_t scanned = 0;
  Verdict verdict = Verdict::pass;
  std::optional<Quad> witness;
  std::optional<TwoDistanceClass> witness_class;
  // Indices of the witness points in the scanned set.
  std::optional<std::array<std::size_t, 4>> witness_indices;
};

struct ScanOptions {
  // Stop at the first two-distance quad. Disabling it scans every subset and
  // must report the same witness.
  bool early_exit = true;
};

// Scans all 4-subsets in lexicographic order of point indices. Refuses with
// ErrorKind::budget when C(n, 4) exceeds limits.max_quad_visits.
VerificationReport verify_local_constraint(const PointSet& points, const Limits& limits = {},
                                           const ScanOptions& options = {});

struct ShapeCensus {
  std::uint64_t points = 0;
  std::uint64_t triples_examined = 0;
  std::uint64_t quads_examined = 0;
  std::uint64_t equilateral_triples = 0;
  std::uint64_t two_distance_quads = 0;
  std::uint64_t squares = 0;
  std::uint64_t pentagon_trapezoids = 0;
  std::uint64_t equilateral_bearing = 0;
  // False when the quad budget stopped the scan early; the counts then cover
  // only the subsets whose first point index is below `first_index_limit`.
  bool complete = true;
  std::uint64_t first_index_limit = 0;

  friend bool operator==(const ShapeCensus&, const ShapeCensus&) = default;
};

ShapeCensus scan_shapes(const PointSet& points, const Limits& limits = {});

// C(n, r), throwing ErrorKind::overflow beyond 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

// 1-based rank of the strictly increasing index tuple among all 4-subsets of
// {0..n-1} in lexicographic order.
std::uint64_t lex_rank(const std::array<std::size_t, 4>& indices, std::size_t n);

}  // namespace fewdist
