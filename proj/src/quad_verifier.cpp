#include "fewdist/quad_verifier.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <string>
#include <vector>

#include "fewdist/checked.hpp"
#include "fewdist/error.hpp"
#include "fewdist/kernels.hpp"
#include "fewdist/parallel.hpp"
#include "intmath.hpp"

namespace fewdist {
namespace {

constexpr std::array<std::array<int, 2>, 6> kPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// The three ways to arrange four labels on a cycle.
constexpr std::array<std::array<int, 4>, 3> kCycles{
    {{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}}};

constexpr std::array<std::array<int, 3>, 4> kTriples{
    {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};

bool collinear(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
  // The sqrt(k) scaling of the second axis does not change collinearity.
  const Displacement u = b - a;
  const Displacement v = c - a;
  return checked::mul(u.du, v.dv) == checked::mul(v.du, u.dv);
}

bool equilateral(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c,
                 SquaredDistance ab, SquaredDistance ac, SquaredDistance bc) {
  return ab == ac && ac == bc && !collinear(a, b, c);
}

// Row-major n x n squared-distance matrix.
class DistanceMatrix {
 public:
  DistanceMatrix(const PointSet& points, const Limits& limits) : n_(points.size()) {
    const std::uint64_t bytes =
        static_cast<std::uint64_t>(n_) * n_ * sizeof(SquaredDistance);
    if (bytes > limits.max_table_bytes) {
      fail(ErrorKind::budget, "distance matrix for " + std::to_string(n_) +
                                  " points needs " + std::to_string(bytes) +
                                  " bytes, above --max-sieve-bytes=" +
                                  std::to_string(limits.max_table_bytes));
    }
    values_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        const SquaredDistance d = squared_distance(points.model(), points[i], points[j]);
        values_[i * n_ + j] = d;
        values_[j * n_ + i] = d;
      }
    }
  }

  SquaredDistance operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  const SquaredDistance* row(std::size_t i) const { return values_.data() + i * n_; }

 private:
  std::size_t n_;
  std::vector<SquaredDistance> values_;
};

// {lo, hi} for a triple using at most two values; nullopt when it uses three.
std::optional<std::pair<SquaredDistance, SquaredDistance>> triple_values(
    SquaredDistance ab, SquaredDistance ac, SquaredDistance bc) {
  const SquaredDistance lo = std::min({ab, ac, bc});
  const SquaredDistance hi = std::max({ab, ac, bc});
  const SquaredDistance mid = ab + ac + bc - lo - hi;
  if (mid != lo && mid != hi) return std::nullopt;
  return std::pair{lo, hi};
}

Quad quad_at(const PointSet& points, const std::array<std::size_t, 4>& idx) {
  return Quad::from_points(points.model(),
                           {points[idx[0]], points[idx[1]], points[idx[2]], points[idx[3]]});
}

}  // namespace

Quad::Quad(const LatticeModel& model, const std::array<LatticePoint, 4>& points)
    : model_(model), points_(points) {
  for (std::size_t p = 0; p < kPairs.size(); ++p) {
    const auto [i, j] = kPairs[p];
    if (points_[i] == points_[j]) {
      fail(ErrorKind::invalid_argument,
           "quad has a repeated point (" + std::to_string(points_[i].x) + "," +
               std::to_string(points_[i].y) + ")");
    }
    const SquaredDistance d = squared_distance(model_, points_[i], points_[j]);
    pairwise_[i][j] = d;
    pairwise_[j][i] = d;
    sorted_[p] = d;
  }
  std::sort(sorted_.begin(), sorted_.end());
}

Quad Quad::from_points(const LatticeModel& model, const std::array<LatticePoint, 4>& points) {
  return Quad(model, points);
}

Quad Quad::from_parts(const LatticeModel& model, const std::array<LatticePoint, 4>& points,
                      const std::array<SquaredDistance, 6>& distances) {
  Quad quad(model, points);
  std::array<SquaredDistance, 6> given = distances;
  std::sort(given.begin(), given.end());
  if (given != quad.sorted_) {
    fail(ErrorKind::invalid_argument, "stored distances do not match the quad's points");
  }
  return quad;
}

SquaredDistance Quad::distance(int i, int j) const { return pairwise_.at(i).at(j); }

Quad quad_distances(const LatticeModel& model, const std::array<LatticePoint, 4>& points) {
  return Quad::from_points(model, points);
}

int distinct_count(const Quad& quad) {
  const auto& d = quad.distances();
  int count = 1;
  for (std::size_t i = 1; i < d.size(); ++i) count += d[i] != d[i - 1];
  return count;
}

std::string_view to_string(ShapeTag tag) {
  switch (tag) {
    case ShapeTag::square:
      return "square";
    case ShapeTag::pentagon_trapezoid:
      return "pentagon-trapezoid";
    case ShapeTag::equilateral_bearing:
      return "equilateral-bearing";
    case ShapeTag::not_two_distance:
      return "not-two-distance";
  }
  return "unknown";
}

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::pass ? "pass" : "fail";
}

bool is_square_quad(const Quad& quad) {
  const auto& p = quad.points();
  for (const auto& cycle : kCycles) {
    const int a = cycle[0], b = cycle[1], c = cycle[2], d = cycle[3];
    const SquaredDistance side = quad.distance(a, b);
    if (quad.distance(b, c) != side || quad.distance(c, d) != side ||
        quad.distance(d, a) != side) {
      continue;
    }
    const SquaredDistance diagonal = checked::mul(2, side);
    if (quad.distance(a, c) != diagonal || quad.distance(b, d) != diagonal) continue;
    if (dot_product(quad.model(), p[b] - p[a], p[c] - p[b]) == 0) return true;
  }
  return false;
}

bool contains_equilateral_triangle(const Quad& quad) {
  const auto& p = quad.points();
  for (const auto& [a, b, c] : kTriples) {
    if (equilateral(p[a], p[b], p[c], quad.distance(a, b), quad.distance(a, c),
                    quad.distance(b, c))) {
      return true;
    }
  }
  return false;
}

bool is_golden_ratio_squared(SquaredDistance short_distance, SquaredDistance long_distance) {
  require(short_distance >= 1 && long_distance > short_distance,
          "golden ratio test needs 1 <= short < long");
  // long/short = (3 + sqrt 5)/2  <=>  2*long - 3*short = short*sqrt(5)
  const detail::i128 lhs = 2 * static_cast<detail::i128>(long_distance) -
                           3 * static_cast<detail::i128>(short_distance);
  const detail::i128 s = short_distance;
  return lhs >= 0 && lhs * lhs == 5 * s * s;
}

bool pentagon_ratio_test(const Quad& quad) {
  require(distinct_count(quad) == 2, "pentagon test needs exactly two distinct distances");
  const auto& d = quad.distances();
  return is_golden_ratio_squared(d.front(), d.back());
}

TwoDistanceClass resolve_two_distance_class(const DetectorFlags& flags, EdgeSplit split) {
  const int fired = int{flags.square} + int{flags.pentagon_trapezoid} + int{flags.equilateral};
  if (fired != 1) {
    fail(ErrorKind::integrity,
         "two-distance classification integrity error: " + std::to_string(fired) +
             " detectors fired (square=" + std::to_string(flags.square) +
             ", pentagon=" + std::to_string(flags.pentagon_trapezoid) +
             ", equilateral=" + std::to_string(flags.equilateral) + ")");
  }
  if (split.short_edges + split.long_edges != 6) {
    fail(ErrorKind::integrity, "edge split does not cover six pairs");
  }
  ShapeTag tag = ShapeTag::equilateral_bearing;
  if (flags.square) tag = ShapeTag::square;
  if (flags.pentagon_trapezoid) tag = ShapeTag::pentagon_trapezoid;
  return {tag, split};
}

TwoDistanceClass classify_two_distance(const Quad& quad) {
  if (distinct_count(quad) != 2) return {ShapeTag::not_two_distance, std::nullopt};
  const auto& d = quad.distances();
  const auto short_edges =
      static_cast<int>(std::count(d.begin(), d.end(), d.front()));
  const DetectorFlags flags{is_square_quad(quad), pentagon_ratio_test(quad),
                            contains_equilateral_triangle(quad)};
  return resolve_two_distance_class(flags, {short_edges, 6 - short_edges});
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  detail::u128 result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    result = result * (n - r + i) / i;
    if (result > UINT64_MAX) fail(ErrorKind::overflow, "binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t lex_rank(const std::array<std::size_t, 4>& idx, std::size_t n) {
  require(idx[0] < idx[1] && idx[1] < idx[2] && idx[2] < idx[3] && idx[3] < n,
          "lex_rank needs strictly increasing indices below n");
  // Subsets preceding idx: those diverging at position p with a smaller entry.
  std::uint64_t rank = 0;
  std::size_t prev = 0;
  for (std::size_t p = 0; p < 4; ++p) {
    const std::uint64_t left = 3 - p;  // entries still to choose after position p
    for (std::size_t v = prev; v < idx[p]; ++v) rank += binomial(n - 1 - v, left);
    prev = idx[p] + 1;
  }
  return rank + 1;
}

VerificationReport verify_local_constraint(const PointSet& points, const Limits& limits,
                                           const ScanOptions& options) {
  const std::size_t n = points.size();
  require(n >= 4, "verification needs at least 4 points (got " + std::to_string(n) + ")");
  const std::uint64_t total = binomial(n, 4);
  if (total > limits.max_quad_visits) {
    fail(ErrorKind::budget, "C(" + std::to_string(n) + ",4) = " + std::to_string(total) +
                                " quads exceeds --max-quad-visits=" +
                                std::to_string(limits.max_quad_visits));
  }
  const DistanceMatrix dist(points, limits);
  const simd::KernelTable& kernels = simd::active_kernels();

  // Smallest first index holding a witness so far; later first indices cannot
  // produce the lexicographically first witness.
  std::atomic<std::size_t> best_first{n};
  std::mutex found_mutex;
  std::optional<std::array<std::size_t, 4>> found;

  parallel_for(n - 3, limits.workers, [&](unsigned, std::size_t i) {
    if (options.early_exit && i > best_first.load(std::memory_order_relaxed)) return;
    std::optional<std::array<std::size_t, 4>> local;
    for (std::size_t j = i + 1; j + 2 < n; ++j) {
      const SquaredDistance dij = dist(i, j);
      for (std::size_t k = j + 1; k + 1 < n; ++k) {
        const auto values = triple_values(dij, dist(i, k), dist(j, k));
        if (!values) continue;
        const simd::CompletionQuery query{dist.row(i), dist.row(j), dist.row(k),
                                          values->first, values->second};
        const std::size_t l = kernels.find_completion(query, k + 1, n);
        if (l < n && !local) {
          local = std::array{i, j, k, l};
          if (options.early_exit) break;
        }
      }
      if (local && options.early_exit) break;
    }
    if (!local) return;
    std::lock_guard lock(found_mutex);
    if (!found || *local < *found) found = local;
    std::size_t cur = best_first.load();
    while (i < cur && !best_first.compare_exchange_weak(cur, i)) {
    }
  });

  VerificationReport report;
  if (!found) {
    report.verdict = Verdict::pass;
    report.scanned = total;
    return report;
  }
  report.verdict = Verdict::fail;
  report.scanned = lex_rank(*found, n);
  report.witness = quad_at(points, *found);
  report.witness_class = classify_two_distance(*report.witness);
  report.witness_indices = found;
  return report;
}

ShapeCensus scan_shapes(const PointSet& points, const Limits& limits) {
  const std::size_t n = points.size();
  require(n >= 3, "shape census needs at least 3 points (got " + std::to_string(n) + ")");

  // Largest prefix of first indices whose quads fit the visit budget.
  ShapeCensus census;
  census.points = n;
  std::size_t first_limit = 0;
  std::uint64_t quads = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t more = binomial(n - 1 - i, 3);
    if (quads + more > limits.max_quad_visits) break;
    quads += more;
    ++first_limit;
  }
  census.complete = first_limit == n;
  census.first_index_limit = first_limit;
  census.quads_examined = quads;
  for (std::size_t i = 0; i < first_limit; ++i) census.triples_examined += binomial(n - 1 - i, 2);

  const DistanceMatrix dist(points, limits);
  const simd::KernelTable& kernels = simd::active_kernels();
  std::vector<ShapeCensus> partial(first_limit);

  parallel_for(first_limit, limits.workers, [&](unsigned, std::size_t i) {
    ShapeCensus& c = partial[i];
    for (std::size_t j = i + 1; j + 1 < n; ++j) {
      const SquaredDistance dij = dist(i, j);
      for (std::size_t k = j + 1; k < n; ++k) {
        const SquaredDistance dik = dist(i, k), djk = dist(j, k);
        if (equilateral(points[i], points[j], points[k], dij, dik, djk)) ++c.equilateral_triples;
        const auto values = triple_values(dij, dik, djk);
        if (!values) continue;
        const simd::CompletionQuery query{dist.row(i), dist.row(j), dist.row(k),
                                          values->first, values->second};
        for (std::size_t l = kernels.find_completion(query, k + 1, n); l < n;
             l = kernels.find_completion(query, l + 1, n)) {
          ++c.two_distance_quads;
          switch (classify_two_distance(quad_at(points, {i, j, k, l})).tag) {
            case ShapeTag::square:
              ++c.squares;
              break;
            case ShapeTag::pentagon_trapezoid:
              ++c.pentagon_trapezoids;
              break;
            case ShapeTag::equilateral_bearing:
              ++c.equilateral_bearing;
              break;
            case ShapeTag::not_two_distance:
              fail(ErrorKind::integrity, "completion kernel accepted a quad with three distances");
          }
        }
      }
    }
  });

  for (const ShapeCensus& c : partial) {
    census.equilateral_triples += c.equilateral_triples;
    census.two_distance_quads += c.two_distance_quads;
    census.squares += c.squares;
    census.pentagon_trapezoids += c.pentagon_trapezoids;
    census.equilateral_bearing += c.equilateral_bearing;
  }
  return census;
}

}  // namespace fewdist
