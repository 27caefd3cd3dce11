#pragma once

// Kochen-Specker machinery in exact arithmetic. Rays have components in
// Z[sqrt 2], so orthogonality is decided by integer equality; nothing in
// this header touches floating point.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sicprob/error.hpp"

namespace sicprob::ks {

/// a + b sqrt(2)
struct QuadInt {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend constexpr bool operator==(QuadInt, QuadInt) = default;
  friend constexpr QuadInt operator+(QuadInt x, QuadInt y) { return {x.a + y.a, x.b + y.b}; }
  friend constexpr QuadInt operator-(QuadInt x, QuadInt y) { return {x.a - y.a, x.b - y.b}; }
  friend constexpr QuadInt operator-(QuadInt x) { return {-x.a, -x.b}; }
  friend constexpr QuadInt operator*(QuadInt x, QuadInt y) {
    return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  constexpr bool is_zero() const { return a == 0 && b == 0; }
};

std::string to_string(QuadInt q);

/// A ray in R^3 with components in Z[sqrt 2]. Equality is projective:
/// two rays compare equal iff their cross product vanishes.
class Ray {
 public:
  Ray(QuadInt x, QuadInt y, QuadInt z);

  const std::array<QuadInt, 3>& components() const noexcept { return c_; }
  QuadInt dot(const Ray& other) const;
  bool orthogonal(const Ray& other) const { return dot(other).is_zero(); }
  bool parallel(const Ray& other) const;

  friend bool operator==(const Ray& x, const Ray& y) { return x.parallel(y); }

 private:
  std::array<QuadInt, 3> c_;
};

/// Compact label in the usual table notation: "2" for sqrt 2, "-" prefix for
/// negatives, e.g. "1-12" is (1, -1, sqrt 2).
std::string label(const Ray& r);

using Triad = std::array<int, 3>;

struct RaySet {
  std::vector<Ray> rays;
  std::vector<Triad> triads;
};

/// Deduplicates the rays of `triads` and checks each listed triad is
/// mutually orthogonal (InvalidArgument otherwise).
RaySet make_ray_set(const std::vector<std::array<Ray, 3>>& triads);

/// Rays only, no listed triads.
RaySet make_ray_set(const std::vector<Ray>& rays);

/// The ten orthogonal triads of the qutrit table exactly as tabulated.
RaySet printed_peres_table();

/// Peres's construction: the printed table closed under permutations of the
/// three coordinates. The printed triads are kept as `triads`.
RaySet peres_rays();

/// Adds every coordinate permutation of every ray.
RaySet permutation_closure(const RaySet& rs);

struct OrthogonalityGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adjacency;
  /// Every mutually orthogonal triple (a complete basis in three dimensions).
  std::vector<Triad> bases;

  bool adjacent(int u, int v) const;
};

OrthogonalityGraph orthogonality_graph(const RaySet& rs);

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000'000ULL;

struct ColoringResult {
  bool colorable = false;
  /// TRUE/FALSE per ray when colorable.
  std::optional<std::vector<bool>> assignment;
  std::uint64_t nodes_explored = 0;
};

/// Complete backtracking search for a TRUE/FALSE marking with no two
/// orthogonal rays TRUE and exactly one TRUE in every basis of the graph.
ColoringResult ks_colorable(const RaySet& rs, std::uint64_t node_budget = kDefaultNodeBudget);

bool is_valid_coloring(const OrthogonalityGraph& g, const std::vector<bool>& assignment);

/// Columns of four outcome letters.
struct CegaTable {
  std::vector<std::array<char, 4>> columns;
};

/// The nine interlocking columns over the letters a..r.
CegaTable cega_table();

struct ParityVerdict {
  int letters = 0;
  int total_true_required = 0;
  bool multiplicity_even = false;
  bool contradiction = false;
  std::vector<std::string> proof;
};

/// Throws MalformedTable unless every letter appears exactly twice.
ParityVerdict cega_parity_check(const CegaTable& t);

}  // namespace sicprob::ks
