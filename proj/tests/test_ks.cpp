#include <catch_amalgamated.hpp>

#include "sicprob/ks.hpp"

using namespace sicprob;
using namespace sicprob::ks;

namespace {

Ray ray(int x, int y, int z) { return Ray(QuadInt{x, 0}, QuadInt{y, 0}, QuadInt{z, 0}); }

}  // namespace

TEST_CASE("quadratic integers multiply exactly") {
  constexpr QuadInt r2{0, 1};
  static_assert(r2 * r2 == QuadInt{2, 0});
  static_assert((QuadInt{1, 1} * QuadInt{1, -1}) == QuadInt{-1, 0});
  CHECK(to_string(QuadInt{3, -2}).size() > 0);
}

TEST_CASE("rays are compared projectively") {
  CHECK(ray(1, -1, 0) == ray(-1, 1, 0));
  CHECK(ray(2, 2, 0) == ray(1, 1, 0));
  CHECK_FALSE(ray(1, 1, 0) == ray(1, -1, 0));
  CHECK(ray(1, 1, 0).orthogonal(ray(1, -1, 0)));
  const Ray diag(QuadInt{1, 0}, QuadInt{1, 0}, QuadInt{0, 1});
  CHECK(diag.orthogonal(ray(1, -1, 0)));
  CHECK_FALSE(diag.orthogonal(ray(1, 0, 0)));
  CHECK(label(ray(0, 1, -1)) == "01-1");
  CHECK(label(diag) == "112");
  CHECK_THROWS_AS(ray(0, 0, 0), Error);
}

TEST_CASE("orthogonality graph of a single basis") {
  const RaySet rs = make_ray_set(std::vector<Ray>{ray(1, 0, 0), ray(0, 1, 0), ray(0, 0, 1)});
  const auto g = orthogonality_graph(rs);
  CHECK(g.vertices == 3);
  CHECK(g.edges.size() == 3);
  CHECK(g.bases.size() == 1);
  CHECK(g.adjacent(0, 2));
}

TEST_CASE("small sets are colorable") {
  const RaySet one = make_ray_set(std::vector<Ray>{ray(1, 0, 0), ray(0, 1, 0), ray(0, 0, 1)});
  const auto r = ks_colorable(one);
  REQUIRE(r.colorable);
  REQUIRE(r.assignment);
  CHECK(is_valid_coloring(orthogonality_graph(one), *r.assignment));

  const RaySet two = make_ray_set(std::vector<std::array<Ray, 3>>{
      {ray(1, 0, 0), ray(0, 1, 0), ray(0, 0, 1)},
      {ray(1, 1, 1), ray(1, -1, 0), ray(1, 1, -2)},
  });
  const auto r2 = ks_colorable(two);
  REQUIRE(r2.colorable);
  CHECK(is_valid_coloring(orthogonality_graph(two), *r2.assignment));
}

TEST_CASE("triads must be orthogonal") {
  CHECK_THROWS_AS(make_ray_set(std::vector<std::array<Ray, 3>>{{ray(1, 0, 0), ray(1, 1, 0), ray(0, 0, 1)}}), Error);
}

TEST_CASE("coloring validity rules") {
  const RaySet one = make_ray_set(std::vector<Ray>{ray(1, 0, 0), ray(0, 1, 0), ray(0, 0, 1)});
  const auto g = orthogonality_graph(one);
  CHECK(is_valid_coloring(g, {true, false, false}));
  CHECK_FALSE(is_valid_coloring(g, {true, true, false}));
  CHECK_FALSE(is_valid_coloring(g, {false, false, false}));
}

TEST_CASE("printed Peres table counts and colorability") {
  const RaySet printed = printed_peres_table();
  const auto g = orthogonality_graph(printed);
  CHECK(printed.triads.size() == 10);
  CHECK(g.vertices == 23);
  CHECK(g.bases.size() == 11);
  CHECK(g.edges.size() == 42);
  const auto r = ks_colorable(printed);
  CHECK(r.colorable);
  CHECK(is_valid_coloring(g, *r.assignment));
}

TEST_CASE("Peres closure is not colorable") {
  const RaySet rs = peres_rays();
  const auto g = orthogonality_graph(rs);
  CHECK(g.vertices == 33);
  CHECK(g.bases.size() == 16);
  const auto r = ks_colorable(rs);
  CHECK_FALSE(r.colorable);
  CHECK_FALSE(r.assignment);
  CHECK(r.nodes_explored > 0);
  CHECK(permutation_closure(rs).rays.size() == rs.rays.size());
}

TEST_CASE("search budget is enforced") {
  try {
    ks_colorable(peres_rays(), 1);
    FAIL("expected SearchBudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SearchBudgetExceeded);
  }
}

TEST_CASE("parity argument on the nine-column table") {
  const auto v = cega_parity_check(cega_table());
  CHECK(v.letters == 18);
  CHECK(v.total_true_required == 9);
  CHECK(v.multiplicity_even);
  CHECK(v.contradiction);
  CHECK_FALSE(v.proof.empty());
}

TEST_CASE("parity check on toy tables") {
  const auto even = cega_parity_check(CegaTable{{{'a', 'b', 'c', 'd'}, {'a', 'b', 'c', 'd'}}});
  CHECK_FALSE(even.contradiction);
  CHECK(even.total_true_required == 2);
  try {
    cega_parity_check(CegaTable{{{'a', 'b', 'c', 'd'}, {'a', 'b', 'c', 'e'}}});
    FAIL("expected MalformedTable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedTable);
  }
}
