#include <catch_amalgamated.hpp>

#include <random>

#include "sicprob/search.hpp"
#include "sicprob/weyl_heisenberg.hpp"
#include "support/random.hpp"

using namespace sicprob;
using Catch::Matchers::WithinAbs;

TEST_CASE("frame potential at known points") {
  CHECK_THAT(frame_potential(builtin_fiducial(3).vector, GroupSpec::single(3)), WithinAbs(0.5, 1e-14));
  CHECK_THAT(frame_potential(builtin_fiducial(2).vector, GroupSpec::single(2)), WithinAbs(1.0 / 3.0, 1e-14));
  ComplexVector e1 = ComplexVector::Zero(2);
  e1(0) = 1;
  CHECK_THAT(frame_potential(e1, GroupSpec::single(2)), WithinAbs(1.0, 1e-15));
  CHECK_THAT(welch_bound(8), WithinAbs(7.0 / 9.0, 1e-16));
  CHECK_THROWS_AS(frame_potential(e1, GroupSpec::single(3)), Error);
}

TEST_CASE("monomial form matches the dense displacement matrices") {
  std::mt19937_64 rng(2);
  for (const GroupSpec g : {GroupSpec::single(4), GroupSpec::tensor_power(2, 2), GroupSpec::tensor_power(2, 3)}) {
    const auto ops = monomial_group(g);
    const auto dense = all_displacements(g);
    REQUIRE(ops.size() + 1 == dense.size());
    const ComplexVector v = testing::random_unit(g.dim(), rng);
    for (std::size_t k = 0; k < ops.size(); ++k) {
      CHECK(max_abs_diff(ops[k].apply(v), ComplexVector(dense[k + 1] * v)) <= 1e-14);
      CHECK(max_abs_diff(ops[k].apply_adjoint(v), ComplexVector(dense[k + 1].adjoint() * v)) <= 1e-14);
    }
  }
}

TEST_CASE("Welch bound, phase and covariance invariance") {
  std::mt19937_64 rng(17);
  for (int d = 2; d <= 4; ++d) {
    const GroupSpec g = GroupSpec::single(d);
    const FramePotential fp(g);
    const auto ops = all_displacements(g);
    for (int trial = 0; trial < 50; ++trial) {
      const ComplexVector v = testing::random_unit(d, rng);
      const double f = fp.value(v);
      CHECK(f >= welch_bound(d) - 1e-12);
      CHECK_THAT(fp.value(ComplexVector(std::polar(1.0, 0.7) * v)), WithinAbs(f, 1e-12));
      for (const auto& op : ops) CHECK_THAT(fp.value(ComplexVector(op * v)), WithinAbs(f, 1e-10));
      CHECK_THAT(fp.residual(v), WithinAbs(f - welch_bound(d), 1e-12));
    }
  }
}

TEST_CASE("analytic gradient matches central differences") {
  std::mt19937_64 rng(23);
  for (const GroupSpec g : {GroupSpec::single(3), GroupSpec::single(5), GroupSpec::tensor_power(2, 2)}) {
    const FramePotential fp(g);
    const Index d = g.dim();
    const ComplexVector v = testing::random_unit(d, rng);
    const PotentialEval e = fp.evaluate(v);
    CHECK_THAT(e.value, WithinAbs(fp.value(v), 1e-14));
    // The gradient is with respect to the unconstrained real coordinates of
    // F(psi) evaluated without normalization.
    auto raw = [&](const ComplexVector& w) {
      double f = 0;
      for (const auto& op : monomial_group(g)) f += std::pow(std::norm(w.dot(op.apply(w))), 2);
      return f;
    };
    const double h = 1e-6;
    for (Index i = 0; i < d; ++i) {
      for (const Complex dir : {Complex(1, 0), Complex(0, 1)}) {
        ComplexVector plus = v, minus = v;
        plus(i) += h * dir;
        minus(i) -= h * dir;
        const double fd = (raw(plus) - raw(minus)) / (2 * h);
        const double an = dir.real() != 0 ? e.gradient(i).real() : e.gradient(i).imag();
        CHECK_THAT(an, WithinAbs(fd, 1e-6));
      }
    }
  }
}

TEST_CASE("search finds fiducials in small dimensions") {
  const SearchResult r2 = search_fiducial({.dim = 2, .seed = 1, .restarts = 8});
  CHECK(r2.residual <= 1e-9);
  CHECK(r2.residual >= -1e-12);
  CHECK_THAT(r2.residual, WithinAbs(r2.potential_value - welch_bound(2), 1e-12));

  const SearchResult r3 = search_fiducial({.dim = 3, .seed = 1, .restarts = 16});
  CHECK(r3.residual <= 1e-9);
  CHECK(verify_sic(orbit(r3.fiducial), 1e-7).pass);
  CHECK(r3.fiducial.label == "search d=3");
  CHECK(r3.fiducial.vector(0).imag() == 0.0);
}

TEST_CASE("search is deterministic and independent of parallelism") {
  SearchConfig c{.dim = 4, .seed = 99, .restarts = 6};
  const SearchResult a = search_fiducial(c);
  const SearchResult b = search_fiducial(c);
  c.jobs = 3;
  const SearchResult p = search_fiducial(c);
  CHECK(a.residual == b.residual);
  CHECK(a.restart_index == b.restart_index);
  CHECK(a.residual == p.residual);
  CHECK(a.restart_index == p.restart_index);
  CHECK(max_abs_diff(a.fiducial.vector, p.fiducial.vector) == 0.0);
}

TEST_CASE("descent from an exact fiducial stays put") {
  const FramePotential fp(GroupSpec::single(2));
  const LocalResult r = descend(fp, builtin_fiducial(2).vector, 100, 1e-9);
  CHECK(r.residual <= 1e-12);
  CHECK(r.iterations <= 2);
}

TEST_CASE("exhausted search carries its best result") {
  try {
    search_fiducial({.dim = 5, .seed = 1, .restarts = 2, .max_iterations = 0});
    FAIL("expected SearchExhausted");
  } catch (const SearchExhausted& e) {
    CHECK(e.kind() == ErrorKind::Exhausted);
    CHECK(e.result().residual > 1e-9);
    CHECK(e.result().restart_index >= 0);
  }
}

TEST_CASE("search configuration is validated") {
  CHECK_THROWS_AS(search_fiducial({.dim = 1}), Error);
  CHECK_THROWS_AS(search_fiducial({.dim = 3, .restarts = 0}), Error);
  CHECK_THROWS_AS(search_fiducial({.dim = 3, .tolerance = 1e-12, .polish_tolerance = 1e-9}), Error);
  CHECK_THROWS_AS(search_fiducial({.dim = 3, .jobs = 0}), Error);
}

TEST_CASE("polish") {
  const Fiducial hesse = builtin_fiducial(3);
  const Fiducial same = polish(hesse, 1e-13);
  CHECK(max_abs_diff(same.vector, hesse.vector) <= 1e-12);

  // Perturb the Hesse fiducial slightly and bring it back.
  ComplexVector v = hesse.vector;
  v(0) += Complex(1e-4, -2e-4);
  const Fiducial near = make_fiducial(v.normalized(), hesse.group, "near");
  const FramePotential fp(hesse.group);
  REQUIRE(fp.residual(near.vector) <= 1e-6);
  const Fiducial fixed = polish(near, 1e-13);
  CHECK(fp.residual(fixed.vector) <= 1e-12);
  CHECK(is_unit(fixed.vector));
  CHECK(fixed.vector(0).imag() == 0.0);
  CHECK(verify_sic(orbit(fixed), 1e-7).pass);

  std::mt19937_64 rng(4);
  try {
    polish(make_fiducial(testing::random_unit(5, rng), GroupSpec::single(5), ""), 1e-13);
    FAIL("expected NotNearSolution");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNearSolution);
  }
}

TEST_CASE("Hoggar-type search under the three-qubit group") {
  const SearchResult r = search_fiducial({.dim = 8, .seed = 3, .restarts = 8, .group = GroupSpec::tensor_power(2, 3)});
  CHECK(r.residual <= 1e-9);
  CHECK(verify_sic(orbit(r.fiducial), 1e-7).pass);
}
