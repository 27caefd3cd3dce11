#include <catch_amalgamated.hpp>

#include <set>

#include "sicprob/weyl_heisenberg.hpp"

using namespace sicprob;

namespace {

Complex omega(int d, int k) { return std::polar(1.0, 2.0 * M_PI * k / d); }

}  // namespace

TEST_CASE("group specs validate their parameters") {
  CHECK(GroupSpec::single(5).dim() == 5);
  CHECK(GroupSpec::single(5).order() == 25);
  CHECK(GroupSpec::tensor_power(2, 3).dim() == 8);
  CHECK(GroupSpec::tensor_power(2, 3).order() == 64);
  CHECK_THROWS_AS(GroupSpec::single(1), Error);
  CHECK_THROWS_AS(GroupSpec::tensor_power(2, 0), Error);
  CHECK_FALSE(GroupSpec::single(4) == GroupSpec::tensor_power(2, 2));
}

TEST_CASE("shift and phase satisfy ZX = omega XZ") {
  for (int d = 2; d <= 7; ++d) {
    const ComplexMatrix x = shift_op(d);
    const ComplexMatrix z = phase_op(d);
    CHECK(is_unitary(x));
    CHECK(is_unitary(z));
    CHECK(max_abs_diff(ComplexMatrix(z * x), ComplexMatrix(omega(d, 1) * x * z)) <= 1e-14);

    ComplexMatrix xd = ComplexMatrix::Identity(d, d), zd = ComplexMatrix::Identity(d, d);
    for (int k = 0; k < d; ++k) {
      xd = xd * x;
      zd = zd * z;
    }
    CHECK(max_abs_diff(xd, ComplexMatrix(ComplexMatrix::Identity(d, d))) <= 1e-13);
    CHECK(max_abs_diff(zd, ComplexMatrix(ComplexMatrix::Identity(d, d))) <= 1e-13);
  }
}

TEST_CASE("shift moves |j> to |j+1>") {
  const ComplexMatrix x = shift_op(3);
  CHECK(x(1, 0) == Complex(1));
  CHECK(x(2, 1) == Complex(1));
  CHECK(x(0, 2) == Complex(1));
}

TEST_CASE("displacements are X^m Z^n in lexicographic order") {
  const GroupSpec g = GroupSpec::single(2);
  const auto idx = all_indices(g);
  REQUIRE(idx.size() == 4);
  const auto ops = all_displacements(g);
  CHECK(max_abs_diff(ops[0], ComplexMatrix(ComplexMatrix::Identity(2, 2))) == 0.0);
  CHECK(max_abs_diff(ops[1], phase_op(2)) <= 1e-15);
  CHECK(max_abs_diff(ops[2], shift_op(2)) <= 1e-15);
  CHECK(max_abs_diff(ops[3], ComplexMatrix(shift_op(2) * phase_op(2))) <= 1e-15);
}

TEST_CASE("displacement operators are trace-orthogonal") {
  for (const GroupSpec g : {GroupSpec::single(3), GroupSpec::single(4), GroupSpec::tensor_power(2, 2)}) {
    const auto ops = all_displacements(g);
    const auto d = static_cast<double>(g.dim());
    for (std::size_t a = 0; a < ops.size(); ++a) {
      for (std::size_t b = 0; b < ops.size(); ++b) {
        const Complex t = (ops[a].adjoint() * ops[b]).trace();
        CHECK(std::abs(t - (a == b ? d : 0.0)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("tensor power acts factorwise with the leftmost pair leftmost") {
  const GroupSpec g = GroupSpec::tensor_power(2, 2);
  const auto idx = make_index(g, {{1, 0}, {0, 1}});
  CHECK(max_abs_diff(displacement(g, idx), tensor(shift_op(2), phase_op(2))) <= 1e-15);
}

TEST_CASE("three-qubit Pauli group has 64 distinct elements") {
  const auto ops = all_displacements(GroupSpec::tensor_power(2, 3));
  REQUIRE(ops.size() == 64);
  for (std::size_t a = 0; a < ops.size(); ++a) {
    CHECK(is_unitary(ops[a]));
    for (std::size_t b = a + 1; b < ops.size(); ++b) CHECK(max_abs_diff(ops[a], ops[b]) > 0.5);
  }
}

TEST_CASE("indices are reduced modulo d and shape-checked") {
  const GroupSpec g = GroupSpec::single(3);
  CHECK(make_index(g, {{4, -1}}) == make_index(g, {{1, 2}}));
  CHECK_THROWS_AS(make_index(g, {{0, 0}, {1, 1}}), Error);
  CHECK_THROWS_AS(all_displacements(GroupSpec::single(100), 64), Error);
}

TEST_CASE("small-dimension examples") {
  ComplexMatrix sx(2, 2), sz(2, 2), xz(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  xz << 0, -1, 1, 0;
  CHECK(max_abs_diff(shift_op(2), sx) <= 1e-15);
  CHECK(max_abs_diff(phase_op(2), sz) <= 1e-15);
  const GroupSpec g = GroupSpec::single(2);
  CHECK(max_abs_diff(displacement(g, make_index(g, {{1, 1}})), xz) <= 1e-15);

  const ComplexMatrix z3 = phase_op(3);
  CHECK(std::abs(z3(1, 1) - omega(3, 1)) <= 1e-15);
  CHECK(std::abs(z3(2, 2) - omega(3, 2)) <= 1e-15);
  CHECK(all_displacements(GroupSpec::single(3)).size() == 9);
}
