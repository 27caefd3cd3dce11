#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sicprob/linalg.hpp"
#include "sicprob/weyl_heisenberg.hpp"

namespace sicprob {

/// A unit vector whose group orbit is meant to form a SIC.
struct Fiducial {
  int dim = 0;
  ComplexVector vector;
  GroupSpec group = GroupSpec::single(2);
  std::string label;
};

/// Validates dimensions and unit norm, then fixes the global phase so the
/// first nonzero component is real and positive.
Fiducial make_fiducial(ComplexVector vector, GroupSpec group, std::string label);

/// Multiplies v by the phase that makes its first nonzero entry real positive.
ComplexVector canonicalize_phase(const ComplexVector& v);

/// d^2 unit vectors with their rank-one projectors.
struct Sic {
  int dim = 0;
  std::vector<ComplexVector> vectors;
  std::vector<ComplexMatrix> projectors;
};

/// Builds projectors from d^2 unit vectors. No SIC condition is checked.
Sic make_sic(std::vector<ComplexVector> vectors);

struct VerificationReport {
  int dim = 0;
  /// max over i != j of | |<psi_i|psi_j>|^2 - 1/(d+1) |
  double max_overlap_deviation = 0;
  /// entrywise max of | sum_i Pi_i / d - I |
  double max_resolution_deviation = 0;
  bool pass = false;
  double tolerance = 0;
};

/// vectors[p] = D_p |psi_0>, in all_displacements order.
Sic orbit(const Fiducial& f);

VerificationReport verify_sic(const Sic& s, double tol);

/// Catalog fiducials: d = 2 (tetrahedron), 3 (Hesse), 8 (Hoggar).
Fiducial builtin_fiducial(int d);

/// Pi_{s,r} = (I + (s X + r Y + s r Z) / sqrt(3)) / 2, ordered
/// (+,+), (+,-), (-,+), (-,-).
std::array<ComplexMatrix, 4> qubit_tetrahedron();

/// The tetrahedron as a Sic, in qubit_tetrahedron() order.
Sic tetrahedron_sic();

/// p(s, r) = 1/4 + sqrt(3)/12 (s x + r y + s r z), same ordering as
/// qubit_tetrahedron().
std::array<double, 4> qubit_sic_probs(double x, double y, double z);

/// Trace inner products tr(Pi_i Pi_j) of the SIC projectors.
ComplexMatrix projector_gram(const Sic& s);

/// n divided by its largest square divisor.
std::int64_t squarefree_part(std::int64_t n);

/// Squarefree part of (d-3)(d+1). Dimensions with equal class share the real
/// quadratic field Q(sqrt((d-3)(d+1))).
std::int64_t dimension_tower_class(std::int64_t d);

}  // namespace sicprob
