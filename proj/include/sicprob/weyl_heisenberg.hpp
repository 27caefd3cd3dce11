#pragma once

#include <utility>
#include <vector>

#include "sicprob/linalg.hpp"

namespace sicprob {

/// Either the Weyl-Heisenberg group of a single d-dimensional system or the
/// k-fold tensor power of the base_d group (the Hoggar SIC uses base 2, k 3).
class GroupSpec {
 public:
  enum class Kind { Single, TensorPower };

  static GroupSpec single(int d);
  static GroupSpec tensor_power(int base_d, int k);

  Kind kind() const noexcept { return kind_; }
  int base_dim() const noexcept { return base_; }
  int factors() const noexcept { return factors_; }
  /// Hilbert-space dimension the group acts on.
  Index dim() const noexcept;
  /// Number of displacement operators: dim()^2.
  Index order() const noexcept { return dim() * dim(); }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  GroupSpec(Kind kind, int base, int factors) : kind_(kind), base_(base), factors_(factors) {}
  Kind kind_;
  int base_;
  int factors_;
};

/// (m, n) per tensor factor, each reduced into [0, base_d).
struct DisplacementIndex {
  std::vector<std::pair<int, int>> components;

  friend bool operator==(const DisplacementIndex&, const DisplacementIndex&) = default;
};

DisplacementIndex make_index(const GroupSpec& spec, std::vector<std::pair<int, int>> components);

/// X|j> = |j+1 mod d>
ComplexMatrix shift_op(int d);
/// Z|j> = w^j |j>, w = exp(2 pi i / d)
ComplexMatrix phase_op(int d);

/// X^m Z^n for a single system, or the Kronecker product of the per-factor
/// X^m Z^n (leftmost pair on the leftmost factor) for a tensor power. No
/// extra phase factor is attached.
ComplexMatrix displacement(const GroupSpec& spec, const DisplacementIndex& idx);

/// Every index of the group in lexicographic order of (m1, n1, m2, n2, ...).
std::vector<DisplacementIndex> all_indices(const GroupSpec& spec);

/// Displacement matrices in all_indices() order; element 0 is the identity.
std::vector<ComplexMatrix> all_displacements(const GroupSpec& spec, Index cap = kDefaultDimCap);

}  // namespace sicprob
