#pragma once

// Numerical search for SIC fiducials: minimize the frame potential
//
//   F(psi) = sum_{p != 0} |<psi| D_p |psi>|^4
//
// over unit vectors. F >= (d-1)/(d+1) with equality exactly at fiducials of
// group-covariant SICs, so the residual F - (d-1)/(d+1) certifies a solution.

#include <cstdint>
#include <optional>
#include <vector>

#include "sicprob/linalg.hpp"
#include "sicprob/sic.hpp"
#include "sicprob/weyl_heisenberg.hpp"

namespace sicprob {

/// Every group element used here (X^m Z^n and tensor products of them) is a
/// monomial matrix, so D psi costs O(d): (D psi)[target[j]] = phase[j] psi[j].
struct MonomialOp {
  std::vector<Index> target;
  std::vector<Complex> phase;

  ComplexVector apply(const ComplexVector& v) const;
  ComplexVector apply_adjoint(const ComplexVector& v) const;
};

/// Non-identity group elements in all_indices() order.
std::vector<MonomialOp> monomial_group(const GroupSpec& spec);

/// (d-1)/(d+1)
double welch_bound(Index d);

double frame_potential(const ComplexVector& psi, const GroupSpec& spec);

/// Frame potential of a unit vector with its Euclidean gradient in the
/// real coordinates (Re psi, Im psi), packed as a complex vector.
struct PotentialEval {
  double value = 0;
  ComplexVector gradient;
};

class FramePotential {
 public:
  explicit FramePotential(const GroupSpec& spec);

  Index dim() const noexcept { return dim_; }
  const GroupSpec& group() const noexcept { return spec_; }

  double value(const ComplexVector& psi) const;
  PotentialEval evaluate(const ComplexVector& psi) const;
  /// value(psi) - welch_bound(d), evaluated as the equal sum over p != 0 of
  /// (|<psi|D_p psi>|^2 - 1/(d+1))^2 on the normalized vector so that it
  /// stays accurate far below the rounding level of F.
  double residual(const ComplexVector& psi) const;

  /// r_p = |<psi|D_p psi>|^2 - 1/(d+1) for the non-identity elements, with
  /// the Jacobian of r(psi / |psi|) at unit psi in real coordinates.
  void overlap_residuals(const ComplexVector& psi, Eigen::VectorXd& r, Eigen::MatrixXd* jacobian) const;

 private:
  GroupSpec spec_;
  Index dim_;
  std::vector<MonomialOp> ops_;
};

struct SearchConfig {
  int dim = 2;
  std::uint64_t seed = 0;
  int restarts = 16;
  int max_iterations = 20000;
  double tolerance = 1e-9;
  double polish_tolerance = 1e-13;
  /// Worker threads for restarts; the result does not depend on it.
  int jobs = 1;
  /// Defaults to the single-system group of `dim`.
  std::optional<GroupSpec> group;
};

void validate(const SearchConfig& c);

struct SearchResult {
  Fiducial fiducial;
  double residual = 0;
  int restart_index = 0;
  int iterations_used = 0;
  double potential_value = 0;
};

/// Raised when no restart reached the tolerance; carries the best attempt.
class SearchExhausted : public Error {
 public:
  explicit SearchExhausted(SearchResult best);
  const SearchResult& result() const noexcept { return best_; }

 private:
  SearchResult best_;
};

struct LocalResult {
  ComplexVector psi;
  double residual = 0;
  int iterations = 0;
};

/// Projected gradient descent on the unit sphere with Armijo backtracking,
/// handing over to Gauss-Newton refinement once the residual drops below
/// 1e-6. Stops at `tolerance`, at a stationary point, or after
/// `max_iterations` descent steps.
LocalResult descend(const FramePotential& fp, ComplexVector start, int max_iterations, double tolerance);

/// Seeded random restarts of descend(); the winner is the lexicographically
/// smallest (residual, restart_index).
SearchResult search_fiducial(const SearchConfig& config);

/// Gauss-Newton refinement of a near-solution to residual <= target (or the
/// best reachable in double precision). Requires residual <= 1e-6.
Fiducial polish(const Fiducial& f, double target);

}  // namespace sicprob
