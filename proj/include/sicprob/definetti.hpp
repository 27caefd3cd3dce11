#pragma once

#include <cstdint>
#include <vector>

#include "sicprob/linalg.hpp"
#include "sicprob/sic.hpp"

namespace sicprob {

/// Finite prior over candidate density matrices.
struct Prior {
  std::vector<ComplexMatrix> candidates;
  std::vector<double> weights;
};

/// Checks weights (nonnegative, sum 1 within 1e-12) and candidates (valid
/// states of a common dimension).
void validate(const Prior& p);
Prior make_prior(std::vector<ComplexMatrix> candidates, std::vector<double> weights);

/// sum_k w_k rho_k^{(x) n}
ComplexMatrix mixture_state(const Prior& prior, int n, Index cap = kDefaultDimCap);

/// n i.i.d. SIC outcomes for `true_state`, reproducible from `seed`.
std::vector<int> simulate_outcomes(const ComplexMatrix& true_state, const Sic& sic, int n, std::uint64_t seed);

/// Posterior after observing `outcomes`. Weights are accumulated as logs and
/// normalized in log space, so long data runs do not underflow.
Prior bayes_update(const Prior& prior, const Sic& sic, const std::vector<int>& outcomes);

struct TomographyTrace {
  std::vector<int> outcomes;
  /// posterior_history[0] is the prior; one entry per observed outcome after.
  std::vector<std::vector<double>> posterior_history;
  std::uint64_t seed = 0;
  /// Candidate closest to the true state in trace distance.
  int closest_candidate = 0;
  double final_weight_on_closest = 0;
};

/// Trace distance (1/2) || a - b ||_1 between Hermitian matrices.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

TomographyTrace posterior_concentration(const Prior& prior, const ComplexMatrix& true_state, const Sic& sic, int n,
                                        std::uint64_t seed);

}  // namespace sicprob
