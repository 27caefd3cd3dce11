#pragma once

// Quantum states and measurements expressed purely through probabilities
// over the outcomes of a SIC measurement ("in the sky"), and the modified
// law of total probability that replaces the Born rule in that language.

#include <array>
#include <cstddef>
#include <vector>

#include "sicprob/linalg.hpp"
#include "sicprob/sic.hpp"

namespace sicprob {

inline constexpr double kStateTol = 1e-10;
inline constexpr double kProbEntryTol = 1e-12;
inline constexpr double kProbSumTol = 1e-10;

/// Probabilities over a finite outcome set. Operations check only the shape
/// they need; validate() enforces the full probability invariants.
struct ProbVector {
  std::vector<double> values;

  std::size_t outcomes() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Throws InvalidArgument unless entries lie in [-1e-12, 1+1e-12] and sum
/// to 1 within 1e-10.
void validate(const ProbVector& p);
ProbVector make_prob_vector(std::vector<double> values);

/// P(D_j | H_i) stored as values(j, i): rows are ground outcomes, columns
/// sky outcomes. Every column sums to 1.
struct ConditionalMatrix {
  Eigen::MatrixXd values;

  Index ground_outcomes() const noexcept { return values.rows(); }
  Index sky_outcomes() const noexcept { return values.cols(); }
};

void validate(const ConditionalMatrix& c);

/// Output of the urgleichung family. Values are never clamped; out_of_range
/// reports any entry outside [-1e-10, 1+1e-10].
struct GroundPrediction {
  ProbVector q;
  bool out_of_range = false;
};

struct QPlexReport {
  bool member = false;
  double min_eigenvalue = 0;
  double reconstructed_trace = 0;
  double tolerance = 0;
};

/// Hermitian, unit trace and PSD, each within kStateTol.
bool is_density_matrix(const ComplexMatrix& rho, double tol = kStateTol);
void require_state(const ComplexMatrix& rho, const char* context);

/// P(H_i) = tr(rho Pi_i) / d.
ProbVector state_to_probs(const ComplexMatrix& rho, const Sic& sic);

/// rho = sum_i ((d+1) P(H_i) - 1/d) Pi_i. Hermitian and unit trace for any
/// normalized input; positivity is not guaranteed.
ComplexMatrix probs_to_state(const ProbVector& p, const Sic& sic);

/// P(D_j | H_i) = tr(Pi_i D_j): the ground POVM measured on the post-sky
/// state Pi_i.
ConditionalMatrix conditional_matrix(const std::vector<ComplexMatrix>& ground, const Sic& sic);

/// P(D_j) = sum_i P(H_i) P(D_j | H_i)
ProbVector ltp(const ProbVector& p, const ConditionalMatrix& c);

/// Q(D_j) = sum_i [(d+1) P(H_i) - 1/d] P(D_j | H_i)
GroundPrediction born_urgleichung(const ProbVector& p, const ConditionalMatrix& c, int d);

/// Ground measurement D_j = U Pi_j U^dagger / d:
/// Q(D_j) = (d+1) sum_i P(H_i) P(D_j | H_i) - 1/d, the SIC probabilities of
/// U^dagger rho U.
GroundPrediction unitary_evolution_probs(const ProbVector& p, const ComplexMatrix& u, const Sic& sic);

/// n = q d (d-1) / 2 + d
std::size_t family_outcome_count(int q, int d);

/// Q(D_j) = (q d / 2 + 1) sum_i P(H_i) P(D_j | H_i) - q / 2
GroundPrediction general_family(const ProbVector& p, const ConditionalMatrix& c, int q, int d);

QPlexReport qplex_membership(const ProbVector& p, const Sic& sic, double tol = kStateTol);

struct TicketPrices {
  double p_e = 0;
  double p_f = 0;
  double p_e_or_f = 0;
};

enum class Ticket { E, F, EOrF };
enum class BookieAction { Buys, Sells };

/// The bookie trades one "worth $1 if ..." ticket with Alice at her price.
struct Transaction {
  Ticket ticket;
  BookieAction action;
  double price;
};

struct DutchBookVerdict {
  bool coherent = true;
  std::vector<Transaction> transactions;
  /// Alice's guaranteed loss in the outcomes E, F, neither (E and F are
  /// mutually exclusive). All strictly positive when incoherent.
  std::array<double, 3> loss{};
};

DutchBookVerdict dutch_book_check(const TicketPrices& t);

const char* to_string(Ticket t) noexcept;
const char* to_string(BookieAction a) noexcept;

}  // namespace sicprob
