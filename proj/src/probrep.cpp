#include "sicprob/probrep.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace sicprob {

namespace {

void require_sky_size(std::size_t outcomes, const Sic& sic, const char* context) {
  const auto d2 = static_cast<std::size_t>(sic.dim) * static_cast<std::size_t>(sic.dim);
  if (outcomes != d2) {
    throw Error(ErrorKind::ShapeMismatch, std::string(context) + ": expected " + std::to_string(d2) +
                                              " sky outcomes, got " + std::to_string(outcomes));
  }
}

Eigen::Map<const Eigen::VectorXd> as_eigen(const ProbVector& p) {
  return {p.values.data(), static_cast<Index>(p.values.size())};
}

GroundPrediction flag(std::vector<double> values) {
  GroundPrediction out;
  for (double v : values) {
    if (v < -kStateTol || v > 1.0 + kStateTol) out.out_of_range = true;
  }
  out.q.values = std::move(values);
  return out;
}

}  // namespace

void validate(const ProbVector& p) {
  if (p.values.empty()) throw Error(ErrorKind::InvalidArgument, "probability vector is empty");
  for (double v : p.values) {
    if (!(v >= -kProbEntryTol && v <= 1.0 + kProbEntryTol)) {
      throw Error(ErrorKind::InvalidArgument, "probability entry " + std::to_string(v) + " outside [0, 1]");
    }
  }
  const double sum = std::accumulate(p.values.begin(), p.values.end(), 0.0);
  if (std::abs(sum - 1.0) > kProbSumTol) {
    throw Error(ErrorKind::InvalidArgument, "probabilities sum to " + std::to_string(sum));
  }
}

ProbVector make_prob_vector(std::vector<double> values) {
  ProbVector p{std::move(values)};
  validate(p);
  return p;
}

void validate(const ConditionalMatrix& c) {
  if (c.values.size() == 0) throw Error(ErrorKind::InvalidArgument, "conditional matrix is empty");
  if ((c.values.array() < -kProbEntryTol).any() || (c.values.array() > 1.0 + kProbEntryTol).any()) {
    throw Error(ErrorKind::InvalidArgument, "conditional probability outside [0, 1]");
  }
  const Eigen::RowVectorXd sums = c.values.colwise().sum();
  if ((sums.array() - 1.0).abs().maxCoeff() > kProbSumTol) {
    throw Error(ErrorKind::InvalidArgument, "conditional matrix column does not sum to 1");
  }
}

bool is_density_matrix(const ComplexMatrix& rho, double tol) {
  if (!is_hermitian(rho)) return false;
  if (std::abs(rho.trace() - Complex(1.0)) > tol) return false;
  return is_psd(rho, tol);
}

void require_state(const ComplexMatrix& rho, const char* context) {
  if (!is_density_matrix(rho)) {
    throw Error(ErrorKind::NotAState, std::string(context) + ": not a density matrix");
  }
}

ProbVector state_to_probs(const ComplexMatrix& rho, const Sic& sic) {
  require_state(rho, "state_to_probs");
  if (rho.rows() != sic.dim) throw Error(ErrorKind::NotAState, "state_to_probs: state and SIC dimensions differ");
  ProbVector p;
  p.values.reserve(sic.vectors.size());
  for (const auto& v : sic.vectors) {
    // tr(rho |v><v|) = <v|rho|v>
    p.values.push_back(std::real(v.dot(rho * v)) / sic.dim);
  }
  return p;
}

ComplexMatrix probs_to_state(const ProbVector& p, const Sic& sic) {
  require_sky_size(p.outcomes(), sic, "probs_to_state");
  const double d = sic.dim;
  ComplexMatrix rho = ComplexMatrix::Zero(sic.dim, sic.dim);
  for (std::size_t i = 0; i < p.outcomes(); ++i) {
    rho += ((d + 1.0) * p[i] - 1.0 / d) * sic.projectors[i];
  }
  return rho;
}

ConditionalMatrix conditional_matrix(const std::vector<ComplexMatrix>& ground, const Sic& sic) {
  if (ground.empty()) throw Error(ErrorKind::NotAPOVM, "conditional_matrix: empty POVM");
  ComplexMatrix sum = ComplexMatrix::Zero(sic.dim, sic.dim);
  for (const auto& e : ground) {
    if (e.rows() != sic.dim || e.cols() != sic.dim) {
      throw Error(ErrorKind::NotAPOVM, "conditional_matrix: POVM element dimension differs from SIC");
    }
    if (!is_hermitian(e) || !is_psd(e, kStateTol)) {
      throw Error(ErrorKind::NotAPOVM, "conditional_matrix: POVM element is not positive semidefinite");
    }
    sum += e;
  }
  if (max_abs_diff(sum, ComplexMatrix::Identity(sic.dim, sic.dim)) > kStateTol) {
    throw Error(ErrorKind::NotAPOVM, "conditional_matrix: POVM elements do not sum to the identity");
  }
  ConditionalMatrix c;
  c.values.resize(static_cast<Index>(ground.size()), static_cast<Index>(sic.vectors.size()));
  for (std::size_t j = 0; j < ground.size(); ++j) {
    for (std::size_t i = 0; i < sic.vectors.size(); ++i) {
      const auto& v = sic.vectors[i];
      c.values(static_cast<Index>(j), static_cast<Index>(i)) = std::real(v.dot(ground[j] * v));
    }
  }
  return c;
}

ProbVector ltp(const ProbVector& p, const ConditionalMatrix& c) {
  if (static_cast<Index>(p.outcomes()) != c.sky_outcomes()) {
    throw Error(ErrorKind::ShapeMismatch, "ltp: P has " + std::to_string(p.outcomes()) +
                                              " outcomes, C expects " + std::to_string(c.sky_outcomes()));
  }
  const Eigen::VectorXd out = c.values * as_eigen(p);
  return ProbVector{std::vector<double>(out.data(), out.data() + out.size())};
}

GroundPrediction born_urgleichung(const ProbVector& p, const ConditionalMatrix& c, int d) {
  const auto d2 = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  if (d < 2 || p.outcomes() != d2 || c.sky_outcomes() != static_cast<Index>(d2)) {
    throw Error(ErrorKind::ShapeMismatch, "born_urgleichung: P and C must have d^2 sky outcomes");
  }
  const double dd = d;
  const Eigen::VectorXd weights = (dd + 1.0) * as_eigen(p).array() - 1.0 / dd;
  const Eigen::VectorXd q = c.values * weights;
  return flag(std::vector<double>(q.data(), q.data() + q.size()));
}

GroundPrediction unitary_evolution_probs(const ProbVector& p, const ComplexMatrix& u, const Sic& sic) {
  require_sky_size(p.outcomes(), sic, "unitary_evolution_probs");
  if (u.rows() != sic.dim || u.cols() != sic.dim) {
    throw Error(ErrorKind::ShapeMismatch, "unitary_evolution_probs: U dimension differs from SIC");
  }
  require_unitary(u, "unitary_evolution_probs");
  const double d = sic.dim;
  const auto n = static_cast<Index>(sic.vectors.size());

  // P(D_j | H_i) = tr(Pi_i U Pi_j U^dagger) / d = |<psi_i| U |psi_j>|^2 / d
  std::vector<ComplexVector> rotated;
  rotated.reserve(sic.vectors.size());
  for (const auto& v : sic.vectors) rotated.push_back(u * v);
  Eigen::MatrixXd cond(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      cond(j, i) = std::norm(inner(sic.vectors[static_cast<std::size_t>(i)], rotated[static_cast<std::size_t>(j)])) / d;

  const Eigen::VectorXd q = ((d + 1.0) * (cond * as_eigen(p))).array() - 1.0 / d;
  return flag(std::vector<double>(q.data(), q.data() + q.size()));
}

std::size_t family_outcome_count(int q, int d) {
  if (q < 0 || d < 2) throw Error(ErrorKind::InvalidArgument, "family_outcome_count: need q >= 0, d >= 2");
  return static_cast<std::size_t>(q) * static_cast<std::size_t>(d) * static_cast<std::size_t>(d - 1) / 2 +
         static_cast<std::size_t>(d);
}

GroundPrediction general_family(const ProbVector& p, const ConditionalMatrix& c, int q, int d) {
  const std::size_t n = family_outcome_count(q, d);
  if (p.outcomes() != n) {
    throw Error(ErrorKind::BadOutcomeCount, "general_family: q=" + std::to_string(q) + ", d=" + std::to_string(d) +
                                                " needs " + std::to_string(n) + " outcomes, got " +
                                                std::to_string(p.outcomes()));
  }
  const ProbVector total = ltp(p, c);
  const double stretch = 0.5 * q * d + 1.0;
  const double shift = 0.5 * q;
  std::vector<double> out(total.values.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = stretch * total.values[j] - shift;
  return flag(std::move(out));
}

QPlexReport qplex_membership(const ProbVector& p, const Sic& sic, double tol) {
  const ComplexMatrix rho = probs_to_state(p, sic);
  QPlexReport r;
  r.tolerance = tol;
  r.min_eigenvalue = hermitian_eigenvalues(rho).minCoeff();
  r.reconstructed_trace = std::real(rho.trace());
  r.member = r.min_eigenvalue >= -tol;
  return r;
}

DutchBookVerdict dutch_book_check(const TicketPrices& t) {
  DutchBookVerdict v;
  const std::array<std::pair<Ticket, double>, 3> tickets{
      {{Ticket::E, t.p_e}, {Ticket::F, t.p_f}, {Ticket::EOrF, t.p_e_or_f}}};

  // Ticket payouts in the outcomes E, F, neither.
  auto pays = [](Ticket k) -> std::array<double, 3> {
    switch (k) {
      case Ticket::E: return {1, 0, 0};
      case Ticket::F: return {0, 1, 0};
      case Ticket::EOrF: return {1, 1, 0};
    }
    return {0, 0, 0};
  };

  for (const auto& [ticket, price] : tickets) {
    if (price < 0) {
      v.transactions.push_back({ticket, BookieAction::Buys, price});
      break;
    }
    if (price > 1) {
      v.transactions.push_back({ticket, BookieAction::Sells, price});
      break;
    }
  }
  if (v.transactions.empty()) {
    const double gap = t.p_e_or_f - (t.p_e + t.p_f);
    if (std::abs(gap) <= 1e-12) return v;
    const auto sell_side = gap > 0 ? BookieAction::Sells : BookieAction::Buys;
    const auto buy_side = gap > 0 ? BookieAction::Buys : BookieAction::Sells;
    v.transactions.push_back({Ticket::EOrF, sell_side, t.p_e_or_f});
    v.transactions.push_back({Ticket::E, buy_side, t.p_e});
    v.transactions.push_back({Ticket::F, buy_side, t.p_f});
  }

  v.coherent = false;
  for (const auto& tx : v.transactions) {
    const auto payout = pays(tx.ticket);
    for (std::size_t o = 0; o < 3; ++o) {
      // When the bookie sells, Alice pays the price and collects the payout.
      const double alice = tx.action == BookieAction::Sells ? payout[o] - tx.price : tx.price - payout[o];
      v.loss[o] -= alice;
    }
  }
  return v;
}

const char* to_string(Ticket t) noexcept {
  switch (t) {
    case Ticket::E: return "E";
    case Ticket::F: return "F";
    case Ticket::EOrF: return "E or F";
  }
  return "?";
}

const char* to_string(BookieAction a) noexcept {
  return a == BookieAction::Buys ? "bookie buys" : "bookie sells";
}

}  // namespace sicprob
