#include "sicprob/definetti.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "sicprob/probrep.hpp"
#include "sicprob/rng.hpp"

namespace sicprob {

namespace {

constexpr std::uint64_t kOutcomeStream = 0x7f4a7c15ULL;

// log p_k(i) for every candidate k and SIC outcome i.
std::vector<std::vector<double>> log_likelihoods(const Prior& prior, const Sic& sic) {
  std::vector<std::vector<double>> out;
  out.reserve(prior.candidates.size());
  for (const auto& rho : prior.candidates) {
    const ProbVector p = state_to_probs(rho, sic);
    std::vector<double> logs(p.outcomes());
    for (std::size_t i = 0; i < logs.size(); ++i) {
      logs[i] = p[i] > 0 ? std::log(p[i]) : -std::numeric_limits<double>::infinity();
    }
    out.push_back(std::move(logs));
  }
  return out;
}

std::vector<double> normalize_logs(const std::vector<double>& logw) {
  const double top = *std::max_element(logw.begin(), logw.end());
  if (!std::isfinite(top)) throw Error(ErrorKind::ZeroEvidence, "bayes_update: every candidate assigns zero probability");
  std::vector<double> w(logw.size());
  double sum = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] = std::exp(logw[k] - top);
    sum += w[k];
  }
  for (double& x : w) x /= sum;
  return w;
}

std::vector<double> log_weights(const Prior& prior) {
  std::vector<double> logw(prior.weights.size());
  for (std::size_t k = 0; k < logw.size(); ++k) {
    logw[k] = prior.weights[k] > 0 ? std::log(prior.weights[k]) : -std::numeric_limits<double>::infinity();
  }
  return logw;
}

}  // namespace

void validate(const Prior& p) {
  if (p.candidates.empty() || p.candidates.size() != p.weights.size()) {
    throw Error(ErrorKind::InvalidArgument, "prior: need one weight per candidate");
  }
  double sum = 0;
  for (double w : p.weights) {
    if (!(w >= 0)) throw Error(ErrorKind::InvalidArgument, "prior: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "prior: weights do not sum to 1");
  const Index d = p.candidates.front().rows();
  for (const auto& rho : p.candidates) {
    if (rho.rows() != d) throw Error(ErrorKind::DimensionMismatch, "prior: candidates differ in dimension");
    require_state(rho, "prior");
  }
}

Prior make_prior(std::vector<ComplexMatrix> candidates, std::vector<double> weights) {
  Prior p{std::move(candidates), std::move(weights)};
  validate(p);
  return p;
}

ComplexMatrix mixture_state(const Prior& prior, int n, Index cap) {
  validate(prior);
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "mixture_state: need n >= 1");
  const Index d = prior.candidates.front().rows();
  Index total = 1;
  for (int i = 0; i < n; ++i) {
    total *= d;
    if (total > cap) throw Error(ErrorKind::SizeOverflow, "mixture_state: d^n exceeds cap");
  }
  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  for (std::size_t k = 0; k < prior.candidates.size(); ++k) {
    ComplexMatrix power = prior.candidates[k];
    for (int i = 1; i < n; ++i) power = tensor(power, prior.candidates[k], cap);
    out += prior.weights[k] * power;
  }
  return out;
}

std::vector<int> simulate_outcomes(const ComplexMatrix& true_state, const Sic& sic, int n, std::uint64_t seed) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "simulate_outcomes: need n >= 0");
  const ProbVector p = state_to_probs(true_state, sic);
  std::vector<double> weights(p.values);
  for (double& w : weights) w = std::max(w, 0.0);
  auto engine = stream_engine(seed, kOutcomeStream);
  std::discrete_distribution<int> draw(weights.begin(), weights.end());
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int& o : out) o = draw(engine);
  return out;
}

Prior bayes_update(const Prior& prior, const Sic& sic, const std::vector<int>& outcomes) {
  validate(prior);
  const auto d2 = static_cast<int>(sic.vectors.size());
  for (int o : outcomes) {
    if (o < 0 || o >= d2) throw Error(ErrorKind::OutOfRange, "bayes_update: outcome index out of range");
  }
  if (outcomes.empty()) return prior;
  const auto logl = log_likelihoods(prior, sic);
  std::vector<double> logw = log_weights(prior);
  // Sum in a fixed outcome-count order so permutations of the data give
  // bit-identical posteriors.
  std::vector<int> counts(static_cast<std::size_t>(d2), 0);
  for (int o : outcomes) ++counts[static_cast<std::size_t>(o)];
  for (std::size_t k = 0; k < logw.size(); ++k) {
    for (int i = 0; i < d2; ++i) {
      if (counts[static_cast<std::size_t>(i)] > 0) logw[k] += counts[static_cast<std::size_t>(i)] * logl[k][static_cast<std::size_t>(i)];
    }
  }
  return Prior{prior.candidates, normalize_logs(logw)};
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const RealVector ev = hermitian_eigenvalues(ComplexMatrix(a - b));
  return 0.5 * ev.cwiseAbs().sum();
}

TomographyTrace posterior_concentration(const Prior& prior, const ComplexMatrix& true_state, const Sic& sic, int n,
                                        std::uint64_t seed) {
  validate(prior);
  TomographyTrace trace;
  trace.seed = seed;

  std::vector<double> dist;
  for (const auto& rho : prior.candidates) dist.push_back(trace_distance(rho, true_state));
  const auto best = std::min_element(dist.begin(), dist.end());
  const bool exact = *best <= 1e-12;
  if (!exact && std::count_if(dist.begin(), dist.end(), [&](double x) { return std::abs(x - *best) <= 1e-12; }) > 1) {
    throw Error(ErrorKind::InvalidArgument, "posterior_concentration: closest candidate is not unique");
  }
  trace.closest_candidate = static_cast<int>(best - dist.begin());

  trace.outcomes = simulate_outcomes(true_state, sic, n, seed);
  const auto logl = log_likelihoods(prior, sic);
  std::vector<double> logw = log_weights(prior);
  trace.posterior_history.reserve(static_cast<std::size_t>(n) + 1);
  trace.posterior_history.push_back(normalize_logs(logw));
  for (int o : trace.outcomes) {
    for (std::size_t k = 0; k < logw.size(); ++k) logw[k] += logl[k][static_cast<std::size_t>(o)];
    trace.posterior_history.push_back(normalize_logs(logw));
  }
  trace.final_weight_on_closest = trace.posterior_history.back()[static_cast<std::size_t>(trace.closest_candidate)];
  return trace;
}

}  // namespace sicprob
