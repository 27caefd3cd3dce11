#include "sicprob/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "sicprob/rng.hpp"

namespace sicprob {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kHandoverResidual = 1e-6;
constexpr double kStationaryGradient = 1e-9;
constexpr double kConditionLimit = 1e12;
constexpr int kRefineSteps = 60;
constexpr double kResidualFloor = 1e-30;
constexpr double kContraction = 0.25;

double sphere_norm2(const ComplexVector& v) { return v.squaredNorm(); }

ComplexVector tangent(const ComplexVector& psi, const ComplexVector& g) {
  return g - std::real(psi.dot(g)) * psi;
}

// One backtracking step along -direction. Returns false if no step of
// length >= 1e-20 satisfies the Armijo condition.
bool armijo_step(const FramePotential& fp, ComplexVector& psi, double& value, const ComplexVector& direction,
                 double slope, double& step) {
  for (double alpha = step; alpha >= 1e-20; alpha *= 0.5) {
    ComplexVector trial = (psi - alpha * direction).normalized();
    const double v = fp.value(trial);
    if (v <= value - kArmijo * alpha * slope) {
      psi = std::move(trial);
      value = v;
      step = std::min(alpha * 2.0, 1e3);
      return true;
    }
  }
  return false;
}

// Gauss-Newton on the overlap residuals with a truncated-SVD solve; the
// truncation drops directions whose squared singular value ratio (the
// condition number of J^T J) exceeds kConditionLimit. A step that fails to
// reduce the residual is replaced by a projected gradient step. Once below
// target it keeps iterating while steps still contract the residual, so the
// result sits at the double-precision floor.
int refine(const FramePotential& fp, ComplexVector& psi, double target, int max_steps) {
  const Index d = fp.dim();
  double res = fp.residual(psi);
  double step = 0.1;
  int used = 0;
  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  for (; used < max_steps && res > kResidualFloor; ++used) {
    fp.overlap_residuals(psi, r, &jac);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1.0 / std::sqrt(kConditionLimit));
    bool improved = false;
    if (svd.rank() > 0) {
      const Eigen::VectorXd delta = svd.solve(-r);
      ComplexVector move(d);
      for (Index i = 0; i < d; ++i) move(i) = Complex(delta(i), delta(i + d));
      ComplexVector trial = (psi + move).normalized();
      const double t = fp.residual(trial);
      if (t < res) {
        const bool stalled = res <= target && t > kContraction * res;
        psi = std::move(trial);
        res = t;
        improved = true;
        if (stalled) break;
      }
    }
    if (!improved) {
      if (res <= target) break;
      const PotentialEval e = fp.evaluate(psi);
      const ComplexVector g = tangent(psi, e.gradient);
      double value = e.value;
      if (!armijo_step(fp, psi, value, g, sphere_norm2(g), step)) break;
      res = fp.residual(psi);
    }
  }
  psi = canonicalize_phase(psi);
  return used;
}

ComplexVector random_start(Index d, std::uint64_t seed, std::uint64_t restart) {
  auto engine = stream_engine(seed, restart);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(d);
  for (Index i = 0; i < d; ++i) {
    const double re = normal(engine);
    const double im = normal(engine);
    v(i) = Complex(re, im);
  }
  return v.normalized();
}

}  // namespace

ComplexVector MonomialOp::apply(const ComplexVector& v) const {
  ComplexVector out(v.size());
  for (std::size_t j = 0; j < target.size(); ++j) out(target[j]) = phase[j] * v(static_cast<Index>(j));
  return out;
}

ComplexVector MonomialOp::apply_adjoint(const ComplexVector& v) const {
  ComplexVector out(v.size());
  for (std::size_t j = 0; j < target.size(); ++j) out(static_cast<Index>(j)) = std::conj(phase[j]) * v(target[j]);
  return out;
}

std::vector<MonomialOp> monomial_group(const GroupSpec& spec) {
  const auto mats = all_displacements(spec);
  std::vector<MonomialOp> ops;
  ops.reserve(mats.size() - 1);
  for (std::size_t p = 1; p < mats.size(); ++p) {
    const ComplexMatrix& m = mats[p];
    MonomialOp op;
    op.target.resize(static_cast<std::size_t>(m.cols()));
    op.phase.resize(static_cast<std::size_t>(m.cols()));
    for (Index j = 0; j < m.cols(); ++j) {
      Index row = 0;
      m.col(j).cwiseAbs().maxCoeff(&row);
      op.target[static_cast<std::size_t>(j)] = row;
      op.phase[static_cast<std::size_t>(j)] = m(row, j);
    }
    ops.push_back(std::move(op));
  }
  return ops;
}

double welch_bound(Index d) { return static_cast<double>(d - 1) / static_cast<double>(d + 1); }

FramePotential::FramePotential(const GroupSpec& spec) : spec_(spec), dim_(spec.dim()), ops_(monomial_group(spec)) {}

double FramePotential::value(const ComplexVector& psi) const {
  double sum = 0;
  for (const auto& op : ops_) {
    Complex c = 0;
    for (std::size_t j = 0; j < op.target.size(); ++j) {
      c += std::conj(psi(op.target[j])) * op.phase[j] * psi(static_cast<Index>(j));
    }
    const double n = std::norm(c);
    sum += n * n;
  }
  return sum;
}

PotentialEval FramePotential::evaluate(const ComplexVector& psi) const {
  PotentialEval e;
  e.gradient = ComplexVector::Zero(dim_);
  for (const auto& op : ops_) {
    const ComplexVector dpsi = op.apply(psi);
    const Complex c = psi.dot(dpsi);
    const double n = std::norm(c);
    e.value += n * n;
    // d|c|^4 / d conj(psi) = 2 |c|^2 (conj(c) D psi + c D^dagger psi); the
    // real-coordinate gradient is twice the Wirtinger derivative.
    e.gradient += (4.0 * n) * (std::conj(c) * dpsi + c * op.apply_adjoint(psi));
  }
  return e;
}

double FramePotential::residual(const ComplexVector& psi) const {
  Eigen::VectorXd r;
  overlap_residuals(psi.normalized(), r, nullptr);
  return r.squaredNorm();
}

void FramePotential::overlap_residuals(const ComplexVector& psi, Eigen::VectorXd& r, Eigen::MatrixXd* jacobian) const {
  const double target = 1.0 / static_cast<double>(dim_ + 1);
  const auto n = static_cast<Index>(ops_.size());
  r.resize(n);
  if (jacobian) jacobian->resize(n, 2 * dim_);
  for (Index p = 0; p < n; ++p) {
    const auto& op = ops_[static_cast<std::size_t>(p)];
    const ComplexVector dpsi = op.apply(psi);
    const Complex c = psi.dot(dpsi);
    const double mag2 = std::norm(c);
    r(p) = mag2 - target;
    if (jacobian) {
      // |c|^2 of psi/|psi|: Wirtinger derivative at unit psi is
      // conj(c) D psi + c D^dagger psi - 2 |c|^2 psi.
      const ComplexVector w = std::conj(c) * dpsi + c * op.apply_adjoint(psi) - 2.0 * mag2 * psi;
      jacobian->row(p).head(dim_) = 2.0 * w.real().transpose();
      jacobian->row(p).tail(dim_) = 2.0 * w.imag().transpose();
    }
  }
}

double frame_potential(const ComplexVector& psi, const GroupSpec& spec) {
  if (psi.size() != spec.dim()) throw Error(ErrorKind::DimensionMismatch, "frame_potential: dimension mismatch");
  return FramePotential(spec).value(psi);
}

void validate(const SearchConfig& c) {
  if (c.dim < 2) throw Error(ErrorKind::InvalidArgument, "search: dim must be >= 2");
  if (c.group && c.group->dim() != c.dim) throw Error(ErrorKind::InvalidArgument, "search: group dimension differs");
  if (static_cast<Index>(c.dim) * c.dim > kDefaultDimCap) {
    throw Error(ErrorKind::SizeOverflow, "search: d^2 exceeds the dimension cap");
  }
  if (c.restarts < 1) throw Error(ErrorKind::InvalidArgument, "search: restarts must be >= 1");
  if (c.max_iterations < 0) throw Error(ErrorKind::InvalidArgument, "search: max_iterations must be >= 0");
  if (!(c.tolerance > 0)) throw Error(ErrorKind::InvalidArgument, "search: tolerance must be > 0");
  if (!(c.polish_tolerance <= c.tolerance)) {
    throw Error(ErrorKind::InvalidArgument, "search: polish_tolerance must not exceed tolerance");
  }
  if (c.jobs < 1) throw Error(ErrorKind::InvalidArgument, "search: jobs must be >= 1");
}

SearchExhausted::SearchExhausted(SearchResult best)
    : Error(ErrorKind::Exhausted, "no restart reached tolerance (best residual " + std::to_string(best.residual) + ")"),
      best_(std::move(best)) {}

LocalResult descend(const FramePotential& fp, ComplexVector start, int max_iterations, double tolerance) {
  const Index d = fp.dim();
  const double floor = welch_bound(d);
  LocalResult out;
  ComplexVector psi = start.normalized();
  double value = fp.value(psi);
  double step = 0.1;
  int it = 0;
  for (; it < max_iterations; ++it) {
    const double residual = value - floor;
    if (residual <= tolerance || residual <= kHandoverResidual) break;
    const PotentialEval e = fp.evaluate(psi);
    const ComplexVector g = tangent(psi, e.gradient);
    const double slope = sphere_norm2(g);
    if (std::sqrt(slope) <= kStationaryGradient) break;
    if (!armijo_step(fp, psi, value, g, slope, step)) break;
  }
  out.iterations = it;
  if (fp.residual(psi) <= kHandoverResidual) {
    out.iterations += refine(fp, psi, tolerance, kRefineSteps);
  } else {
    psi = canonicalize_phase(psi);
  }
  out.residual = fp.residual(psi);
  out.psi = std::move(psi);
  return out;
}

SearchResult search_fiducial(const SearchConfig& config) {
  validate(config);
  const GroupSpec group = config.group.value_or(GroupSpec::single(config.dim));
  const FramePotential fp(group);

  std::vector<LocalResult> results(static_cast<std::size_t>(config.restarts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < config.restarts; k = next++) {
      results[static_cast<std::size_t>(k)] =
          descend(fp, random_start(fp.dim(), config.seed, static_cast<std::uint64_t>(k)), config.max_iterations,
                  config.tolerance);
    }
  };
  const int jobs = std::min(config.jobs, config.restarts);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  int best = 0;
  for (int k = 1; k < config.restarts; ++k) {
    if (results[static_cast<std::size_t>(k)].residual < results[static_cast<std::size_t>(best)].residual) best = k;
  }
  const LocalResult& win = results[static_cast<std::size_t>(best)];
  SearchResult out{make_fiducial(win.psi, group, "search d=" + std::to_string(config.dim)), win.residual, best,
                   win.iterations, win.residual + welch_bound(fp.dim())};
  out.residual = fp.residual(out.fiducial.vector);
  out.potential_value = fp.value(out.fiducial.vector);
  if (out.residual > config.tolerance) throw SearchExhausted(std::move(out));
  return out;
}

Fiducial polish(const Fiducial& f, double target) {
  const FramePotential fp(f.group);
  const double start = fp.residual(f.vector);
  if (!(start <= kHandoverResidual)) {
    throw Error(ErrorKind::NotNearSolution,
                "polish: residual " + std::to_string(start) + " exceeds " + std::to_string(kHandoverResidual));
  }
  if (start <= target) return f;
  ComplexVector psi = f.vector;
  refine(fp, psi, target, kRefineSteps);
  if (fp.residual(psi) > start) return f;
  return make_fiducial(psi.normalized(), f.group, f.label);
}

}  // namespace sicprob
