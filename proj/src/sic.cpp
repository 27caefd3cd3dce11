#include "sicprob/sic.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sicprob {

namespace {

constexpr double kPhaseZeroTol = 1e-12;

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

constexpr std::array<std::array<int, 2>, 4> kTetraSigns{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

}  // namespace

ComplexVector canonicalize_phase(const ComplexVector& v) {
  for (Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > kPhaseZeroTol) return v * (std::conj(v(i)) / mag);
  }
  return v;
}

Fiducial make_fiducial(ComplexVector vector, GroupSpec group, std::string label) {
  if (vector.size() != group.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "fiducial: vector dimension " + std::to_string(vector.size()) +
                                                  " does not match group dimension " + std::to_string(group.dim()));
  }
  if (!is_unit(vector)) throw Error(ErrorKind::InvalidArgument, "fiducial: vector is not unit norm");
  Fiducial f;
  f.dim = static_cast<int>(vector.size());
  f.vector = canonicalize_phase(vector);
  f.group = group;
  f.label = std::move(label);
  return f;
}

Sic make_sic(std::vector<ComplexVector> vectors) {
  if (vectors.empty()) throw Error(ErrorKind::ShapeMismatch, "sic: no vectors");
  const Index d = vectors.front().size();
  if (static_cast<Index>(vectors.size()) != d * d) {
    throw Error(ErrorKind::ShapeMismatch,
                "sic: expected " + std::to_string(d * d) + " vectors, got " + std::to_string(vectors.size()));
  }
  Sic s;
  s.dim = static_cast<int>(d);
  s.projectors.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != d) throw Error(ErrorKind::DimensionMismatch, "sic: vectors of differing dimension");
    if (!is_unit(v)) throw Error(ErrorKind::InvalidArgument, "sic: vector is not unit norm");
    s.projectors.push_back(projector(v));
  }
  s.vectors = std::move(vectors);
  return s;
}

Sic orbit(const Fiducial& f) {
  const auto group = all_displacements(f.group);
  std::vector<ComplexVector> vectors;
  vectors.reserve(group.size());
  for (const auto& d : group) vectors.push_back(d * f.vector);
  return make_sic(std::move(vectors));
}

VerificationReport verify_sic(const Sic& s, double tol) {
  VerificationReport r;
  r.dim = s.dim;
  r.tolerance = tol;
  const double target = 1.0 / (s.dim + 1);
  const auto n = s.vectors.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double overlap = std::norm(inner(s.vectors[i], s.vectors[j]));
      r.max_overlap_deviation = std::max(r.max_overlap_deviation, std::abs(overlap - target));
    }
  }
  ComplexMatrix sum = ComplexMatrix::Zero(s.dim, s.dim);
  for (const auto& p : s.projectors) sum += p;
  sum /= static_cast<double>(s.dim);
  r.max_resolution_deviation = max_abs_diff(sum, ComplexMatrix::Identity(s.dim, s.dim));
  r.pass = r.max_overlap_deviation <= tol && r.max_resolution_deviation <= tol;
  return r;
}

std::array<ComplexMatrix, 4> qubit_tetrahedron() {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const double k = 1.0 / std::sqrt(3.0);
  std::array<ComplexMatrix, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    const double s = kTetraSigns[i][0];
    const double r = kTetraSigns[i][1];
    out[i] = 0.5 * (id + k * (s * pauli_x() + r * pauli_y() + s * r * pauli_z()));
  }
  return out;
}

Sic tetrahedron_sic() {
  // Pure state with Bloch vector (x, y, z): (cos(t/2), e^{i phi} sin(t/2)).
  std::vector<ComplexVector> vectors;
  const double k = 1.0 / std::sqrt(3.0);
  for (const auto& [s, r] : kTetraSigns) {
    const double x = s * k;
    const double y = r * k;
    const double z = s * r * k;
    const double theta = std::acos(z);
    const double phi = std::atan2(y, x);
    ComplexVector v(2);
    v << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
    vectors.push_back(v);
  }
  return make_sic(std::move(vectors));
}

std::array<double, 4> qubit_sic_probs(double x, double y, double z) {
  if (x * x + y * y + z * z > 1.0 + 1e-9) {
    throw Error(ErrorKind::OffBlochSphere, "qubit_sic_probs: point lies outside the Bloch ball");
  }
  const double k = std::sqrt(3.0) / 12.0;
  std::array<double, 4> p{};
  for (std::size_t i = 0; i < 4; ++i) {
    const double s = kTetraSigns[i][0];
    const double r = kTetraSigns[i][1];
    p[i] = 0.25 + k * (s * x + r * y + s * r * z);
  }
  return p;
}

Fiducial builtin_fiducial(int d) {
  switch (d) {
    case 2: {
      const auto tetra = qubit_tetrahedron();
      const auto eig = hermitian_eig(tetra[0]);
      ComplexVector top = eig.vectors.col(1);
      return make_fiducial(top.normalized(), GroupSpec::single(2), "tetrahedron");
    }
    case 3: {
      ComplexVector v(3);
      v << 0, 1, -1;
      return make_fiducial(v / std::sqrt(2.0), GroupSpec::single(3), "hesse");
    }
    case 8: {
      ComplexVector v = ComplexVector::Ones(8);
      v(0) = Complex(-1, 2);
      return make_fiducial(v / std::sqrt(12.0), GroupSpec::tensor_power(2, 3), "hoggar");
    }
    default:
      throw Error(ErrorKind::NoBuiltin, "no built-in fiducial for d = " + std::to_string(d));
  }
}

ComplexMatrix projector_gram(const Sic& s) {
  const auto n = static_cast<Index>(s.projectors.size());
  ComplexMatrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      // tr(Pi_i Pi_j) = |<psi_i|psi_j>|^2 for rank-one projectors, but keep
      // the operator form so this stays an independent check.
      g(i, j) = (s.projectors[static_cast<std::size_t>(i)] * s.projectors[static_cast<std::size_t>(j)]).trace();
    }
  }
  return g;
}

std::int64_t squarefree_part(std::int64_t n) {
  if (n <= 0) throw Error(ErrorKind::InvalidArgument, "squarefree_part: need n > 0");
  std::int64_t out = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e % 2 == 1) out *= p;
  }
  return out * n;
}

std::int64_t dimension_tower_class(std::int64_t d) {
  if (d < 4) throw Error(ErrorKind::BadDimension, "dimension_tower_class: need d >= 4");
  if (d > 3'000'000'000LL) throw Error(ErrorKind::BadDimension, "dimension_tower_class: d too large");
  return squarefree_part((d - 3) * (d + 1));
}

}  // namespace sicprob
