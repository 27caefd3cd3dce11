#include "sicprob/weyl_heisenberg.hpp"

#include <numbers>
#include <string>

namespace sicprob {

namespace {

void require_dim(int d, const char* context) {
  if (d < 2) throw Error(ErrorKind::BadDimension, std::string(context) + ": need d >= 2, got " + std::to_string(d));
}

int reduce(int v, int d) {
  const int r = v % d;
  return r < 0 ? r + d : r;
}

// X^m Z^n: column j maps to row j+m with phase w^{n j}.
ComplexMatrix single_displacement(int d, int m, int n) {
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((n * j) % d) / d;
    out((j + m) % d, j) = std::polar(1.0, angle);
  }
  return out;
}

}  // namespace

GroupSpec GroupSpec::single(int d) {
  require_dim(d, "GroupSpec::single");
  return GroupSpec(Kind::Single, d, 1);
}

GroupSpec GroupSpec::tensor_power(int base_d, int k) {
  require_dim(base_d, "GroupSpec::tensor_power");
  if (k < 1) throw Error(ErrorKind::BadDimension, "GroupSpec::tensor_power: need k >= 1");
  return GroupSpec(Kind::TensorPower, base_d, k);
}

Index GroupSpec::dim() const noexcept {
  Index n = 1;
  for (int i = 0; i < factors_; ++i) n *= base_;
  return n;
}

DisplacementIndex make_index(const GroupSpec& spec, std::vector<std::pair<int, int>> components) {
  if (static_cast<int>(components.size()) != spec.factors()) {
    throw Error(ErrorKind::ShapeMismatch, "displacement index needs " + std::to_string(spec.factors()) +
                                              " (m, n) pairs, got " + std::to_string(components.size()));
  }
  for (auto& [m, n] : components) {
    m = reduce(m, spec.base_dim());
    n = reduce(n, spec.base_dim());
  }
  return DisplacementIndex{std::move(components)};
}

ComplexMatrix shift_op(int d) {
  require_dim(d, "shift_op");
  return single_displacement(d, 1, 0);
}

ComplexMatrix phase_op(int d) {
  require_dim(d, "phase_op");
  return single_displacement(d, 0, 1);
}

ComplexMatrix displacement(const GroupSpec& spec, const DisplacementIndex& idx) {
  const int d = spec.base_dim();
  if (static_cast<int>(idx.components.size()) != spec.factors()) {
    throw Error(ErrorKind::ShapeMismatch, "displacement: index shape does not match group");
  }
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& [m, n] : idx.components) {
    out = tensor(out, single_displacement(d, reduce(m, d), reduce(n, d)));
  }
  return out;
}

std::vector<DisplacementIndex> all_indices(const GroupSpec& spec) {
  const int d = spec.base_dim();
  const int slots = 2 * spec.factors();
  std::vector<DisplacementIndex> out;
  out.reserve(static_cast<std::size_t>(spec.order()));
  std::vector<int> digits(static_cast<std::size_t>(slots), 0);
  for (Index count = 0; count < spec.order(); ++count) {
    DisplacementIndex idx;
    for (int f = 0; f < spec.factors(); ++f) {
      idx.components.emplace_back(digits[static_cast<std::size_t>(2 * f)],
                                  digits[static_cast<std::size_t>(2 * f + 1)]);
    }
    out.push_back(std::move(idx));
    for (int s = slots - 1; s >= 0; --s) {  // odometer, last slot fastest
      if (++digits[static_cast<std::size_t>(s)] < d) break;
      digits[static_cast<std::size_t>(s)] = 0;
    }
  }
  return out;
}

std::vector<ComplexMatrix> all_displacements(const GroupSpec& spec, Index cap) {
  if (spec.dim() > cap) {
    throw Error(ErrorKind::SizeOverflow, "all_displacements: dimension " + std::to_string(spec.dim()) +
                                             " exceeds cap " + std::to_string(cap));
  }
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(spec.order()));
  for (const auto& idx : all_indices(spec)) out.push_back(displacement(spec, idx));
  return out;
}

}  // namespace sicprob
