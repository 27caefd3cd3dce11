#include "sicprob/protocols.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

namespace sicprob {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorKind::OutOfRange, "rational arithmetic overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorKind::OutOfRange, "rational arithmetic overflow");
  return out;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::InvalidArgument, "not a rational number: \"" + std::string(s) + "\"");
  }
  return v;
}

char flip(char c) { return c == 'H' ? 'T' : 'H'; }

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(Rational a, Rational b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  return Rational(checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, a.den_ / g)),
                  checked_mul(a.den_, b.den_ / g));
}

Rational operator-(Rational a, Rational b) { return a + Rational(-b.num_, b.den_); }

Rational operator*(Rational a, Rational b) {
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

bool operator<(Rational a, Rational b) { return (a - b).num_ < 0; }

CoinProtocolResult coin_teleport(Rational p) {
  if (p < Rational(0) || Rational(1) < p) throw Error(ErrorKind::OutOfRange, "coin_teleport: p must lie in [0, 1]");
  const Rational half(1, 2);

  CoinProtocolResult r;
  r.input_p = p;
  for (char shared : {'H', 'T'}) {
    for (char charlie : {'H', 'T'}) {
      CoinConfiguration c;
      c.shared = shared;
      c.charlie = charlie;
      c.probability = half * (charlie == 'H' ? p : Rational(1) - p);
      // Alice touches Charlie's box to hers; Bob turns his coin over on red.
      c.glow = charlie == shared ? Glow::Green : Glow::Red;
      c.bob_final = c.glow == Glow::Green ? shared : flip(shared);
      if (c.bob_final == 'H') r.bob_heads_prob = r.bob_heads_prob + c.probability;
      // Alice then randomizes both coins she holds, leaving Charlie's
      // original box heads with probability 1/2 whatever the configuration.
      r.charlie_original_posterior = r.charlie_original_posterior + c.probability * half;
      r.enumeration.push_back(c);
    }
  }
  return r;
}

OverlapReport overlap_preservation_check(const ComplexMatrix& u,
                                         const std::vector<std::pair<ComplexVector, ComplexVector>>& pairs) {
  require_unitary(u, "overlap_preservation_check");
  OverlapReport r;
  for (const auto& [psi, phi] : pairs) {
    if (psi.size() != u.cols() || phi.size() != u.cols()) {
      throw Error(ErrorKind::DimensionMismatch, "overlap_preservation_check: vector dimension differs from U");
    }
    const double before = std::abs(inner(psi, phi));
    const double after = std::abs(inner(ComplexVector(u * psi), ComplexVector(u * phi)));
    r.max_deviation = std::max(r.max_deviation, std::abs(after - before));
  }
  r.pass = r.max_deviation <= 1e-12;
  return r;
}

}  // namespace sicprob
