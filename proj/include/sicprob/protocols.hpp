#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sicprob/linalg.hpp"

namespace sicprob {

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// "3/10", "1" or "-2/4".
  static Rational parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(Rational a, Rational b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

enum class Glow { Green, Red };

struct CoinConfiguration {
  char shared = 'H';   // Alice's and Bob's identically oriented coins
  char charlie = 'H';  // the coin Charlie hands to Alice
  Rational probability;
  Glow glow = Glow::Green;
  char bob_final = 'H';
};

struct CoinProtocolResult {
  Rational input_p;
  Rational bob_heads_prob;
  Rational charlie_original_posterior;
  std::vector<CoinConfiguration> enumeration;
};

/// Classical "teleportation" with glowing coin boxes, by exhaustive
/// enumeration of {HH, TT} x {Charlie H, Charlie T}.
CoinProtocolResult coin_teleport(Rational p);

struct OverlapReport {
  double max_deviation = 0;
  bool pass = false;
};

/// max over pairs of | |<U psi|U phi>| - |<psi|phi>| |, passing at 1e-12.
OverlapReport overlap_preservation_check(const ComplexMatrix& u,
                                         const std::vector<std::pair<ComplexVector, ComplexVector>>& pairs);

}  // namespace sicprob
