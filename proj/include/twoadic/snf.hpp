#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace twoadic {

/// num / 2^k in Q/Z, canonical: num odd (or the pair (0, 0)), 0 <= num < 2^k.
class DyadicRotation {
 public:
  DyadicRotation() = default;
  /// Any integer numerator; reduced mod 2^k and normalized. k <= 62.
  static DyadicRotation make(std::int64_t num, int k);

  std::uint64_t num() const { return num_; }
  int exponent() const { return k_; }
  bool is_zero() const { return num_ == 0; }
  std::string to_string() const;

  friend DyadicRotation operator+(const DyadicRotation& a, const DyadicRotation& b);
  DyadicRotation operator-() const;
  friend DyadicRotation operator-(const DyadicRotation& a, const DyadicRotation& b) { return a + (-b); }
  /// Integer multiple.
  DyadicRotation times(std::uint64_t k) const;
  DyadicRotation& operator+=(const DyadicRotation& o) { return *this = *this + o; }
  friend bool operator==(const DyadicRotation&, const DyadicRotation&) = default;
  friend auto operator<=>(const DyadicRotation&, const DyadicRotation&) = default;

 private:
  std::uint64_t num_ = 0;
  int k_ = 0;
};

/// Abelian group Z^generators / (row span of relations).
struct GroupPresentation {
  int generators = 0;
  std::vector<std::vector<std::int64_t>> relations;
};

/// R V = U^-1 D with D diagonal; generator j has coordinates row j of V,
/// taken modulo factors[t]. A zero factor is a free summand.
struct SmithForm {
  std::vector<std::int64_t> factors;           // one per generator
  std::vector<std::vector<std::int64_t>> V;    // generators x generators

  bool finite() const;
  /// Product of the factors (Overflow past 2^62; InvalidArgument if infinite).
  std::int64_t order() const;
  std::vector<std::int64_t> coordinates(const std::vector<std::int64_t>& x) const;
};

/// Diagonalizes with row and column operations; column operations are
/// tracked in V. Throws Overflow on int64 overflow.
SmithForm smith_normal_form(const GroupPresentation& p);

}  // namespace twoadic
