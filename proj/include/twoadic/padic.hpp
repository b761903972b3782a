#pragma once

// Truncated arithmetic in the ring of integers o of a totally ramified
// extension F/Q2 given by an Eisenstein polynomial E of degree e.
//
// An element of o/p^N is stored as sum_{i<e} a_i pi^i with a_i reduced
// modulo 2^ceil((N-i)/e). The moduli all divide 2^64, so intermediate
// arithmetic is done with wrapping uint64_t and masked at the end.

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "twoadic/error.hpp"

namespace twoadic {

inline constexpr int kMaxDegree = 6;
inline constexpr int kCoeffBits = 62;

/// Valuation of a truncated element: either a definite value v < N, or the
/// marker "at least N" for elements indistinguishable from zero.
struct Valuation {
  int value = 0;
  bool at_least = false;

  static constexpr Valuation exact(int v) { return {v, false}; }
  static constexpr Valuation lower_bound(int n) { return {n, true}; }

  constexpr bool is_definite() const { return !at_least; }
  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
  std::string to_string() const;
};

class FieldSpec;

class TruncElem {
 public:
  using Coeffs = std::array<std::uint64_t, kMaxDegree>;

  TruncElem() = default;
  TruncElem(const FieldSpec& field, int precision, const Coeffs& coeffs);

  bool valid() const { return field_ != nullptr; }
  const FieldSpec& field() const { return *field_; }
  const FieldSpec* field_ptr() const { return field_; }
  int precision() const { return precision_; }
  std::uint64_t coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
  const Coeffs& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_unit() const { return precision_ > 0 && (c_[0] & 1U) != 0; }
  /// Image in the residue field F2.
  unsigned residue() const { return precision_ > 0 ? static_cast<unsigned>(c_[0] & 1U) : 0U; }
  Valuation valuation() const;
  /// True iff val >= k is certain at this precision; throws PrecisionTooSmall
  /// when undecidable.
  bool val_at_least(int k) const;

  /// Same element at lower precision.
  TruncElem reduce(int precision) const;
  /// Reinterpret the canonical coefficients at a higher precision.
  TruncElem lift(int precision) const;
  TruncElem with_precision(int precision) const {
    return precision <= precision_ ? reduce(precision) : lift(precision);
  }

  /// Multiply by pi^k; the result is known to precision N + k.
  TruncElem mul_pi(int k) const;
  /// Exact division by pi^k; requires val >= k; result has precision N - k.
  TruncElem div_pi(int k) const;

  /// Newton iteration x <- x(2 - a x) starting from the residue-field inverse.
  TruncElem inverse() const;

  /// pi-adic digits d_0..d_{N-1} in {0,1}, packed little-endian.
  std::uint64_t digit_bits() const;
  std::vector<int> digits() const;

  std::string to_string() const;

  TruncElem operator-() const;
  TruncElem& operator+=(const TruncElem& o);
  TruncElem& operator-=(const TruncElem& o);
  TruncElem& operator*=(const TruncElem& o);
  friend TruncElem operator+(TruncElem a, const TruncElem& b) { return a += b; }
  friend TruncElem operator-(TruncElem a, const TruncElem& b) { return a -= b; }
  friend TruncElem operator*(TruncElem a, const TruncElem& b) { return a *= b; }
  friend bool operator==(const TruncElem& a, const TruncElem& b);
  friend bool operator!=(const TruncElem& a, const TruncElem& b) { return !(a == b); }

  void canonicalize();

 private:
  void check_compatible(const TruncElem& o) const;

  const FieldSpec* field_ = nullptr;
  int precision_ = 0;
  Coeffs c_{};
};

class FieldSpec {
 public:
  FieldSpec(const FieldSpec&) = delete;
  FieldSpec& operator=(const FieldSpec&) = delete;

  int e() const { return e_; }
  /// Default precision requested at construction.
  int working_precision() const { return working_precision_; }
  /// Largest precision representable with 62-bit coefficients.
  int precision_limit() const { return precision_limit_; }
  /// Coefficients c_0..c_e of E, constant term first.
  std::span<const std::int64_t> eisenstein() const { return eisenstein_; }

  /// u = pi^e / 2, at the precision limit.
  const TruncElem& u() const { return u_; }
  const TruncElem& u_inverse() const { return u_inv_; }
  /// 2 / pi = pi^(e-1) u^-1.
  const TruncElem& two_over_pi() const { return two_over_pi_; }

  std::uint64_t mask(int precision, int i) const {
    return masks_[static_cast<std::size_t>(precision)][static_cast<std::size_t>(i)];
  }
  /// -c_j reduced modulo 2^64, used for the relation pi^e = -sum c_j pi^j.
  std::uint64_t neg_coeff(int j) const { return neg_c_[static_cast<std::size_t>(j)]; }

  void check_precision(int precision) const;

  TruncElem zero(int precision) const;
  TruncElem one(int precision) const;
  TruncElem from_int(std::int64_t value, int precision) const;
  TruncElem pi_power(int k, int precision) const;
  /// sum over set bits t of `bits` of pi^(low + t).
  TruncElem from_digits(std::uint64_t bits, int low, int precision) const;

  std::string describe() const;

 private:
  friend std::shared_ptr<const FieldSpec> make_field(int, std::span<const std::int64_t>, int);
  FieldSpec() = default;

  int e_ = 1;
  int working_precision_ = 1;
  int precision_limit_ = 1;
  std::vector<std::int64_t> eisenstein_;
  std::array<std::uint64_t, kMaxDegree> neg_c_{};
  std::vector<std::array<std::uint64_t, kMaxDegree>> masks_;
  std::vector<TruncElem> pi_powers_;  // at precision_limit_
  TruncElem u_;
  TruncElem u_inv_;
  TruncElem two_over_pi_;
};

using Field = std::shared_ptr<const FieldSpec>;

/// Builds the field Q2[x]/(E). `eisenstein` lists c_0..c_e with c_e = 1.
/// Throws NotEisenstein or PrecisionTooSmall (precision < e).
Field make_field(int e, std::span<const std::int64_t> eisenstein, int precision);
inline Field make_field(int e, std::initializer_list<std::int64_t> eisenstein, int precision) {
  return make_field(e, std::span<const std::int64_t>(eisenstein.begin(), eisenstein.size()), precision);
}

/// Q2 itself (E = x - 2).
Field make_q2(int precision);

inline TruncElem invert_unit(const TruncElem& a) { return a.inverse(); }
inline Valuation valuation(const TruncElem& a) { return a.valuation(); }

// ---------------------------------------------------------------------------

inline TruncElem::TruncElem(const FieldSpec& field, int precision, const Coeffs& coeffs)
    : field_(&field), precision_(precision), c_(coeffs) {
  field.check_precision(precision);
  for (int i = field.e(); i < kMaxDegree; ++i) c_[static_cast<std::size_t>(i)] = 0;
  canonicalize();
}

inline void TruncElem::canonicalize() {
  const int e = field_->e();
  for (int i = 0; i < e; ++i) c_[static_cast<std::size_t>(i)] &= field_->mask(precision_, i);
}

inline void TruncElem::check_compatible(const TruncElem& o) const {
  if (field_ != o.field_) fail(ErrorCode::PrecisionMismatch, "operands belong to different fields");
  if (precision_ != o.precision_)
    fail(ErrorCode::PrecisionMismatch,
         "precision " + std::to_string(precision_) + " vs " + std::to_string(o.precision_));
}

inline bool TruncElem::is_zero() const {
  for (int i = 0; i < field_->e(); ++i)
    if (c_[static_cast<std::size_t>(i)] != 0) return false;
  return true;
}

inline TruncElem TruncElem::operator-() const {
  TruncElem r = *this;
  for (int i = 0; i < field_->e(); ++i) r.c_[static_cast<std::size_t>(i)] = 0 - c_[static_cast<std::size_t>(i)];
  r.canonicalize();
  return r;
}

inline TruncElem& TruncElem::operator+=(const TruncElem& o) {
  check_compatible(o);
  for (int i = 0; i < field_->e(); ++i) c_[static_cast<std::size_t>(i)] += o.c_[static_cast<std::size_t>(i)];
  canonicalize();
  return *this;
}

inline TruncElem& TruncElem::operator-=(const TruncElem& o) {
  check_compatible(o);
  for (int i = 0; i < field_->e(); ++i) c_[static_cast<std::size_t>(i)] -= o.c_[static_cast<std::size_t>(i)];
  canonicalize();
  return *this;
}

inline TruncElem& TruncElem::operator*=(const TruncElem& o) {
  check_compatible(o);
  const int e = field_->e();
  if (e == 1) {
    c_[0] *= o.c_[0];
    canonicalize();
    return *this;
  }
  std::array<std::uint64_t, 2 * kMaxDegree - 1> prod{};
  for (int i = 0; i < e; ++i) {
    const std::uint64_t ai = c_[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    for (int j = 0; j < e; ++j) prod[static_cast<std::size_t>(i + j)] += ai * o.c_[static_cast<std::size_t>(j)];
  }
  for (int k = 2 * e - 2; k >= e; --k) {
    const std::uint64_t t = prod[static_cast<std::size_t>(k)];
    if (t == 0) continue;
    for (int j = 0; j < e; ++j) prod[static_cast<std::size_t>(k - e + j)] += t * field_->neg_coeff(j);
  }
  for (int i = 0; i < e; ++i) c_[static_cast<std::size_t>(i)] = prod[static_cast<std::size_t>(i)];
  canonicalize();
  return *this;
}

inline bool operator==(const TruncElem& a, const TruncElem& b) {
  if (a.field_ != b.field_ || a.precision_ != b.precision_) return false;
  return a.c_ == b.c_;
}

}  // namespace twoadic
