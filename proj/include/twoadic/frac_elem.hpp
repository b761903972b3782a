#pragma once

#include <string>

#include "twoadic/padic.hpp"

namespace twoadic {

/// num * pi^(-shift). The denoted element is known modulo p^(abs_precision),
/// abs_precision = num.precision() - shift. Construction strips common
/// factors of pi so the shift is minimal (zero for integral elements).
class FracElem {
 public:
  FracElem() = default;
  explicit FracElem(TruncElem num, int shift = 0);

  static FracElem integral(const TruncElem& x) { return FracElem(x, 0); }

  const TruncElem& num() const { return num_; }
  int shift() const { return shift_; }
  const FieldSpec& field() const { return num_.field(); }
  int abs_precision() const { return num_.precision() - shift_; }

  /// val(num) - shift, or "at least abs_precision" when indistinguishable from 0.
  Valuation valuation() const;
  bool is_zero() const { return num_.is_zero(); }
  bool is_integral() const { return shift_ == 0; }
  bool val_at_least(int k) const;

  /// The integral element at precision `precision`; throws ShapeViolation if
  /// the element is not integral and PrecisionExhausted if too imprecise.
  TruncElem to_integral(int precision) const;
  /// Throws PrecisionExhausted unless abs_precision() >= k.
  const FracElem& require(int k) const;
  /// Drop precision to at most `abs_precision`.
  FracElem truncate(int abs_precision) const;

  std::string to_string() const;

  FracElem operator-() const { return FracElem(-num_, shift_); }
  friend FracElem operator+(const FracElem& a, const FracElem& b);
  friend FracElem operator-(const FracElem& a, const FracElem& b) { return a + (-b); }
  friend FracElem operator*(const FracElem& a, const FracElem& b);
  FracElem& operator+=(const FracElem& o) { return *this = *this + o; }
  FracElem& operator-=(const FracElem& o) { return *this = *this - o; }
  FracElem& operator*=(const FracElem& o) { return *this = *this * o; }
  /// Same denoted element and same absolute precision.
  friend bool operator==(const FracElem& a, const FracElem& b);
  friend bool operator!=(const FracElem& a, const FracElem& b) { return !(a == b); }

 private:
  TruncElem num_;
  int shift_ = 0;
};

/// pi^k * x for any integer k.
FracElem scale_by_pi(const FracElem& x, int k);

}  // namespace twoadic
