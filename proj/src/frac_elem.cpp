#include "twoadic/frac_elem.hpp"

#include <algorithm>

namespace twoadic {

namespace {

// Zero known modulo p^abs when abs <= 0.
FracElem coarse_zero(const FieldSpec& f, int abs) { return FracElem(f.zero(0), -abs); }

int effective_valuation(const FracElem& x) {
  const Valuation v = x.valuation();
  return v.value;
}

}  // namespace

FracElem::FracElem(TruncElem num, int shift) : num_(std::move(num)), shift_(shift) {
  if (shift_ < 0) {
    num_ = num_.mul_pi(-shift_);
    shift_ = 0;
  }
  while (shift_ > 0 && num_.precision() > 0 && (num_.coeff(0) & 1U) == 0) {
    num_ = num_.div_pi(1);
    --shift_;
  }
}

Valuation FracElem::valuation() const {
  const Valuation v = num_.valuation();
  if (!v.is_definite()) return Valuation::lower_bound(abs_precision());
  return Valuation::exact(v.value - shift_);
}

bool FracElem::val_at_least(int k) const {
  const Valuation v = valuation();
  if (v.is_definite()) return v.value >= k;
  if (k <= v.value) return true;
  fail(ErrorCode::PrecisionTooSmall, "cannot decide val >= " + std::to_string(k) +
                                         " at absolute precision " + std::to_string(abs_precision()));
}

TruncElem FracElem::to_integral(int precision) const {
  if (abs_precision() < precision)
    fail(ErrorCode::PrecisionExhausted, "element known to precision " + std::to_string(abs_precision()) +
                                            ", requested " + std::to_string(precision));
  if (shift_ > 0) fail(ErrorCode::ShapeViolation, "element " + to_string() + " is not integral");
  return num_.reduce(precision);
}

const FracElem& FracElem::require(int k) const {
  if (abs_precision() < k)
    fail(ErrorCode::PrecisionExhausted, "absolute precision " + std::to_string(abs_precision()) +
                                            " is below the required " + std::to_string(k));
  return *this;
}

FracElem FracElem::truncate(int abs) const {
  if (abs >= abs_precision()) return *this;
  if (abs + shift_ <= 0) return coarse_zero(field(), abs);
  return FracElem(num_.reduce(abs + shift_), shift_);
}

std::string FracElem::to_string() const {
  if (shift_ == 0) return num_.to_string();
  return "(" + num_.to_string() + ") * pi^-" + std::to_string(shift_);
}

FracElem operator+(const FracElem& a, const FracElem& b) {
  if (a.num_.field_ptr() != b.num_.field_ptr())
    fail(ErrorCode::PrecisionMismatch, "operands belong to different fields");
  const int abs = std::min(a.abs_precision(), b.abs_precision());
  const int s = std::max(a.shift_, b.shift_);
  const int prec = abs + s;
  if (prec <= 0) return coarse_zero(a.field(), abs);
  const TruncElem x = a.num_.mul_pi(s - a.shift_).reduce(prec);
  const TruncElem y = b.num_.mul_pi(s - b.shift_).reduce(prec);
  return FracElem(x + y, s);
}

FracElem operator*(const FracElem& a, const FracElem& b) {
  if (a.num_.field_ptr() != b.num_.field_ptr())
    fail(ErrorCode::PrecisionMismatch, "operands belong to different fields");
  const int abs = std::min(a.abs_precision() + effective_valuation(b), b.abs_precision() + effective_valuation(a));
  const int s = a.shift_ + b.shift_;
  const int prec = abs + s;
  if (prec <= 0) return coarse_zero(a.field(), abs);
  return FracElem(a.num_.with_precision(prec) * b.num_.with_precision(prec), s);
}

bool operator==(const FracElem& a, const FracElem& b) { return a.shift_ == b.shift_ && a.num_ == b.num_; }

FracElem scale_by_pi(const FracElem& x, int k) { return FracElem(x.num(), x.shift() - k); }

}  // namespace twoadic
