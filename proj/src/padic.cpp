#include "twoadic/padic.hpp"

#include <bit>
#include <sstream>

namespace twoadic {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotEisenstein: return "NotEisenstein";
    case ErrorCode::PrecisionTooSmall: return "PrecisionTooSmall";
    case ErrorCode::PrecisionMismatch: return "PrecisionMismatch";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::ShapeViolation: return "ShapeViolation";
    case ErrorCode::NotTraceZero: return "NotTraceZero";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

std::string Valuation::to_string() const {
  return at_least ? ">=" + std::to_string(value) : std::to_string(value);
}

namespace {

int two_adic_valuation(std::int64_t v) {
  if (v == 0) return 64;
  return std::countr_zero(static_cast<std::uint64_t>(v));
}

}  // namespace

Field make_field(int e, std::span<const std::int64_t> eisenstein, int precision) {
  if (e < 1 || e > kMaxDegree)
    fail(ErrorCode::InvalidArgument, "ramification index must be in 1.." + std::to_string(kMaxDegree));
  if (eisenstein.size() != static_cast<std::size_t>(e) + 1)
    fail(ErrorCode::NotEisenstein, "expected " + std::to_string(e + 1) + " coefficients, got " +
                                       std::to_string(eisenstein.size()));
  if (eisenstein[static_cast<std::size_t>(e)] != 1) fail(ErrorCode::NotEisenstein, "polynomial is not monic");
  if (two_adic_valuation(eisenstein[0]) != 1)
    fail(ErrorCode::NotEisenstein, "constant term must have 2-adic valuation exactly 1");
  for (int i = 1; i < e; ++i)
    if (eisenstein[static_cast<std::size_t>(i)] % 2 != 0)
      fail(ErrorCode::NotEisenstein, "coefficient of x^" + std::to_string(i) + " is odd");
  if (precision < e)
    fail(ErrorCode::PrecisionTooSmall,
         "precision " + std::to_string(precision) + " is below the ramification index " + std::to_string(e));

  std::shared_ptr<FieldSpec> f(new FieldSpec());
  f->e_ = e;
  f->eisenstein_.assign(eisenstein.begin(), eisenstein.end());
  f->precision_limit_ = kCoeffBits * e;
  if (precision > f->precision_limit_)
    fail(ErrorCode::PrecisionExhausted, "precision exceeds limit " + std::to_string(f->precision_limit_));
  f->working_precision_ = precision;
  for (int j = 0; j < e; ++j) f->neg_c_[static_cast<std::size_t>(j)] = 0 - static_cast<std::uint64_t>(eisenstein[static_cast<std::size_t>(j)]);

  f->masks_.resize(static_cast<std::size_t>(f->precision_limit_) + 1);
  for (int n = 0; n <= f->precision_limit_; ++n) {
    for (int i = 0; i < e; ++i) {
      const int bits = n - i <= 0 ? 0 : (n - i + e - 1) / e;
      f->masks_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] =
          bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    }
  }

  const int top = f->precision_limit_;
  TruncElem::Coeffs pi{};
  if (e == 1)
    pi[0] = f->neg_c_[0];
  else
    pi[1] = 1;
  const TruncElem pi_elem(*f, top, pi);
  f->pi_powers_.reserve(static_cast<std::size_t>(top) + 1);
  f->pi_powers_.push_back(f->one(top));
  for (int k = 1; k <= top; ++k) f->pi_powers_.push_back(f->pi_powers_.back() * pi_elem);

  // pi^e = -sum c_j pi^j, and every c_j is even, so u = -sum (c_j / 2) pi^j.
  TruncElem::Coeffs u{};
  for (int j = 0; j < e; ++j) u[static_cast<std::size_t>(j)] = 0 - static_cast<std::uint64_t>(eisenstein[static_cast<std::size_t>(j)] / 2);
  f->u_ = TruncElem(*f, top, u);
  if (!f->u_.is_unit()) fail(ErrorCode::Internal, "u = pi^e/2 is not a unit");
  f->u_inv_ = f->u_.inverse();
  f->two_over_pi_ = f->pi_powers_[static_cast<std::size_t>(e - 1)] * f->u_inv_;
  return f;
}

Field make_q2(int precision) { return make_field(1, {-2, 1}, precision); }

void FieldSpec::check_precision(int precision) const {
  if (precision < 0) fail(ErrorCode::PrecisionTooSmall, "negative precision");
  if (precision > precision_limit_)
    fail(ErrorCode::PrecisionExhausted,
         "precision " + std::to_string(precision) + " exceeds limit " + std::to_string(precision_limit_));
}

TruncElem FieldSpec::zero(int precision) const { return TruncElem(*this, precision, {}); }

TruncElem FieldSpec::one(int precision) const {
  TruncElem::Coeffs c{};
  c[0] = 1;
  return TruncElem(*this, precision, c);
}

TruncElem FieldSpec::from_int(std::int64_t value, int precision) const {
  TruncElem::Coeffs c{};
  c[0] = static_cast<std::uint64_t>(value);
  return TruncElem(*this, precision, c);
}

TruncElem FieldSpec::pi_power(int k, int precision) const {
  check_precision(precision);
  if (k < 0) fail(ErrorCode::InvalidArgument, "negative power of pi in the integral ring");
  if (k >= precision) return zero(precision);
  return pi_powers_[static_cast<std::size_t>(k)].reduce(precision);
}

TruncElem FieldSpec::from_digits(std::uint64_t bits, int low, int precision) const {
  TruncElem r = zero(precision);
  for (int t = 0; bits != 0; ++t, bits >>= 1)
    if ((bits & 1U) != 0) r += pi_power(low + t, precision);
  return r;
}

std::string FieldSpec::describe() const {
  std::ostringstream os;
  os << "e=" << e_ << " E=";
  bool first = true;
  for (int i = e_; i >= 0; --i) {
    const std::int64_t c = eisenstein_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const std::int64_t a = c < 0 ? -c : c;
    if (i == 0 || a != 1) os << a;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

Valuation TruncElem::valuation() const {
  const int e = field_->e();
  int best = -1;
  for (int i = 0; i < e; ++i) {
    const std::uint64_t a = c_[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    const int v = e * std::countr_zero(a) + i;
    if (best < 0 || v < best) best = v;
  }
  if (best < 0) return Valuation::lower_bound(precision_);
  return Valuation::exact(best);
}

bool TruncElem::val_at_least(int k) const {
  if (k <= 0) return true;
  const Valuation v = valuation();
  if (v.is_definite()) return v.value >= k;
  if (k <= precision_) return true;
  fail(ErrorCode::PrecisionTooSmall, "cannot decide val >= " + std::to_string(k) + " at precision " +
                                         std::to_string(precision_));
}

TruncElem TruncElem::reduce(int precision) const {
  if (precision > precision_)
    fail(ErrorCode::PrecisionExhausted,
         "cannot reduce precision " + std::to_string(precision_) + " to " + std::to_string(precision));
  return TruncElem(*field_, precision, c_);
}

TruncElem TruncElem::lift(int precision) const {
  if (precision < precision_) return reduce(precision);
  return TruncElem(*field_, precision, c_);
}

TruncElem TruncElem::mul_pi(int k) const {
  if (k < 0) fail(ErrorCode::InvalidArgument, "mul_pi with negative exponent");
  const int target = precision_ + k;
  field_->check_precision(target);
  return lift(target) * field_->pi_power(k, target);
}

TruncElem TruncElem::div_pi(int k) const {
  if (k < 0) fail(ErrorCode::InvalidArgument, "div_pi with negative exponent");
  if (k > precision_)
    fail(ErrorCode::PrecisionExhausted, "dividing by pi^" + std::to_string(k) + " at precision " +
                                            std::to_string(precision_));
  TruncElem x = *this;
  const int e = field_->e();
  for (int step = 0; step < k; ++step) {
    if ((x.c_[0] & 1U) != 0) fail(ErrorCode::NotAUnit, "element is not divisible by pi");
    const int n = x.precision_;
    Coeffs shifted{};
    for (int i = 1; i < e; ++i) shifted[static_cast<std::size_t>(i - 1)] = x.c_[static_cast<std::size_t>(i)];
    Coeffs half{};
    half[0] = x.c_[0] >> 1;
    TruncElem r = TruncElem(*field_, n, half) * field_->two_over_pi().reduce(n);
    if (e > 1) r += TruncElem(*field_, n, shifted);
    x = r.reduce(n - 1);
  }
  return x;
}

TruncElem TruncElem::inverse() const {
  if (!is_unit()) fail(ErrorCode::NotAUnit, "element " + to_string() + " has positive valuation");
  const TruncElem one = field_->one(precision_);
  const TruncElem two = field_->from_int(2, precision_);
  TruncElem x = one;
  for (int iter = 0; iter < 72; ++iter) {
    const TruncElem ax = *this * x;
    if (ax == one) return x;
    x = x * (two - ax);
  }
  fail(ErrorCode::Internal, "Newton iteration for the inverse did not converge");
}

std::uint64_t TruncElem::digit_bits() const {
  if (precision_ > 64) fail(ErrorCode::Overflow, "digit_bits needs precision <= 64");
  std::uint64_t bits = 0;
  const auto ds = digits();
  for (std::size_t t = 0; t < ds.size(); ++t)
    if (ds[t] != 0) bits |= std::uint64_t{1} << t;
  return bits;
}

std::vector<int> TruncElem::digits() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(precision_));
  TruncElem x = *this;
  while (x.precision_ > 0) {
    const int d = static_cast<int>(x.c_[0] & 1U);
    out.push_back(d);
    if (d != 0) x -= field_->one(x.precision_);
    x = x.div_pi(1);
  }
  return out;
}

std::string TruncElem::to_string() const {
  if (field_ == nullptr) return "<invalid>";
  std::ostringstream os;
  const int e = field_->e();
  if (e == 1) {
    os << c_[0] << " (mod 2^" << precision_ << ")";
    return os.str();
  }
  bool first = true;
  for (int i = 0; i < e; ++i) {
    const std::uint64_t a = c_[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    if (!first) os << " + ";
    os << a;
    if (i == 1) os << "*pi";
    if (i >= 2) os << "*pi^" << i;
    first = false;
  }
  if (first) os << "0";
  os << " (mod pi^" << precision_ << ")";
  return os.str();
}

}  // namespace twoadic
