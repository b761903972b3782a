#include "twoadic/mat2.hpp"

#include <algorithm>

namespace twoadic {

IntMat identity(const FieldSpec& f, int precision) {
  return {f.one(precision), f.zero(precision), f.zero(precision), f.one(precision)};
}

IntMat int_mat(const FieldSpec& f, int precision, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return {f.from_int(a, precision), f.from_int(b, precision), f.from_int(c, precision), f.from_int(d, precision)};
}

IntMat reduce(const IntMat& x, int precision) {
  return {x.a.reduce(precision), x.b.reduce(precision), x.c.reduce(precision), x.d.reduce(precision)};
}

FracMat to_frac(const IntMat& x) {
  return {FracElem::integral(x.a), FracElem::integral(x.b), FracElem::integral(x.c), FracElem::integral(x.d)};
}

IntMat to_integral(const FracMat& x, int precision) {
  return {x.a.to_integral(precision), x.b.to_integral(precision), x.c.to_integral(precision),
          x.d.to_integral(precision)};
}

int precision_of(const IntMat& x) {
  return std::min({x.a.precision(), x.b.precision(), x.c.precision(), x.d.precision()});
}

IntMat mat_inv(const IntMat& x) {
  const TruncElem d = x.det();
  if (!d.is_unit()) fail(ErrorCode::NotInvertible, "determinant " + d.to_string() + " is not a unit");
  return x.adjugate().scaled(d.inverse());
}

FracMat mat_inv(const FracMat& x) {
  const FracElem d = x.det();
  const Valuation v = d.valuation();
  if (!v.is_definite() || v.value != 0)
    fail(ErrorCode::NotInvertible, "determinant " + d.to_string() + " is not a unit");
  const TruncElem dn = d.to_integral(d.abs_precision());
  return x.adjugate().scaled(FracElem::integral(dn.inverse()));
}

IntMat conjugate(const IntMat& x, const IntMat& g) { return mat_inv(g) * x * g; }

FracMat conjugate(const FracMat& x, const FracMat& g) { return mat_inv(g) * x * g; }

std::string to_string(const IntMat& x) {
  return "(" + x.a.to_string() + ", " + x.b.to_string() + "; " + x.c.to_string() + ", " + x.d.to_string() + ")";
}

std::string to_string(const FracMat& x) {
  return "(" + x.a.to_string() + ", " + x.b.to_string() + "; " + x.c.to_string() + ", " + x.d.to_string() + ")";
}

}  // namespace twoadic
