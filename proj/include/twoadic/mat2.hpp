#pragma once

#include <cstdint>
#include <string>

#include "twoadic/frac_elem.hpp"
#include "twoadic/padic.hpp"

namespace twoadic {

/// 2x2 matrix (a b; c d).
template <class T>
struct Mat2 {
  T a, b, c, d;

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }

  T trace() const { return a + d; }
  T det() const { return a * d - b * c; }
  Mat2 adjugate() const { return {d, -b, -c, a}; }
  Mat2 scaled(const T& s) const { return {s * a, s * b, s * c, s * d}; }
};

using IntMat = Mat2<TruncElem>;
using FracMat = Mat2<FracElem>;

IntMat identity(const FieldSpec& f, int precision);
IntMat int_mat(const FieldSpec& f, int precision, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
IntMat reduce(const IntMat& x, int precision);
FracMat to_frac(const IntMat& x);
/// Entries of x as integral elements at `precision`; ShapeViolation if any
/// entry is fractional.
IntMat to_integral(const FracMat& x, int precision);
int precision_of(const IntMat& x);

template <class T>
T det(const Mat2<T>& x) { return x.det(); }
template <class T>
T trace(const Mat2<T>& x) { return x.trace(); }
template <class T>
Mat2<T> mat_mul(const Mat2<T>& x, const Mat2<T>& y) { return x * y; }

/// Inverse of a matrix with unit determinant (NotInvertible otherwise).
IntMat mat_inv(const IntMat& x);
FracMat mat_inv(const FracMat& x);

/// X^g = g^-1 X g.
IntMat conjugate(const IntMat& x, const IntMat& g);
FracMat conjugate(const FracMat& x, const FracMat& g);

std::string to_string(const IntMat& x);
std::string to_string(const FracMat& x);

}  // namespace twoadic
