#pragma once

// Lattices of 2x2 matrices and the trace pairing between
//   primal  (p^n, p^(n+m); p^(n+l), p^n)
//   dual    (p^(-n-e), p^(-n-l); p^(-n-m), p^(-n-e))
// restricted to trace-zero matrices.

#include <string>

#include "twoadic/mat2.hpp"
#include "twoadic/report.hpp"

namespace twoadic {

enum class LatticeKind { Additive, Multiplicative, Dual };

struct LatticeShape {
  LatticeKind kind = LatticeKind::Additive;
  int n = 1;
  int m = 0;
  int l = 0;

  static LatticeShape additive(int n, int m, int l) { return {LatticeKind::Additive, n, m, l}; }
  static LatticeShape multiplicative(int n, int m, int l) { return {LatticeKind::Multiplicative, n, m, l}; }
  static LatticeShape dual(int n, int m, int l) { return {LatticeKind::Dual, n, m, l}; }

  /// m, l >= -1; multiplicative needs n >= 1.
  void validate() const;
  /// Valuation floors for (diagonal, upper right, lower left) in a field with
  /// ramification index e. For the multiplicative kind these apply to X - 1.
  void entry_bounds(int e, int& diag, int& upper, int& lower) const;
  std::string to_string() const;
};

/// PrecisionTooSmall when an entry is too imprecise to decide.
bool in_lattice(const FracMat& x, const LatticeShape& shape);
bool in_lattice(const IntMat& x, const LatticeShape& shape);

/// pi^n (a1, pi^m a2; pi^l a3, -a1), integral at `precision`.
IntMat primal_matrix(const FieldSpec& f, int n, int m, int l, const TruncElem& a1, const TruncElem& a2,
                     const TruncElem& a3, int precision);
/// pi^-n (pi^-e b1, pi^-l b3; pi^-m b2, -pi^-e b1).
FracMat dual_matrix(const FieldSpec& f, int n, int m, int l, const TruncElem& b1, const TruncElem& b2,
                    const TruncElem& b3);

/// u^-1 a1 b1 + a2 b2 + a3 b3.
TruncElem closed_form(const TruncElem& a1, const TruncElem& a2, const TruncElem& a3, const TruncElem& b1,
                      const TruncElem& b2, const TruncElem& b3);

/// trace(A B) for trace-zero B in the primal shape and A in the dual shape.
/// NotTraceZero / ShapeViolation on bad input; the result is integral and
/// known to the precision the inputs allow.
TruncElem trace_pair(const FracMat& b, const FracMat& a, int n, int m, int l);

/// Closed form against the matrix trace on random coordinate triples.
CheckReport closed_form_check(const FieldSpec& f, int n, int m, int l, const SweepOptions& opts);
/// Non-degeneracy in both argument orders over residues mod p^2, the
/// single-coordinate witnesses, the degenerate direction, and bilinearity.
CheckReport nondegeneracy_check(const FieldSpec& f, int n, int m, int l, const SweepOptions& opts);

}  // namespace twoadic
