#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twoadic/mat2.hpp"
#include "twoadic/report.hpp"

namespace twoadic {

/// Homothety class [x:y]_n in P^1(o/p^n). Canonical forms are [1:y] with
/// y in o/p^n, or [x:1] with x in p/p^n. Level 0 is a single point.
struct ProjPoint {
  int level = 0;
  TruncElem x;
  TruncElem y;

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    return a.level == b.level && a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
  std::string to_string() const;
};

/// Throws NotPrimitive when neither coordinate is a unit.
ProjPoint canonicalize_point(const TruncElem& x, const TruncElem& y, int level);
ProjPoint canonicalize_point(const FieldSpec& f, std::int64_t x, std::int64_t y, int level);

/// (a b; c d)[x:y] = [ax+by : cx+dy]. g must be in K (unit determinant).
ProjPoint act(const IntMat& g, const ProjPoint& p);

/// All points of P^1(o/p^n): [1:y] first (y by pi-adic digits), then [x:1].
std::vector<ProjPoint> projective_line(const FieldSpec& f, int level);

/// 2^n + 2^(n-1) for n >= 1, and 1 at level 0.
std::int64_t expected_point_count(int level);

/// act(g,[1:0]_n) = [1:0]_n  <=>  g in B_n, for every g in K mod K_n.
CheckReport verify_stabilizer(const FieldSpec& f, int n);

/// Every element of K_n^m mod K_(n+m+e) fixes P^1(o/p^(n+m)) pointwise and
/// acts on each [x:1] like its diagonal part diag(a, a^-1).
CheckReport trivial_action_check(const FieldSpec& f, int n, int m);

/// Point count, transitivity of K on level n, and the action axioms
/// (exhaustive on small levels, sampled otherwise).
CheckReport action_check(const FieldSpec& f, int n, const SweepOptions& opts);

}  // namespace twoadic
