#pragma once

// Congruence subgroups of K = SL2(o):
//   K_n       kernel of reduction mod p^n
//   B_n       preimage of the upper triangular matrices mod p^n
//   K_n^m     1 + (p^n, p^(n+m); p^(n+m), p^n), det 1
//   G(n,m,l)  1 + (p^n, p^(n+m); p^(n+l), p^n), det 1
// All of them are described by valuation bounds on the entries of X - 1
// (diagonal) and X (off-diagonal), which is what the enumerators work with.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "twoadic/mat2.hpp"
#include "twoadic/random.hpp"
#include "twoadic/report.hpp"

namespace twoadic {

/// diag: X_11 - 1, X_22 - 1 in p^diag (0 means unconstrained);
/// upper: X_12 in p^upper; lower: X_21 in p^lower.
struct Bounds {
  int diag = 0;
  int upper = 0;
  int lower = 0;
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

enum class SubgroupKind { K, Kn, Bn, Knm, G };

struct SubgroupDesc {
  SubgroupKind kind = SubgroupKind::K;
  int n = 0;
  int m = 0;
  int l = 0;

  static SubgroupDesc full() { return {SubgroupKind::K, 0, 0, 0}; }
  static SubgroupDesc kernel(int n) { return {SubgroupKind::Kn, n, 0, 0}; }
  static SubgroupDesc borel(int n) { return {SubgroupKind::Bn, n, 0, 0}; }
  static SubgroupDesc knm(int n, int m) { return {SubgroupKind::Knm, n, m, m}; }
  static SubgroupDesc general(int n, int m, int l) { return {SubgroupKind::G, n, m, l}; }

  /// Throws InvalidArgument on parameters outside the family's range.
  void validate() const;
  Bounds bounds() const;
  /// Smallest N with K_N contained in the group.
  int depth() const;
  std::string to_string() const;
};

bool in_bounds(const IntMat& x, const Bounds& b);
/// Defining congruences plus det(X) = 1 at the matrix precision.
bool membership(const IntMat& x, const SubgroupDesc& s);

/// Calls fn(X) for one representative X (at precision N) of every coset of
/// K_N in the group cut out by `b`; these are exactly the det-1 matrices over
/// o/p^N obeying the bounds. Throws Overflow when more than `cap` would be produced.
void for_each_element(const FieldSpec& f, const Bounds& b, int precision, const std::function<void(const IntMat&)>& fn,
                      std::int64_t cap = std::int64_t{1} << 26);
std::int64_t count_elements(const FieldSpec& f, const Bounds& b, int precision,
                            std::int64_t cap = std::int64_t{1} << 26);
std::vector<IntMat> enumerate_elements(const FieldSpec& f, const SubgroupDesc& s, int precision,
                                       std::int64_t cap = std::int64_t{1} << 24);

/// Random element of the bounds group mod K_N.
IntMat random_element(const FieldSpec& f, const Bounds& b, int precision, Rng& rng);

/// Coordinates (c1, c2, c3) in (o/p^n)^3 of the additive quotient
///   1 + pi^n (c1, pi^m c2; pi^l c3, c4),  c4 = -c1 mod p^n.
struct QuotientCoords {
  int n = 1;
  int m = 0;
  int l = 0;
  TruncElem c1, c2, c3;

  QuotientCoords operator+(const QuotientCoords& o) const;
  QuotientCoords operator-() const;
  bool is_zero() const { return c1.is_zero() && c2.is_zero() && c3.is_zero(); }
  friend bool operator==(const QuotientCoords& a, const QuotientCoords& b) {
    return a.n == b.n && a.m == b.m && a.l == b.l && a.c1 == b.c1 && a.c2 == b.c2 && a.c3 == b.c3;
  }
  /// Packed pi-adic digits, 3n bits.
  std::uint64_t key() const;
  std::string to_string() const;
};

/// All coordinate triples, ordered by key.
std::vector<QuotientCoords> all_quotient_coords(const FieldSpec& f, int n, int m, int l);
QuotientCoords quotient_coords_from_key(const FieldSpec& f, int n, int m, int l, std::uint64_t key);

/// X -> X - 1 reduced into the quotient; ShapeViolation unless X in G(n,m,l).
QuotientCoords theta(const IntMat& x, int n, int m, int l);
/// Det-1 lift with the given coordinates; d = (1 + bc) / a.
IntMat theta_inverse(const FieldSpec& f, const QuotientCoords& v, int precision);

/// Coset representatives of `subgroup` modulo `modulus`.
struct CosetSystem {
  SubgroupDesc subgroup;
  SubgroupDesc modulus;
  int precision = 1;
  std::vector<IntMat> representatives;
  bool theta_keyed = false;
  std::unordered_map<std::uint64_t, std::size_t> by_key;

  std::size_t index() const { return representatives.size(); }
  /// Index of the representative r with r^-1 X in the modulus group.
  std::optional<std::size_t> locate(const IntMat& x) const;
};

/// Generic enumeration: elements of S mod K_N grouped by T-coset.
/// NotASubgroup if T is not contained in S; Overflow beyond opts.cap.
CosetSystem enumerate_cosets(const FieldSpec& f, const SubgroupDesc& s, const SubgroupDesc& t,
                             const SweepOptions& opts = {});
/// G(n,m,l) / G(2n,m,l) with representatives theta_inverse(coords).
CosetSystem theta_cosets(const FieldSpec& f, int n, int m, int l, int precision);

/// Default working precision 2n + e + max(m, l, e, 0) + 1.
int minimum_precision(int e, int n, int m, int l);

CheckReport normality_check(const FieldSpec& f, int n, int m, const SweepOptions& opts);
CheckReport conjugate_intersection_check(const FieldSpec& f, int n, int m, const SweepOptions& opts);
CheckReport theta_check(const FieldSpec& f, int n, int m, int l, const SweepOptions& opts,
                        std::optional<int> precision = std::nullopt);
/// Closure of the group under products and inverses mod K_N.
CheckReport closure_check(const FieldSpec& f, const SubgroupDesc& s, int precision, const SweepOptions& opts);

}  // namespace twoadic
