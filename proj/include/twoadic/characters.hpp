#pragma once

// Additive characters of p^-K / p^c, the characters
//   psi_A(X) = chi(trace((X - 1) A))
// of G(n,m,l) / G(2n,m,l), and an independent enumeration of the character
// group of that quotient from its multiplication table.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twoadic/filtration.hpp"
#include "twoadic/mat2.hpp"
#include "twoadic/report.hpp"
#include "twoadic/snf.hpp"

namespace twoadic {

class AdditiveCharacter {
 public:
  /// chi on p^-depth / p^conductor: trivial on p^conductor and nontrivial on
  /// p^(conductor-1). `variant` selects one of several such characters.
  AdditiveCharacter(const FieldSpec& f, int depth, int conductor, int variant);

  const FieldSpec& field() const { return *field_; }
  int depth() const { return depth_; }
  int conductor() const { return conductor_; }
  int variant() const { return variant_; }
  /// Digits of the domain, depth + conductor.
  int width() const { return depth_ + conductor_; }
  const SmithForm& smith() const { return smith_; }

  /// chi(v * pi^-scale) for integral v; ShapeViolation outside p^-depth,
  /// PrecisionExhausted when v is too imprecise.
  DyadicRotation eval_scaled(const TruncElem& v, int scale) const;
  DyadicRotation eval(const FracElem& x) const { return eval_scaled(x.num(), x.shift()); }
  /// Same value computed through the pi-adic digits and the Smith
  /// coordinates; slow, kept as a cross-check.
  DyadicRotation eval_by_digits(const TruncElem& y) const;

  /// chi(pi^(conductor-1)) (nonzero) and chi(pi^conductor) (zero).
  DyadicRotation certificate_below() const;
  DyadicRotation certificate_at() const;

 private:
  DyadicRotation eval_domain(const TruncElem& y) const;

  const FieldSpec* field_;
  int depth_;
  int conductor_;
  int variant_;
  SmithForm smith_;
  std::vector<std::int64_t> weights_;         // chi = sum_t weights_[t] * coord_t / factor_t
  std::vector<DyadicRotation> digit_values_;  // chi(pi^(j - depth))
  std::vector<DyadicRotation> coeff_values_;  // chi(pi^(i - depth)) for i < e, used with canonical coefficients
};

AdditiveCharacter build_character(const FieldSpec& f, int depth, int conductor = 0, int variant = 0);

/// Dual parameter A = pi^-2n (pi^-e b1, pi^-l b3; pi^-m b2, -pi^-e b1),
/// stored as the integral matrix pi^(2n+e) A.
struct DualParam {
  int n = 1;
  int m = 0;
  int l = 0;
  QuotientCoords b;  // (b1, b2, b3) in (o/p^n)^3
  IntMat scaled;
  int scale = 0;

  FracMat matrix() const;
};

DualParam dual_param(const FieldSpec& f, int n, int m, int l, const QuotientCoords& b, int precision);
FracMat dual_param_matrix(const FieldSpec& f, int n, int m, int l, const QuotientCoords& b);

/// chi(trace((X - 1) pi^-scale T)).
DyadicRotation eval_psi_scaled(const AdditiveCharacter& chi, const IntMat& t, int scale, const IntMat& x);
DyadicRotation eval_psi(const AdditiveCharacter& chi, const DualParam& a, const IntMat& x);
/// General form for an explicit fractional A.
DyadicRotation eval_psi(const AdditiveCharacter& chi, const FracMat& a, const IntMat& x);

/// Character group of G(n,m,l)/G(2n,m,l) built from the multiplication table
/// of coset representatives, without reference to psi.
struct CharacterOracle {
  std::int64_t quotient_order = 0;
  bool closed = true;        // products of representatives stay in G(n,m,l)
  bool well_defined = true;  // coset of a product independent of representatives
  std::vector<std::int64_t> factors;
  std::vector<std::vector<DyadicRotation>> tables;  // value on each representative
  std::vector<std::string> notes;
};

CharacterOracle enumerate_characters_oracle(const FieldSpec& f, int n, int m, int l, int precision,
                                            std::int64_t cap = std::int64_t{1} << 16);

/// Left-coset index of x among the representatives modulo G(2n,m,l).
std::optional<std::size_t> coset_index(const std::vector<IntMat>& reps, const std::vector<IntMat>& rep_inverses,
                                       const SubgroupDesc& modulus, const IntMat& x);

struct DualityOptions {
  std::optional<int> precision;
  int variant = 0;
  int conductor = 0;
};

CheckReport verify_duality(const FieldSpec& f, int n, int m, int l, const SweepOptions& opts,
                           const DualityOptions& dopts = {});
CheckReport psi_product_check(const FieldSpec& f, int n, int m, int l, const SweepOptions& opts);
CheckReport equivariance_check(const FieldSpec& f, int n, int m, int l, const SweepOptions& opts);
/// Exhaustive additivity of chi on its domain plus the conductor certificate.
CheckReport character_check(const FieldSpec& f, int depth, int conductor, int variant);

}  // namespace twoadic
