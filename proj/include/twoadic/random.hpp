#pragma once

#include <cstdint>
#include <random>

#include "twoadic/padic.hpp"

namespace twoadic {

using Rng = std::mt19937_64;

/// Uniform element of o/p^N (each canonical coefficient drawn from its full range).
inline TruncElem random_elem(const FieldSpec& f, int precision, Rng& rng) {
  TruncElem::Coeffs c{};
  for (int i = 0; i < f.e(); ++i) c[static_cast<std::size_t>(i)] = rng();
  return TruncElem(f, precision, c);
}

inline TruncElem random_unit(const FieldSpec& f, int precision, Rng& rng) {
  TruncElem x = random_elem(f, precision, rng);
  if (!x.is_unit()) x += f.one(precision);
  return x;
}

/// Uniform element of p^k/p^N.
inline TruncElem random_in_ideal(const FieldSpec& f, int k, int precision, Rng& rng) {
  if (k >= precision) return f.zero(precision);
  if (k <= 0) return random_elem(f, precision, rng);
  return random_elem(f, precision - k, rng).lift(precision) * f.pi_power(k, precision);
}

/// Uniform integer in [0, bound).
inline std::uint64_t random_below(Rng& rng, std::uint64_t bound) { return bound == 0 ? 0 : rng() % bound; }

}  // namespace twoadic
