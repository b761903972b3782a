#include "twoadic/snf.hpp"

#include <bit>
#include <cstdlib>
#include <utility>

#include "twoadic/error.hpp"

namespace twoadic {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::Overflow, "integer overflow in Smith normal form");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorCode::Overflow, "integer overflow in Smith normal form");
  return r;
}

// Floor division keeps remainders non-negative.
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

DyadicRotation DyadicRotation::make(std::int64_t num, int k) {
  if (k < 0 || k > 62) fail(ErrorCode::InvalidArgument, "dyadic exponent out of range");
  DyadicRotation r;
  std::uint64_t v = static_cast<std::uint64_t>(num) & ((std::uint64_t{1} << k) - 1);
  if (v == 0) return r;
  const int tz = std::countr_zero(v);
  r.num_ = v >> tz;
  r.k_ = k - tz;
  return r;
}

std::string DyadicRotation::to_string() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/" + std::to_string(std::uint64_t{1} << k_);
}

DyadicRotation operator+(const DyadicRotation& a, const DyadicRotation& b) {
  const int k = a.k_ > b.k_ ? a.k_ : b.k_;
  const std::uint64_t s = (a.num_ << (k - a.k_)) + (b.num_ << (k - b.k_));
  return DyadicRotation::make(static_cast<std::int64_t>(s), k);
}

DyadicRotation DyadicRotation::operator-() const {
  return make(-static_cast<std::int64_t>(num_), k_);
}

DyadicRotation DyadicRotation::times(std::uint64_t k) const {
  return make(static_cast<std::int64_t>(num_ * k), k_);
}

bool SmithForm::finite() const {
  for (auto d : factors)
    if (d == 0) return false;
  return true;
}

std::int64_t SmithForm::order() const {
  if (!finite()) fail(ErrorCode::InvalidArgument, "presented group is infinite");
  std::int64_t o = 1;
  for (auto d : factors) {
    o = checked_mul(o, d);
    if (o > (std::int64_t{1} << 62)) fail(ErrorCode::Overflow, "group order too large");
  }
  return o;
}

std::vector<std::int64_t> SmithForm::coordinates(const std::vector<std::int64_t>& x) const {
  const std::size_t g = factors.size();
  std::vector<std::int64_t> out(g, 0);
  for (std::size_t t = 0; t < g; ++t) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < g; ++j)
      if (x[j] != 0) s += checked_mul(x[j], V[j][t]);
    const std::int64_t d = factors[t];
    if (d != 0) {
      s %= d;
      if (s < 0) s += d;
    }
    out[t] = s;
  }
  return out;
}

SmithForm smith_normal_form(const GroupPresentation& p) {
  const std::size_t cols = static_cast<std::size_t>(p.generators);
  auto R = p.relations;
  for (const auto& row : R)
    if (row.size() != cols) fail(ErrorCode::InvalidArgument, "relation length does not match generator count");
  const std::size_t rows = R.size();

  SmithForm sf;
  sf.V.assign(cols, std::vector<std::int64_t>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) sf.V[i][i] = 1;
  sf.factors.assign(cols, 0);

  auto col_op = [&](std::size_t dst, std::size_t src, std::int64_t q) {  // col dst -= q * col src
    if (q == 0) return;
    for (std::size_t i = 0; i < rows; ++i)
      if (R[i][src] != 0) R[i][dst] = checked_sub(R[i][dst], checked_mul(q, R[i][src]));
    for (std::size_t i = 0; i < cols; ++i)
      if (sf.V[i][src] != 0) sf.V[i][dst] = checked_sub(sf.V[i][dst], checked_mul(q, sf.V[i][src]));
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : R) std::swap(row[a], row[b]);
    for (auto& row : sf.V) std::swap(row[a], row[b]);
  };

  for (std::size_t t = 0; t < cols && t < rows; ++t) {
    bool empty = false;
    for (;;) {
      // Smallest nonzero entry of the remaining block becomes the pivot.
      std::size_t pi = rows, pj = cols;
      std::int64_t best = 0;
      for (std::size_t i = t; i < rows && best != 1; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          const std::int64_t v = R[i][j];
          if (v != 0 && (best == 0 || std::llabs(v) < best)) {
            best = std::llabs(v);
            pi = i;
            pj = j;
            if (best == 1) break;
          }
        }
      if (best == 0) {
        empty = true;
        break;
      }
      std::swap(R[t], R[pi]);
      col_swap(t, pj);
      if (R[t][t] < 0)
        for (auto& v : R[t]) v = -v;

      bool clean = true;
      const std::int64_t piv = R[t][t];
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (R[i][t] == 0) continue;
        const std::int64_t q = floor_div(R[i][t], piv);
        for (std::size_t j = t; j < cols; ++j)
          if (R[t][j] != 0) R[i][j] = checked_sub(R[i][j], checked_mul(q, R[t][j]));
        if (R[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (R[t][j] == 0) continue;
        col_op(j, t, floor_div(R[t][j], piv));
        if (R[t][j] != 0) clean = false;
      }
      if (clean) break;
    }
    if (empty) break;
    sf.factors[t] = R[t][t];
  }
  return sf;
}

}  // namespace twoadic
