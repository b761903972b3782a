#pragma once

// Test-side reference implementations. None of this code calls into the
// library's arithmetic: elements of o = Z2[x]/(E) are plain coefficient
// vectors reduced modulo a large power of 2, and Q2 matrices are plain
// integers modulo 2^N.

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Poly = std::array<std::uint64_t, 6>;

/// Z[x]/(E) with coefficients kept modulo 2^bits (bits <= 62). Since
/// 2 o = p^e, agreement modulo 2^ceil((N-i)/e) in coefficient i is exactly
/// agreement modulo p^N.
struct Ring {
  int e = 1;
  std::vector<std::int64_t> E;  // c_0..c_e, c_e = 1
  int bits = 60;

  std::uint64_t mask() const { return (std::uint64_t{1} << bits) - 1; }

  Poly make(std::initializer_list<std::int64_t> cs) const {
    Poly p{};
    int i = 0;
    for (auto c : cs) p[static_cast<std::size_t>(i++)] = static_cast<std::uint64_t>(c) & mask();
    return p;
  }
  Poly add(const Poly& a, const Poly& b) const {
    Poly r{};
    for (int i = 0; i < e; ++i) r[i] = (a[i] + b[i]) & mask();
    return r;
  }
  Poly sub(const Poly& a, const Poly& b) const {
    Poly r{};
    for (int i = 0; i < e; ++i) r[i] = (a[i] - b[i]) & mask();
    return r;
  }
  Poly mul(const Poly& a, const Poly& b) const {
    std::vector<std::uint64_t> prod(2 * static_cast<std::size_t>(e), 0);
    for (int i = 0; i < e; ++i)
      for (int j = 0; j < e; ++j) prod[i + j] += a[i] * b[j];
    // x^k = x^(k-e) * x^e and x^e = -(c_0 + ... + c_(e-1) x^(e-1)).
    for (int k = 2 * e - 1; k >= e; --k) {
      const std::uint64_t top = prod[k];
      prod[k] = 0;
      for (int j = 0; j < e; ++j) prod[k - e + j] -= top * static_cast<std::uint64_t>(E[j]);
    }
    Poly r{};
    for (int i = 0; i < e; ++i) r[i] = prod[i] & mask();
    return r;
  }
  /// Modulus of coefficient i in o/p^N.
  std::uint64_t coeff_mod_mask(int N, int i) const {
    const int k = N - i <= 0 ? 0 : (N - i + e - 1) / e;
    return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  }
  bool equal_mod(int N, const Poly& a, const Poly& b) const {
    for (int i = 0; i < e; ++i)
      if (((a[i] ^ b[i]) & coeff_mod_mask(N, i)) != 0) return false;
    return true;
  }
  Poly reduce(int N, const Poly& a) const {
    Poly r{};
    for (int i = 0; i < e; ++i) r[i] = a[i] & coeff_mod_mask(N, i);
    return r;
  }
  /// Every element of o/p^N in canonical form.
  std::vector<Poly> elements(int N) const {
    std::vector<Poly> out{Poly{}};
    for (int i = 0; i < e; ++i) {
      const std::uint64_t range = coeff_mod_mask(N, i) + 1;
      std::vector<Poly> next;
      for (const auto& p : out)
        for (std::uint64_t v = 0; v < range; ++v) {
          Poly q = p;
          q[i] = v;
          next.push_back(q);
        }
      out.swap(next);
    }
    return out;
  }
  bool is_unit(const Poly& a) const { return (a[0] & 1U) != 0; }
};

/// Number of (a,b,c,d) over o/p^N with ad - bc = 1, by brute force.
inline std::int64_t count_sl2(const Ring& r, int N) {
  const auto els = r.elements(N);
  const Poly one = r.make({1});
  std::int64_t count = 0;
  for (const auto& a : els)
    for (const auto& b : els)
      for (const auto& c : els)
        for (const auto& d : els)
          if (r.equal_mod(N, r.sub(r.mul(a, d), r.mul(b, c)), one)) ++count;
  return count;
}

// ---- Q2 only: integer matrices modulo 2^N ----------------------------------

struct IMat {
  std::int64_t a, b, c, d;
};

inline std::int64_t mod(std::int64_t x, std::int64_t M) {
  x %= M;
  return x < 0 ? x + M : x;
}

inline IMat mul(const IMat& x, const IMat& y, std::int64_t M) {
  return {mod(x.a * y.a + x.b * y.c, M), mod(x.a * y.b + x.b * y.d, M), mod(x.c * y.a + x.d * y.c, M),
          mod(x.c * y.b + x.d * y.d, M)};
}

/// Inverse of a det-1 matrix.
inline IMat inv(const IMat& x, std::int64_t M) { return {x.d, mod(-x.b, M), mod(-x.c, M), x.a}; }

inline int val2(std::int64_t x, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while ((x & 1) == 0 && v < cap) {
    x >>= 1;
    ++v;
  }
  return v;
}

/// SL2(Z/2^N), brute force.
inline std::vector<IMat> sl2_mod(int N) {
  const std::int64_t M = std::int64_t{1} << N;
  std::vector<IMat> out;
  for (std::int64_t a = 0; a < M; ++a)
    for (std::int64_t b = 0; b < M; ++b)
      for (std::int64_t c = 0; c < M; ++c)
        for (std::int64_t d = 0; d < M; ++d)
          if (mod(a * d - b * c, M) == 1) out.push_back({a, b, c, d});
  return out;
}

/// 1 + (2^n, 2^(n+m); 2^(n+l), 2^n) at precision N (valuations capped at N).
inline bool in_g(const IMat& x, int n, int m, int l, int N) {
  const std::int64_t M = std::int64_t{1} << N;
  return val2(mod(x.a - 1, M), N) >= std::min(n, N) && val2(mod(x.d - 1, M), N) >= std::min(n, N) &&
         val2(x.b, N) >= std::min(n + m, N) && val2(x.c, N) >= std::min(n + l, N);
}

/// Points of P^1(Z/2^n) as classes of primitive pairs under unit scaling.
inline std::size_t projective_line_size(int n) {
  const std::int64_t M = std::int64_t{1} << n;
  std::set<std::pair<std::int64_t, std::int64_t>> classes;
  for (std::int64_t x = 0; x < M; ++x)
    for (std::int64_t y = 0; y < M; ++y) {
      if ((x & 1) == 0 && (y & 1) == 0) continue;
      std::pair<std::int64_t, std::int64_t> best{M, M};
      for (std::int64_t u = 1; u < M; u += 2) best = std::min(best, {mod(u * x, M), mod(u * y, M)});
      classes.insert(best);
    }
  return classes.size();
}

/// Homomorphisms from a finite group (multiplication table, identity 0) to
/// Q/Z, counted by trying every assignment on a generating set.
inline std::int64_t count_homs_to_QZ(const std::vector<std::vector<int>>& table) {
  const int k = static_cast<int>(table.size());
  // Exponent of the group, a power of 2 here.
  int exponent = 1;
  for (int g = 0; g < k; ++g) {
    int o = 1, x = g;
    while (x != 0) {
      x = table[x][g];
      ++o;
    }
    exponent = std::max(exponent, o);
  }
  std::vector<int> gens;
  std::vector<char> span(k, 0);
  span[0] = 1;
  auto close = [&] {
    bool grew = true;
    while (grew) {
      grew = false;
      for (int x = 0; x < k; ++x)
        if (span[x])
          for (int g : gens)
            if (!span[table[x][g]]) span[table[x][g]] = grew = true;
    }
  };
  for (int g = 0; g < k; ++g)
    if (!span[g]) {
      gens.push_back(g);
      close();
    }
  std::int64_t homs = 0;
  std::vector<int> assign(gens.size(), 0);
  for (;;) {
    std::vector<int> val(k, -1);
    val[0] = 0;
    std::vector<int> queue{0};
    bool ok = true;
    for (std::size_t qi = 0; qi < queue.size() && ok; ++qi) {
      const int x = queue[qi];
      for (std::size_t t = 0; t < gens.size() && ok; ++t) {
        const int y = table[x][gens[t]];
        const int v = (val[x] + assign[t]) % exponent;
        if (val[y] < 0) {
          val[y] = v;
          queue.push_back(y);
        } else if (val[y] != v) {
          ok = false;
        }
      }
    }
    if (ok) ++homs;
    std::size_t t = 0;
    while (t < assign.size() && ++assign[t] == exponent) assign[t++] = 0;
    if (t == assign.size()) break;
  }
  return homs;
}

/// G(n,m,l)/G(2n,m,l) over Q2 as a multiplication table, from integer
/// matrices modulo 2^N. Returns an empty table if the subset is not closed.
inline std::vector<std::vector<int>> quotient_table_q2(int n, int m, int l, int N) {
  const std::int64_t M = std::int64_t{1} << N;
  std::vector<IMat> els;
  for (const auto& x : sl2_mod(N))
    if (in_g(x, n, m, l, N)) els.push_back(x);
  // Coset labels: X ~ Y iff X^-1 Y in G(2n,m,l).
  std::vector<int> label(els.size(), -1);
  std::vector<IMat> reps;
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (label[i] >= 0) continue;
    const int id = static_cast<int>(reps.size());
    reps.push_back(els[i]);
    const IMat xi = inv(els[i], M);
    for (std::size_t j = i; j < els.size(); ++j)
      if (label[j] < 0 && in_g(mul(xi, els[j], M), 2 * n, m, l, N)) label[j] = id;
  }
  auto find = [&](const IMat& x) -> int {
    for (std::size_t j = 0; j < els.size(); ++j)
      if (els[j].a == x.a && els[j].b == x.b && els[j].c == x.c && els[j].d == x.d) return label[j];
    return -1;
  };
  // Identity first.
  const int id_label = find({1, 0, 0, 1});
  std::vector<int> order(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) order[i] = static_cast<int>(i);
  std::swap(order[0], order[static_cast<std::size_t>(id_label)]);
  std::vector<int> pos(reps.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  std::vector<std::vector<int>> table(reps.size(), std::vector<int>(reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) {
      const int lab = find(mul(reps[static_cast<std::size_t>(order[i])], reps[static_cast<std::size_t>(order[j])], M));
      if (lab < 0) return {};
      table[i][j] = pos[static_cast<std::size_t>(lab)];
    }
  return table;
}

}  // namespace oracle
