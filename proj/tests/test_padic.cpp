#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "twoadic/frac_elem.hpp"
#include "twoadic/padic.hpp"
#include "twoadic/random.hpp"

using namespace twoadic;

namespace {

TruncElem from_poly(const FieldSpec& f, int N, const oracle::Poly& p) {
  TruncElem::Coeffs c{};
  for (int i = 0; i < f.e(); ++i) c[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)];
  return TruncElem(f, N, c);
}

bool matches(const oracle::Ring& r, int N, const TruncElem& t, const oracle::Poly& p) {
  oracle::Poly q{};
  for (int i = 0; i < r.e; ++i) q[static_cast<std::size_t>(i)] = t.coeff(i);
  return r.equal_mod(N, q, p);
}

oracle::Poly random_poly(const oracle::Ring& r, std::mt19937_64& rng) {
  oracle::Poly p{};
  for (int i = 0; i < r.e; ++i) p[static_cast<std::size_t>(i)] = rng() & r.mask();
  return p;
}

}  // namespace

TEST_CASE("field construction and u") {
  auto q2 = make_field(1, {-2, 1}, 6);
  CHECK(q2->e() == 1);
  CHECK(q2->u().reduce(6) == q2->one(6));

  auto r2 = make_field(2, {-2, 0, 1}, 8);
  CHECK(r2->u().reduce(8) == r2->one(8));
  // pi^2 = 2
  CHECK(r2->pi_power(2, 8) == r2->from_int(2, 8));

  auto r6 = make_field(2, {-6, 0, 1}, 8);
  CHECK(r6->u().reduce(4) == r6->from_int(3, 4));
  CHECK(r6->u_inverse().reduce(8) * r6->u().reduce(8) == r6->one(8));
}

TEST_CASE("non-Eisenstein polynomials are rejected") {
  CHECK_THROWS_AS(make_field(2, {-4, 0, 1}, 8), Error);  // c_0 not 2 * unit
  CHECK_THROWS_AS(make_field(2, {-2, 1, 1}, 8), Error);  // c_1 odd
  CHECK_THROWS_AS(make_field(2, {-2, 0, 3}, 8), Error);  // not monic
  CHECK_THROWS_AS(make_field(2, {-2, 1}, 8), Error);     // wrong length
  try {
    make_field(2, {-4, 0, 1}, 8);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotEisenstein);
  }
}

TEST_CASE("small arithmetic in Q2") {
  auto f = make_q2(16);
  CHECK(f->from_int(3, 3) + f->from_int(6, 3) == f->from_int(1, 3));
  CHECK(f->from_int(3, 3) * f->from_int(3, 3) == f->from_int(1, 3));
  CHECK(f->from_int(3, 3).inverse() == f->from_int(3, 3));
  CHECK(f->one(5).inverse() == f->one(5));
  CHECK(f->from_int(5, 4).inverse() == f->from_int(13, 4));
  CHECK(f->from_int(4, 6).valuation() == Valuation::exact(2));
  CHECK(f->zero(6).valuation() == Valuation::lower_bound(6));
  CHECK_THROWS_AS(f->from_int(2, 4).inverse(), Error);
}

TEST_CASE("small arithmetic with pi^2 = 2") {
  auto f = make_field(2, {-2, 0, 1}, 16);
  const TruncElem pi = f->pi_power(1, 4);
  const TruncElem two_pi = pi + pi;
  CHECK(two_pi == f->pi_power(3, 4));
  // a_1 is kept modulo 2^ceil(3/2) = 4
  CHECK(two_pi.coeff(1) == 2);
  CHECK((pi * pi) == f->from_int(2, 4));
  CHECK(f->from_int(2, 8).valuation() == Valuation::exact(2));
  CHECK(f->pi_power(3, 8).valuation() == Valuation::exact(3));
  const TruncElem a = f->from_int(7, 10) + f->pi_power(1, 10);
  CHECK(a * f->one(10) == a);
  CHECK(a + f->zero(10) == a);
}

TEST_CASE("arithmetic agrees with exact Z[x]/(E) arithmetic") {
  struct Case {
    int e;
    std::vector<std::int64_t> E;
  };
  const std::vector<Case> cases{{1, {-2, 1}}, {2, {-2, 0, 1}}, {2, {-6, 0, 1}}, {2, {2, 2, 1}},
                                {3, {-2, 0, 0, 1}}, {3, {6, 4, -2, 1}}};
  std::mt19937_64 rng(20240601);
  for (const auto& c : cases) {
    auto f = make_field(c.e, c.E, 40);
    oracle::Ring r{c.e, c.E, 60};
    for (int N : {1, 2, 5, 13, 40}) {
      for (int t = 0; t < 300; ++t) {
        const oracle::Poly p = random_poly(r, rng), q = random_poly(r, rng);
        const TruncElem a = from_poly(*f, N, p), b = from_poly(*f, N, q);
        CHECK(matches(r, N, a + b, r.add(p, q)));
        CHECK(matches(r, N, a - b, r.sub(p, q)));
        CHECK(matches(r, N, a * b, r.mul(p, q)));
        if (a.is_unit()) {
          const TruncElem ai = a.inverse();
          oracle::Poly z{};
          for (int i = 0; i < c.e; ++i) z[static_cast<std::size_t>(i)] = ai.coeff(i);
          CHECK(r.equal_mod(N, r.mul(p, z), r.make({1})));
        }
      }
    }
  }
}

TEST_CASE("pi-adic digits reconstruct the element") {
  auto f = make_field(3, {-2, 0, 0, 1}, 30);
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const TruncElem a = random_elem(*f, 30, rng);
    CHECK(f->from_digits(a.digit_bits(), 0, 30) == a);
    const auto v = a.valuation();
    if (v.is_definite()) {
      CHECK(a.val_at_least(v.value));
      CHECK_FALSE(a.val_at_least(v.value + 1));
    }
  }
}

TEST_CASE("reduce and lift") {
  auto f = make_field(2, {-2, 0, 1}, 20);
  const TruncElem a = f->from_int(1234567, 20) + f->pi_power(5, 20);
  CHECK(a.reduce(7).precision() == 7);
  CHECK(a.reduce(7).lift(20).reduce(7) == a.reduce(7));
  CHECK_THROWS_AS(a + a.reduce(7), Error);
}

TEST_CASE("fractional elements") {
  auto f = make_q2(12);
  const FracElem half(f->one(12), 1);
  CHECK(half.valuation() == Valuation::exact(-1));
  CHECK(half + half == FracElem(f->from_int(2, 12), 1));
  CHECK((half + half).is_integral());
  const FracElem quarter(f->one(12), 2);
  CHECK(quarter.valuation() == Valuation::exact(-2));
  const FracElem x = FracElem::integral(f->from_int(3, 12));
  CHECK((x * quarter).shift() == 2);
  CHECK((x * quarter).valuation() == Valuation::exact(-2));
  CHECK(((x * quarter) * FracElem::integral(f->from_int(4, 12))).num().reduce(8) == f->from_int(3, 8));
  CHECK_THROWS_AS(quarter.to_integral(3), Error);
}
