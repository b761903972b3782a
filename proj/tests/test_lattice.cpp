#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "twoadic/filtration.hpp"
#include "twoadic/lattice.hpp"
#include "twoadic/mat2.hpp"

using namespace twoadic;

namespace {

FracElem frac(const FieldSpec& f, std::int64_t v, int shift, int N) { return FracElem(f.from_int(v, N), shift); }

TruncElem poly_elem(const FieldSpec& f, int N, const oracle::Poly& p) {
  TruncElem::Coeffs c{};
  for (int i = 0; i < f.e(); ++i) c[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)];
  return TruncElem(f, N, c);
}

}  // namespace

TEST_CASE("determinant, product, inverse, conjugation") {
  auto f = make_q2(8);
  const IntMat I = identity(*f, 3);
  const IntMat w = int_mat(*f, 3, 0, 1, -1, 0);
  CHECK(I.det() == f->one(3));
  CHECK(w.det() == f->one(3));
  CHECK(w * w == -I);
  CHECK(int_mat(*f, 3, 1, 2, 0, 1) * int_mat(*f, 3, 1, 0, 2, 1) == int_mat(*f, 3, 5, 2, 2, 1));
  CHECK(mat_inv(I) == I);
  CHECK(mat_inv(w) == int_mat(*f, 3, 0, -1, 1, 0));
  CHECK(mat_inv(int_mat(*f, 3, 1, 2, 0, 1)) == int_mat(*f, 3, 1, -2, 0, 1));
  CHECK_THROWS_AS(mat_inv(int_mat(*f, 3, 2, 0, 0, 1)), Error);

  auto r = make_field(2, {-2, 0, 1}, 10);
  const TruncElem a = r->one(10) + r->pi_power(1, 10);
  const IntMat da{a, r->zero(10), r->zero(10), a.inverse()};
  CHECK(da.det() == r->one(10));
  const IntMat wr = int_mat(*r, 10, 0, 1, -1, 0);
  CHECK(conjugate(da, wr) == IntMat{a.inverse(), r->zero(10), r->zero(10), a});
  CHECK(conjugate(da, identity(*r, 10)) == da);
}

TEST_CASE("lattice membership of K_1^1 examples over Q2") {
  auto f = make_q2(8);
  // (1,2;2,d) with d = 5 makes det 1 mod 16; the off-diagonal 2 has valuation 1 < 2.
  const IntMat x = int_mat(*f, 4, 1, 2, 2, 5);
  REQUIRE(x.det() == f->one(4));
  CHECK_FALSE(in_lattice(x, LatticeShape::multiplicative(1, 1, 1)));
  CHECK_FALSE(membership(x, SubgroupDesc::knm(1, 1)));
  // I + (2,4;4,10): 3 * 11 - 16 = 17 = 1 mod 16.
  const IntMat y = int_mat(*f, 4, 3, 4, 4, 11);
  REQUIRE(y.det() == f->one(4));
  CHECK(in_lattice(y, LatticeShape::multiplicative(1, 1, 1)));
  CHECK(membership(y, SubgroupDesc::knm(1, 1)));
  for (int n = 1; n <= 3; ++n)
    for (int m = 0; m <= 2; ++m) CHECK(in_lattice(identity(*f, 8), LatticeShape::multiplicative(n, m, m)));
}

TEST_CASE("trace pairing on single coordinates over Q2") {
  auto f = make_q2(10);
  const int N = 8;
  const FracElem z = frac(*f, 0, 0, N);
  // a1 = 1, b1 = 1
  const FracMat b1 = to_frac(int_mat(*f, N, 2, 0, 0, -2));
  const FracMat a1{frac(*f, 1, 2, N), z, z, frac(*f, -1, 2, N)};
  CHECK(trace_pair(b1, a1, 1, 0, 0).reduce(4) == f->one(4));
  // a2 = 1, b2 = 1
  const FracMat b2 = to_frac(int_mat(*f, N, 0, 2, 0, 0));
  const FracMat a2{z, z, frac(*f, 1, 1, N), z};
  CHECK(trace_pair(b2, a2, 1, 0, 0).reduce(4) == f->one(4));
  // B = 0
  CHECK(trace_pair(to_frac(int_mat(*f, N, 0, 0, 0, 0)), a1, 1, 0, 0).is_zero());
}

TEST_CASE("trace pairing errors") {
  auto f = make_q2(10);
  const int N = 8;
  const FracElem z = frac(*f, 0, 0, N);
  const FracMat a{frac(*f, 1, 2, N), z, z, frac(*f, -1, 2, N)};
  try {
    trace_pair(to_frac(int_mat(*f, N, 2, 0, 0, 2)), a, 1, 0, 0);
    FAIL("expected NotTraceZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotTraceZero);
  }
  try {
    trace_pair(to_frac(int_mat(*f, N, 1, 0, 0, -1)), a, 1, 0, 0);
    FAIL("expected ShapeViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeViolation);
  }
  const FracMat too_deep{frac(*f, 1, 3, N), z, z, frac(*f, -1, 3, N)};
  CHECK_THROWS_AS(trace_pair(to_frac(int_mat(*f, N, 2, 0, 0, -2)), too_deep, 1, 0, 0), Error);
}

TEST_CASE("trace pairing matches a1 b1 + a2 b2 + a3 b3 computed independently (u = 1)") {
  std::mt19937_64 rng(99);
  SUBCASE("Q2 with plain integers") {
    auto f = make_q2(40);
    for (auto [n, m, l] : {std::tuple{1, 0, 0}, std::tuple{1, 1, 0}, std::tuple{2, 1, -1}, std::tuple{2, -1, 1}}) {
      const int P = minimum_precision(1, n, m, l);
      for (int t = 0; t < 300; ++t) {
        std::int64_t v[6];
        for (auto& x : v) x = static_cast<std::int64_t>(rng() % 1024);
        const TruncElem pr = trace_pair(
            to_frac(primal_matrix(*f, n, m, l, f->from_int(v[0], P), f->from_int(v[1], P), f->from_int(v[2], P), P)),
            dual_matrix(*f, n, m, l, f->from_int(v[3], P), f->from_int(v[4], P), f->from_int(v[5], P)), n, m, l);
        const std::int64_t expect = v[0] * v[3] + v[1] * v[4] + v[2] * v[5];
        CHECK(pr == f->from_int(expect, pr.precision()));
      }
    }
  }
  SUBCASE("pi^2 = 2 with exact polynomial arithmetic") {
    auto f = make_field(2, {-2, 0, 1}, 40);
    oracle::Ring ring{2, {-2, 0, 1}, 60};
    for (auto [n, m, l] : {std::tuple{1, 1, 0}, std::tuple{1, 2, 2}, std::tuple{2, 0, 1}}) {
      const int P = minimum_precision(2, n, m, l);
      for (int t = 0; t < 300; ++t) {
        oracle::Poly v[6];
        for (auto& x : v) x = ring.make({static_cast<std::int64_t>(rng() % 64), static_cast<std::int64_t>(rng() % 64)});
        const TruncElem pr = trace_pair(
            to_frac(primal_matrix(*f, n, m, l, poly_elem(*f, P, v[0]), poly_elem(*f, P, v[1]), poly_elem(*f, P, v[2]), P)),
            dual_matrix(*f, n, m, l, poly_elem(*f, P, v[3]), poly_elem(*f, P, v[4]), poly_elem(*f, P, v[5])), n, m, l);
        const oracle::Poly expect = ring.add(ring.add(ring.mul(v[0], v[3]), ring.mul(v[1], v[4])), ring.mul(v[2], v[5]));
        CHECK(pr == poly_elem(*f, pr.precision(), expect));
      }
    }
  }
}

TEST_CASE("closed form with u != 1") {
  auto f = make_field(2, {-6, 0, 1}, 40);  // u = 3
  SweepOptions o;
  o.samples = 2000;
  const CheckReport r = closed_form_check(*f, 1, 1, 0, o);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.counts.at("mismatches") == 0);
}

TEST_CASE("nondegeneracy") {
  SweepOptions o;
  auto q2 = make_q2(40);
  auto r2 = make_field(2, {-2, 0, 1}, 40);
  const CheckReport a = nondegeneracy_check(*q2, 1, 0, 0, o);
  CHECK(a.verdict == Verdict::Pass);
  CHECK(a.counts.at("proof_witness_failures") == 0);
  CHECK(a.counts.at("degenerate_failures") == 0);
  CHECK(a.counts.at("dual_without_witness") == 0);
  const CheckReport b = nondegeneracy_check(*r2, 1, 1, 0, o);
  CHECK(b.verdict == Verdict::Pass);
  CHECK(b.counts.at("bilinear_failures") == 0);
}
