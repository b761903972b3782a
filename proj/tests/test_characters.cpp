#include <doctest.h>

#include "oracles.hpp"
#include "twoadic/characters.hpp"

using namespace twoadic;

TEST_CASE("dyadic rotations") {
  const auto q = DyadicRotation::make(1, 2);
  CHECK(q.to_string() == "1/4");
  CHECK(DyadicRotation::make(2, 2) == DyadicRotation::make(1, 1));
  CHECK(DyadicRotation::make(4, 2).is_zero());
  CHECK(DyadicRotation::make(-1, 3) == DyadicRotation::make(7, 3));
  CHECK(q + q == DyadicRotation::make(1, 1));
  CHECK(q + q + q + q == DyadicRotation{});
  CHECK(q - q == DyadicRotation{});
  CHECK(q.times(6) == DyadicRotation::make(1, 1));
}

TEST_CASE("Smith normal form") {
  SUBCASE("cyclic") {
    const SmithForm s = smith_normal_form({1, {{4}}});
    CHECK(s.order() == 4);
  }
  SUBCASE("order equals |det| of a full-rank square relation matrix") {
    const std::vector<std::vector<std::vector<std::int64_t>>> rels{
        {{2, 4}, {6, 8}}, {{2, 0}, {0, 4}}, {{4, 2, 0}, {2, 4, 2}, {0, 2, 4}}, {{8, 4, 2}, {0, 2, 6}, {2, 2, 2}}};
    for (const auto& r : rels) {
      std::int64_t det = 0;
      if (r.size() == 2) det = r[0][0] * r[1][1] - r[0][1] * r[1][0];
      else
        det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
              r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
      const SmithForm s = smith_normal_form({static_cast<int>(r.size()), r});
      CHECK(s.order() == std::llabs(det));
      // factors form a divisibility chain once units are dropped
      std::vector<std::int64_t> f;
      for (auto d : s.factors)
        if (d != 1) f.push_back(d);
      std::sort(f.begin(), f.end());
      for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i] % f[i - 1] == 0);
      // each relation row has coordinates 0
      for (const auto& row : r) {
        const auto c = s.coordinates(row);
        for (auto x : c) CHECK(x == 0);
      }
    }
  }
  SUBCASE("free part") {
    const SmithForm s = smith_normal_form({2, {{2, 0}}});
    CHECK_FALSE(s.finite());
  }
}

TEST_CASE("additive character on p^-1/p over Q2") {
  auto f = make_q2(20);
  const AdditiveCharacter chi = build_character(*f, 1, 1, 0);
  CHECK(chi.eval(FracElem(f->one(4), 1)) == DyadicRotation::make(1, 2));
  CHECK(chi.eval(FracElem::integral(f->one(4))) == DyadicRotation::make(1, 1));
  CHECK(chi.eval(FracElem::integral(f->from_int(2, 4))).is_zero());
  CHECK(chi.eval(FracElem::integral(f->zero(4))).is_zero());
  CHECK(chi.certificate_at().is_zero());
  CHECK_FALSE(chi.certificate_below().is_zero());
}

TEST_CASE("additive characters are additive") {
  auto q2 = make_q2(20);
  auto r2 = make_field(2, {-2, 0, 1}, 20);
  auto r3 = make_field(3, {6, 4, -2, 1}, 30);
  CHECK(character_check(*q2, 2, 1, 0).verdict == Verdict::Pass);
  CHECK(character_check(*q2, 4, 0, 1).verdict == Verdict::Pass);
  CHECK(character_check(*r2, 3, 1, 0).verdict == Verdict::Pass);
  CHECK(character_check(*r2, 5, 0, 2).verdict == Verdict::Pass);
  CHECK(character_check(*r3, 4, 0, 0).verdict == Verdict::Pass);
}

TEST_CASE("psi basics") {
  auto f = make_q2(20);
  const int P = minimum_precision(1, 1, 0, 0);
  const AdditiveCharacter chi = build_character(*f, 1 + 1 + 2, 0, 0);
  QuotientCoords zero = theta(identity(*f, P), 1, 0, 0);
  const FracMat A0 = dual_param_matrix(*f, 1, 0, 0, zero);
  for (const auto& c : all_quotient_coords(*f, 1, 0, 0)) {
    const IntMat x = theta_inverse(*f, c, P);
    CHECK(eval_psi(chi, A0, x).is_zero());
  }
  for (const auto& b : all_quotient_coords(*f, 1, 0, 0))
    CHECK(eval_psi(chi, dual_param_matrix(*f, 1, 0, 0, b), identity(*f, P)).is_zero());
}

TEST_CASE("psi for A = diag(1/8, -1/8) is constant on cosets of G(2,0,0)") {
  auto f = make_q2(20);
  const int P = minimum_precision(1, 1, 0, 0);
  const AdditiveCharacter chi = build_character(*f, 4, 0, 0);
  QuotientCoords b = theta(identity(*f, P), 1, 0, 0);
  b.c1 = f->one(1);
  const FracMat A = dual_param_matrix(*f, 1, 0, 0, b);
  CHECK(A.a.shift() == 3);
  CHECK(A.a.num().is_unit());
  CHECK(A.a.num().reduce(1) == f->one(1));
  const IntMat x = theta_inverse(*f, b, P);  // diag(3, 3^-1)
  const DyadicRotation v = eval_psi(chi, A, x);
  std::int64_t mates = 0;
  for (const auto& z : enumerate_elements(*f, SubgroupDesc::general(2, 0, 0), P)) {
    CHECK(eval_psi(chi, A, x * z) == v);
    ++mates;
  }
  CHECK(mates > 1);
}

TEST_CASE("psi for a diagonal parameter at n = 1 over Q2 is not multiplicative") {
  // X = (1,2;0,1), Y = (1,0;2,1), XY = (5,2;2,1). With A = diag(1/8, -1/8):
  // trace((X-1)A) = trace((Y-1)A) = 0 but trace((XY-1)A) = 4/8 = 1/2, and
  // chi(1/2) != 0 for any chi nontrivial on p^-1.
  auto f = make_q2(20);
  const int P = minimum_precision(1, 1, 0, 0);
  const AdditiveCharacter chi = build_character(*f, 4, 0, 0);
  QuotientCoords b = theta(identity(*f, P), 1, 0, 0);
  b.c1 = f->one(1);
  const FracMat A = dual_param_matrix(*f, 1, 0, 0, b);
  const IntMat x = int_mat(*f, P, 1, 2, 0, 1), y = int_mat(*f, P, 1, 0, 2, 1);
  CHECK(eval_psi(chi, A, x).is_zero());
  CHECK(eval_psi(chi, A, y).is_zero());
  CHECK(eval_psi(chi, A, x * y) == DyadicRotation::make(1, 1));
}

TEST_CASE("character group oracle against brute-force homomorphism count") {
  auto f = make_q2(40);
  for (auto [m, l] : {std::pair{0, 0}, std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}, std::pair{-1, 1},
                      std::pair{-1, 0}}) {
    CAPTURE(m);
    CAPTURE(l);
    const int P = minimum_precision(1, 1, m, l);
    const CharacterOracle o = enumerate_characters_oracle(*f, 1, m, l, P);
    const auto table = oracle::quotient_table_q2(1, m, l, 2 + std::max({m, l, 0}) + 1);
    REQUIRE_FALSE(table.empty());
    CHECK(static_cast<std::int64_t>(o.tables.size()) == oracle::count_homs_to_QZ(table));
    if (m + l >= 0) {
      CHECK(o.quotient_order == 8);
      CHECK(o.tables.size() == 8);
    }
  }
}

TEST_CASE("duality where the quotient pairing is exact") {
  SweepOptions o;
  auto q2 = make_q2(40);
  auto r2 = make_field(2, {-2, 0, 1}, 40);
  const CheckReport a = verify_duality(*q2, 2, 1, 0, o);
  CHECK(a.verdict == Verdict::Pass);
  CHECK(a.counts.at("oracle_characters") == 64);
  CHECK(a.counts.at("distinct_characters") == 64);
  CHECK(a.counts.at("residue_well_defined") == 1);
  // Below n = e the x^2 term of d - 1 makes psi_A depend on the lift of b1.
  const CheckReport b = verify_duality(*r2, 1, 2, 1, o);
  CHECK(b.verdict == Verdict::Fail);
  CHECK(b.counts.at("is_character") == 1);
  CHECK(b.counts.at("residue_well_defined") == 0);
  // Outside -1 <= m, l <= e the run is refused.
  CHECK(verify_duality(*q2, 1, 2, 0, o).verdict == Verdict::Refused);
}

TEST_CASE("pi^2 = 2, n = 2: b1 = pi gives the trivial character") {
  // X = 1 + pi^2 x on the diagonal: tr((X-1)A) = pi^-1 x - pi^-1 x^2 + (o) and x = x^2 mod p.
  SweepOptions o;
  auto r2 = make_field(2, {-2, 0, 1}, 40);
  const int P = minimum_precision(2, 2, 1, 1);
  const AdditiveCharacter chi = build_character(*r2, 2 + 2 + 2, 0, 0);
  QuotientCoords b = theta(identity(*r2, P), 2, 1, 1);
  b.c1 = r2->pi_power(1, 2);
  const DualParam A = dual_param(*r2, 2, 1, 1, b, P);
  std::int64_t reps = 0;
  for (const auto& x : theta_cosets(*r2, 2, 1, 1, P).representatives) {
    CHECK(eval_psi(chi, A, x).is_zero());
    ++reps;
  }
  CHECK(reps == 64);
  const CheckReport r = verify_duality(*r2, 2, 1, 1, o);
  CHECK(r.counts.at("residue_well_defined") == 1);
  CHECK(r.counts.at("is_character") == 1);
  CHECK(r.counts.at("distinct_characters") == 32);
  CHECK(r.verdict == Verdict::Fail);
}

TEST_CASE("product and equivariance") {
  SweepOptions o;
  auto q2 = make_q2(40);
  CHECK(psi_product_check(*q2, 1, 0, 0, o).verdict == Verdict::Pass);
  CHECK(psi_product_check(*q2, 1, 1, 0, o).verdict == Verdict::Pass);
  const CheckReport e0 = equivariance_check(*q2, 1, 0, 0, o);
  CHECK(e0.verdict == Verdict::Pass);
  CHECK(e0.counts.at("mismatches") == 0);
  const CheckReport e1 = equivariance_check(*q2, 1, 1, 0, o);
  CHECK(e1.verdict == Verdict::Pass);
  CHECK(e1.counts.at("conjugate_a_in_swapped_shape") > 0);
}
