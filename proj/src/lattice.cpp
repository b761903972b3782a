#include "twoadic/lattice.hpp"

#include <algorithm>
#include <vector>

#include "twoadic/filtration.hpp"
#include "twoadic/random.hpp"

namespace twoadic {

void LatticeShape::validate() const {
  if (m < -1 || l < -1) fail(ErrorCode::InvalidArgument, "lattice shape needs m, l >= -1");
  if (kind == LatticeKind::Multiplicative && n < 1)
    fail(ErrorCode::InvalidArgument, "multiplicative shape needs n >= 1");
}

void LatticeShape::entry_bounds(int e, int& diag, int& upper, int& lower) const {
  validate();
  if (kind == LatticeKind::Dual) {
    diag = -n - e;
    upper = -n - l;
    lower = -n - m;
  } else {
    diag = n;
    upper = n + m;
    lower = n + l;
  }
}

std::string LatticeShape::to_string() const {
  const char* k = kind == LatticeKind::Additive ? "additive" : kind == LatticeKind::Multiplicative ? "multiplicative"
                                                                                                     : "dual";
  return std::string(k) + "(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(l) + ")";
}

bool in_lattice(const FracMat& x, const LatticeShape& shape) {
  int d = 0, u = 0, lo = 0;
  const FieldSpec& f = x.a.field();
  shape.entry_bounds(f.e(), d, u, lo);
  FracMat y = x;
  if (shape.kind == LatticeKind::Multiplicative) {
    const FracElem one = FracElem::integral(f.one(std::max(1, x.a.abs_precision())));
    y.a = x.a - one;
    y.d = x.d - one;
  }
  if (!(y.a.val_at_least(d) && y.d.val_at_least(d) && y.b.val_at_least(u) && y.c.val_at_least(lo))) return false;
  if (shape.kind == LatticeKind::Multiplicative) {
    const FracElem det = x.det();
    const FracElem one = FracElem::integral(f.one(std::max(1, det.abs_precision())));
    return (det - one).is_zero();
  }
  return true;
}

bool in_lattice(const IntMat& x, const LatticeShape& shape) { return in_lattice(to_frac(x), shape); }

IntMat primal_matrix(const FieldSpec& f, int n, int m, int l, const TruncElem& a1, const TruncElem& a2,
                     const TruncElem& a3, int precision) {
  const TruncElem x1 = a1.with_precision(precision) * f.pi_power(n, precision);
  const TruncElem x2 = a2.with_precision(precision) * f.pi_power(n + m, precision);
  const TruncElem x3 = a3.with_precision(precision) * f.pi_power(n + l, precision);
  return {x1, x2, x3, -x1};
}

FracMat dual_matrix(const FieldSpec& f, int n, int m, int l, const TruncElem& b1, const TruncElem& b2,
                    const TruncElem& b3) {
  const FracElem y1(b1, n + f.e());
  return {y1, FracElem(b3, n + l), FracElem(b2, n + m), -y1};
}

TruncElem closed_form(const TruncElem& a1, const TruncElem& a2, const TruncElem& a3, const TruncElem& b1,
                      const TruncElem& b2, const TruncElem& b3) {
  const FieldSpec& f = a1.field();
  const TruncElem uinv = f.u_inverse().reduce(a1.precision());
  return uinv * a1 * b1 + a2 * b2 + a3 * b3;
}

TruncElem trace_pair(const FracMat& b, const FracMat& a, int n, int m, int l) {
  if (!(b.a + b.d).is_zero()) fail(ErrorCode::NotTraceZero, "first argument has nonzero trace");
  if (!(a.a + a.d).is_zero()) fail(ErrorCode::NotTraceZero, "second argument has nonzero trace");
  if (!in_lattice(b, LatticeShape::additive(n, m, l)))
    fail(ErrorCode::ShapeViolation, "first argument is not in " + LatticeShape::additive(n, m, l).to_string());
  if (!in_lattice(a, LatticeShape::dual(n, m, l)))
    fail(ErrorCode::ShapeViolation, "second argument is not in " + LatticeShape::dual(n, m, l).to_string());
  const FracElem t = (a * b).trace();
  if (t.abs_precision() < 1) fail(ErrorCode::PrecisionExhausted, "pairing known to no digits");
  return t.to_integral(t.abs_precision());
}

namespace {

struct Coords3 {
  TruncElem x1, x2, x3;
  bool has_unit() const { return x1.is_unit() || x2.is_unit() || x3.is_unit(); }
};

std::vector<Coords3> residue_triples(const FieldSpec& f, int digits, int precision) {
  std::vector<TruncElem> vals;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << digits); ++bits)
    vals.push_back(f.from_digits(bits, 0, precision));
  std::vector<Coords3> out;
  for (const auto& z : vals)
    for (const auto& y : vals)
      for (const auto& x : vals) out.push_back({x, y, z});
  return out;
}

bool same_at(const TruncElem& x, const TruncElem& y) {
  const int p = std::min(x.precision(), y.precision());
  return x.reduce(p) == y.reduce(p);
}

}  // namespace

CheckReport closed_form_check(const FieldSpec& f, int n, int m, int l, const SweepOptions& opts) {
  CheckReport r;
  r.suite = "pairing";
  r.name = "closed form";
  r.params = {{"e", f.e()}, {"n", n}, {"m", m}, {"l", l}};
  const int prec = minimum_precision(f.e(), n, m, l);
  Rng rng(opts.seed);
  std::int64_t mismatches = 0, min_prec = prec;
  for (std::int64_t s = 0; s < opts.samples; ++s) {
    const TruncElem a1 = random_elem(f, prec, rng), a2 = random_elem(f, prec, rng), a3 = random_elem(f, prec, rng);
    const TruncElem b1 = random_elem(f, prec, rng), b2 = random_elem(f, prec, rng), b3 = random_elem(f, prec, rng);
    const TruncElem t =
        trace_pair(to_frac(primal_matrix(f, n, m, l, a1, a2, a3, prec)), dual_matrix(f, n, m, l, b1, b2, b3), n, m, l);
    min_prec = std::min<std::int64_t>(min_prec, t.precision());
    if (!same_at(t, closed_form(a1, a2, a3, b1, b2, b3))) {
      ++mismatches;
      r.add_witness("a=(" + a1.to_string() + "," + a2.to_string() + "," + a3.to_string() + ") b=(" + b1.to_string() +
                    "," + b2.to_string() + "," + b3.to_string() + ")");
    }
  }
  r.counts = {{"samples", opts.samples},
              {"seed", static_cast<std::int64_t>(opts.seed)},
              {"precision", prec},
              {"compared_digits", min_prec},
              {"mismatches", mismatches}};
  r.verdict = mismatches == 0 ? Verdict::Pass : Verdict::Fail;
  return r;
}

CheckReport nondegeneracy_check(const FieldSpec& f, int n, int m, int l, const SweepOptions& opts) {
  CheckReport r;
  r.suite = "pairing";
  r.name = "nondegeneracy";
  r.params = {{"e", f.e()}, {"n", n}, {"m", m}, {"l", l}};
  const int prec = minimum_precision(f.e(), n, m, l);

  const auto triples = residue_triples(f, 2, prec);
  std::vector<FracMat> primal, dual;
  for (const auto& t : triples) {
    primal.push_back(to_frac(primal_matrix(f, n, m, l, t.x1, t.x2, t.x3, prec)));
    dual.push_back(dual_matrix(f, n, m, l, t.x1, t.x2, t.x3));
  }
  const std::size_t k = triples.size();
  // unit[i][j]: <B_j, A_i> is a unit.
  std::vector<std::vector<char>> unit(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) unit[i][j] = trace_pair(primal[j], dual[i], n, m, l).is_unit() ? 1 : 0;

  std::int64_t a_units = 0, a_no_witness = 0, proof_fail = 0, degenerate_checked = 0, degenerate_fail = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& b = triples[i];
    if (!b.has_unit()) {
      ++degenerate_checked;
      for (std::size_t j = 0; j < k; ++j)
        if (unit[i][j] != 0) {
          ++degenerate_fail;
          r.add_witness("A in p*dual pairs to a unit with B#" + std::to_string(j));
          break;
        }
      continue;
    }
    ++a_units;
    if (std::none_of(unit[i].begin(), unit[i].end(), [](char c) { return c != 0; })) {
      ++a_no_witness;
      r.add_witness("no witness B for A with coordinates (" + b.x1.to_string() + ", " + b.x2.to_string() + ", " +
                    b.x3.to_string() + ")");
    }
    // Single coordinate a_i = 1 at a unit b_i.
    const TruncElem one = f.one(prec), zero = f.zero(prec);
    const TruncElem* coords[3] = {&b.x1, &b.x2, &b.x3};
    for (int c = 0; c < 3; ++c) {
      if (!coords[c]->is_unit()) continue;
      const IntMat bm = primal_matrix(f, n, m, l, c == 0 ? one : zero, c == 1 ? one : zero, c == 2 ? one : zero, prec);
      if (!trace_pair(to_frac(bm), dual[i], n, m, l).is_unit()) ++proof_fail;
      break;
    }
  }

  std::int64_t b_units = 0, b_no_witness = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (!triples[j].has_unit()) continue;
    ++b_units;
    bool found = false;
    for (std::size_t i = 0; i < k && !found; ++i) found = unit[i][j] != 0;
    if (!found) {
      ++b_no_witness;
      r.add_witness("symmetric direction: no A for B#" + std::to_string(j));
    }
  }

  // Bilinearity on random triples.
  Rng rng(opts.seed);
  std::int64_t bilinear_fail = 0;
  const std::int64_t samples = std::min<std::int64_t>(opts.samples, 2000);
  auto rnd_primal = [&] {
    return to_frac(primal_matrix(f, n, m, l, random_elem(f, prec, rng), random_elem(f, prec, rng),
                                 random_elem(f, prec, rng), prec));
  };
  auto rnd_dual = [&] {
    return dual_matrix(f, n, m, l, random_elem(f, prec, rng), random_elem(f, prec, rng), random_elem(f, prec, rng));
  };
  for (std::int64_t s = 0; s < samples; ++s) {
    const FracMat b = rnd_primal(), c = rnd_primal(), a = rnd_dual(), a2 = rnd_dual();
    const TruncElem x = random_elem(f, prec, rng), y = random_elem(f, prec, rng);
    const FracElem fx = FracElem::integral(x), fy = FracElem::integral(y);
    const TruncElem left = trace_pair(b.scaled(fx) + c.scaled(fy), a, n, m, l);
    const TruncElem pb = trace_pair(b, a, n, m, l), pc = trace_pair(c, a, n, m, l);
    const int p1 = std::min({left.precision(), pb.precision(), pc.precision()});
    if (!same_at(left, x.reduce(p1) * pb.reduce(p1) + y.reduce(p1) * pc.reduce(p1))) ++bilinear_fail;
    const TruncElem right = trace_pair(b, a.scaled(fx) + a2.scaled(fy), n, m, l);
    const TruncElem pa2 = trace_pair(b, a2, n, m, l);
    const int p2 = std::min({right.precision(), pb.precision(), pa2.precision()});
    if (!same_at(right, x.reduce(p2) * pb.reduce(p2) + y.reduce(p2) * pa2.reduce(p2))) ++bilinear_fail;
  }

  r.counts = {{"precision", prec},
              {"residue_classes", static_cast<std::int64_t>(k)},
              {"dual_with_unit", a_units},
              {"dual_without_witness", a_no_witness},
              {"proof_witness_failures", proof_fail},
              {"degenerate_checked", degenerate_checked},
              {"degenerate_failures", degenerate_fail},
              {"primal_with_unit", b_units},
              {"primal_without_witness", b_no_witness},
              {"bilinear_samples", samples},
              {"bilinear_failures", bilinear_fail},
              {"seed", static_cast<std::int64_t>(opts.seed)}};
  const bool primary = a_no_witness == 0 && proof_fail == 0 && degenerate_fail == 0 && bilinear_fail == 0;
  r.verdict = primary ? Verdict::Pass : Verdict::Fail;
  r.notes.push_back(std::string("symmetric direction (A ranging): ") + (b_no_witness == 0 ? "holds" : "fails"));
  return r;
}

}  // namespace twoadic
