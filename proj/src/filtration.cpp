#include "twoadic/filtration.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "twoadic/projective_line.hpp"

namespace twoadic {

namespace {

// Elements of p^k / p^N ordered by pi-adic digits.
std::vector<TruncElem> ideal_elements(const FieldSpec& f, int k, int precision) {
  k = std::max(k, 0);
  if (k >= precision) return {f.zero(precision)};
  const int free = precision - k;
  if (free > 40) fail(ErrorCode::Overflow, "ideal quotient with 2^" + std::to_string(free) + " elements");
  std::vector<TruncElem> out;
  out.reserve(std::size_t{1} << free);
  // Each element is an earlier one plus a single power of pi.
  std::vector<TruncElem> powers;
  for (int t = 0; t < free; ++t) powers.push_back(f.pi_power(k + t, precision));
  out.push_back(f.zero(precision));
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << free); ++bits) {
    const int low = std::countr_zero(bits);
    out.push_back(out[bits & (bits - 1)] + powers[static_cast<std::size_t>(low)]);
  }
  return out;
}

std::int64_t checked_product(std::initializer_list<std::size_t> sizes, std::int64_t cap) {
  std::int64_t total = 1;
  for (auto s : sizes) {
    if (s != 0 && total > cap / static_cast<std::int64_t>(s))
      fail(ErrorCode::Overflow, "enumeration exceeds cap " + std::to_string(cap));
    total *= static_cast<std::int64_t>(s);
  }
  if (total > cap) fail(ErrorCode::Overflow, "enumeration exceeds cap " + std::to_string(cap));
  return total;
}

bool diag_ok(const TruncElem& x, int bound) {
  if (bound <= 0) return true;
  return x.val_at_least(std::min(bound, x.precision()));
}

std::string mat_key(const IntMat& x) {
  std::string key;
  const int e = x.a.field().e();
  key.reserve(static_cast<std::size_t>(32 * e));
  for (const TruncElem* t : {&x.a, &x.b, &x.c, &x.d})
    for (int i = 0; i < e; ++i) {
      const std::uint64_t v = t->coeff(i);
      key.append(reinterpret_cast<const char*>(&v), sizeof v);
    }
  return key;
}

CheckReport make_report(const char* suite, const char* name, std::map<std::string, std::int64_t> params) {
  CheckReport r;
  r.suite = suite;
  r.name = name;
  r.params = std::move(params);
  return r;
}

bool knm_bounds_hold(const IntMat& z, int n, int m) {
  return z.a.val_at_least(n) && z.d.val_at_least(n) && z.b.val_at_least(n + m) && z.c.val_at_least(n + m);
}

}  // namespace

// ---------------------------------------------------------------------------

void SubgroupDesc::validate() const {
  switch (kind) {
    case SubgroupKind::K: return;
    case SubgroupKind::Kn:
    case SubgroupKind::Bn:
      if (n < 0) fail(ErrorCode::InvalidArgument, "level must be >= 0");
      return;
    case SubgroupKind::Knm:
      if (n < 0 || m < 0) fail(ErrorCode::InvalidArgument, "K_n^m needs n, m >= 0");
      return;
    case SubgroupKind::G:
      if (n < 1 || m < -1 || l < -1) fail(ErrorCode::InvalidArgument, "G(n,m,l) needs n >= 1 and m, l >= -1");
      return;
  }
}

Bounds SubgroupDesc::bounds() const {
  validate();
  switch (kind) {
    case SubgroupKind::K: return {0, 0, 0};
    case SubgroupKind::Kn: return {n, n, n};
    case SubgroupKind::Bn: return {0, 0, n};
    case SubgroupKind::Knm: return {n, n + m, n + m};
    case SubgroupKind::G: return {n, n + m, n + l};
  }
  return {};
}

int SubgroupDesc::depth() const {
  const Bounds b = bounds();
  return std::max({b.diag, b.upper, b.lower});
}

std::string SubgroupDesc::to_string() const {
  switch (kind) {
    case SubgroupKind::K: return "K";
    case SubgroupKind::Kn: return "K_" + std::to_string(n);
    case SubgroupKind::Bn: return "B_" + std::to_string(n);
    case SubgroupKind::Knm: return "K_" + std::to_string(n) + "^" + std::to_string(m);
    case SubgroupKind::G:
      return "G(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(l) + ")";
  }
  return "?";
}

bool in_bounds(const IntMat& x, const Bounds& b) {
  const FieldSpec& f = x.a.field();
  if (b.diag > 0) {
    const TruncElem one = f.one(x.a.precision());
    if (!(x.a - one).val_at_least(b.diag) || !(x.d - one).val_at_least(b.diag)) return false;
  }
  return x.b.val_at_least(b.upper) && x.c.val_at_least(b.lower);
}

bool membership(const IntMat& x, const SubgroupDesc& s) {
  if (!in_bounds(x, s.bounds())) return false;
  return x.det() == x.a.field().one(x.a.precision());
}

void for_each_element(const FieldSpec& f, const Bounds& b, int precision, const std::function<void(const IntMat&)>& fn,
                      std::int64_t cap) {
  if (precision <= 0) {
    fn(identity(f, 0));
    return;
  }
  const TruncElem one = f.one(precision);
  const auto uppers = ideal_elements(f, b.upper, precision);
  const auto lowers = ideal_elements(f, b.lower, precision);
  std::vector<TruncElem> diags;
  if (b.diag > 0) {
    for (const auto& x : ideal_elements(f, b.diag, precision)) diags.push_back(one + x);
  } else {
    for (const auto& x : ideal_elements(f, 0, precision))
      if (x.is_unit()) diags.push_back(x);
  }
  checked_product({diags.size(), uppers.size(), lowers.size()}, cap);

  for (const auto& a : diags) {
    const TruncElem ainv = a.inverse();
    for (const auto& bb : uppers)
      for (const auto& c : lowers) {
        const TruncElem d = (one + bb * c) * ainv;
        if (!diag_ok(d - one, b.diag)) continue;
        fn(IntMat{a, bb, c, d});
      }
  }

  // a not a unit forces b and c to be units, so only K itself has these.
  if (b.diag == 0 && b.upper == 0 && b.lower == 0) {
    const auto all = ideal_elements(f, 0, precision);
    std::vector<TruncElem> nonunits, units;
    for (const auto& x : all) (x.is_unit() ? units : nonunits).push_back(x);
    checked_product({nonunits.size(), all.size(), units.size()}, cap);
    for (const auto& a : nonunits)
      for (const auto& d : all)
        for (const auto& bb : units) {
          const TruncElem c = (a * d - one) * bb.inverse();
          fn(IntMat{a, bb, c, d});
        }
  }
}

std::int64_t count_elements(const FieldSpec& f, const Bounds& b, int precision, std::int64_t cap) {
  std::int64_t count = 0;
  for_each_element(f, b, precision, [&](const IntMat&) { ++count; }, cap);
  return count;
}

std::vector<IntMat> enumerate_elements(const FieldSpec& f, const SubgroupDesc& s, int precision, std::int64_t cap) {
  std::vector<IntMat> out;
  for_each_element(f, s.bounds(), precision, [&](const IntMat& x) { out.push_back(x); }, cap);
  return out;
}

IntMat random_element(const FieldSpec& f, const Bounds& b, int precision, Rng& rng) {
  const TruncElem one = f.one(precision);
  auto draw_diag = [&] {
    return b.diag > 0 ? one + random_in_ideal(f, b.diag, precision, rng) : random_elem(f, precision, rng);
  };
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const TruncElem a = draw_diag();
    const TruncElem bb = random_in_ideal(f, b.upper, precision, rng);
    if (a.is_unit()) {
      const TruncElem c = random_in_ideal(f, b.lower, precision, rng);
      const TruncElem d = (one + bb * c) * a.inverse();
      if (diag_ok(d - one, b.diag)) return {a, bb, c, d};
    } else if (bb.is_unit()) {
      const TruncElem d = draw_diag();
      const TruncElem c = (a * d - one) * bb.inverse();
      if (c.val_at_least(std::min(b.lower, precision))) return {a, bb, c, d};
    }
  }
  fail(ErrorCode::Internal, "could not sample a group element");
}

// ---------------------------------------------------------------------------

QuotientCoords QuotientCoords::operator+(const QuotientCoords& o) const {
  return {n, m, l, c1 + o.c1, c2 + o.c2, c3 + o.c3};
}

QuotientCoords QuotientCoords::operator-() const { return {n, m, l, -c1, -c2, -c3}; }

std::uint64_t QuotientCoords::key() const {
  return c1.digit_bits() | (c2.digit_bits() << n) | (c3.digit_bits() << (2 * n));
}

std::string QuotientCoords::to_string() const {
  return "(" + c1.to_string() + ", " + c2.to_string() + ", " + c3.to_string() + ")";
}

QuotientCoords quotient_coords_from_key(const FieldSpec& f, int n, int m, int l, std::uint64_t key) {
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  return {n,
          m,
          l,
          f.from_digits(key & mask, 0, n),
          f.from_digits((key >> n) & mask, 0, n),
          f.from_digits((key >> (2 * n)) & mask, 0, n)};
}

std::vector<QuotientCoords> all_quotient_coords(const FieldSpec& f, int n, int m, int l) {
  if (3 * n > 30) fail(ErrorCode::Overflow, "quotient too large");
  std::vector<QuotientCoords> out;
  const std::uint64_t total = std::uint64_t{1} << (3 * n);
  out.reserve(total);
  for (std::uint64_t k = 0; k < total; ++k) out.push_back(quotient_coords_from_key(f, n, m, l, k));
  return out;
}

QuotientCoords theta(const IntMat& x, int n, int m, int l) {
  const SubgroupDesc g = SubgroupDesc::general(n, m, l);
  const int p = precision_of(x);
  if (p < 2 * n + std::max({m, l, 0}))
    fail(ErrorCode::PrecisionTooSmall, "theta needs precision " + std::to_string(2 * n + std::max({m, l, 0})));
  if (!in_bounds(x, g.bounds())) fail(ErrorCode::ShapeViolation, to_string(x) + " is not in " + g.to_string());
  const FieldSpec& f = x.a.field();
  const TruncElem am1 = x.a.reduce(p) - f.one(p);
  return {n, m, l, am1.div_pi(n).reduce(n), x.b.reduce(p).div_pi(n + m).reduce(n),
          x.c.reduce(p).div_pi(n + l).reduce(n)};
}

IntMat theta_inverse(const FieldSpec& f, const QuotientCoords& v, int precision) {
  const TruncElem one = f.one(precision);
  const TruncElem a = one + v.c1.lift(precision) * f.pi_power(v.n, precision);
  const TruncElem b = v.c2.lift(precision) * f.pi_power(v.n + v.m, precision);
  const TruncElem c = v.c3.lift(precision) * f.pi_power(v.n + v.l, precision);
  return {a, b, c, (one + b * c) * a.inverse()};
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> CosetSystem::locate(const IntMat& x) const {
  const IntMat y = reduce(x, precision);
  if (theta_keyed) {
    try {
      const auto it = by_key.find(theta(y, subgroup.n, subgroup.m, subgroup.l).key());
      if (it == by_key.end()) return std::nullopt;
      return it->second;
    } catch (const Error& err) {
      if (err.code() == ErrorCode::ShapeViolation) return std::nullopt;
      throw;
    }
  }
  if (!membership(y, subgroup)) return std::nullopt;
  for (std::size_t i = 0; i < representatives.size(); ++i)
    if (membership(mat_inv(representatives[i]) * y, modulus)) return i;
  return std::nullopt;
}

CosetSystem enumerate_cosets(const FieldSpec& f, const SubgroupDesc& s, const SubgroupDesc& t,
                             const SweepOptions& opts) {
  const Bounds bs = s.bounds();
  const Bounds bt = t.bounds();
  const bool diag_contained = bs.diag == 0 || (bt.diag >= bs.diag);
  if (!diag_contained || bt.upper < bs.upper || bt.lower < bs.lower)
    fail(ErrorCode::NotASubgroup, t.to_string() + " is not contained in " + s.to_string());

  CosetSystem sys;
  sys.subgroup = s;
  sys.modulus = t;
  sys.precision = std::max({1, s.depth(), t.depth()});
  const auto elems = enumerate_elements(f, s, sys.precision, opts.cap);
  const auto sub = enumerate_elements(f, t, sys.precision, opts.cap);

  std::unordered_set<std::string> covered;
  for (const auto& x : elems) {
    if (covered.count(mat_key(x)) != 0) continue;
    sys.representatives.push_back(x);
    for (const auto& h : sub) {
      const IntMat y = x * h;
      if (!membership(y, s))
        fail(ErrorCode::NotASubgroup, s.to_string() + " is not closed: " + to_string(y) + " escapes");
      if (!covered.insert(mat_key(y)).second)
        fail(ErrorCode::NotASubgroup, "cosets of " + t.to_string() + " overlap at " + to_string(y));
    }
  }
  if (covered.size() != elems.size())
    fail(ErrorCode::NotASubgroup, "coset union does not exhaust " + s.to_string());
  return sys;
}

CosetSystem theta_cosets(const FieldSpec& f, int n, int m, int l, int precision) {
  CosetSystem sys;
  sys.subgroup = SubgroupDesc::general(n, m, l);
  sys.modulus = SubgroupDesc::general(2 * n, m, l);
  sys.precision = precision;
  sys.theta_keyed = true;
  for (const auto& v : all_quotient_coords(f, n, m, l)) {
    sys.by_key.emplace(v.key(), sys.representatives.size());
    sys.representatives.push_back(theta_inverse(f, v, precision));
  }
  return sys;
}

int minimum_precision(int e, int n, int m, int l) { return 2 * n + e + std::max({m, l, e, 0}) + 1; }

// ---------------------------------------------------------------------------

CheckReport normality_check(const FieldSpec& f, int n, int m, const SweepOptions& opts) {
  CheckReport r = make_report("normality", "K_n^m normal in K", {{"e", f.e()}, {"n", n}, {"m", m}});
  const bool in_hyp = f.e() >= m && n >= m;
  const int prec = n + m + f.e();
  const IntMat id = identity(f, prec);

  std::vector<IntMat> shifted;  // h - 1
  for_each_element(f, SubgroupDesc::knm(n, m).bounds(), prec, [&](const IntMat& h) { shifted.push_back(h - id); },
                   opts.cap);

  std::int64_t conjugations = 0, failures = 0, outer = 0;
  auto sweep = [&](const IntMat& g) {
    ++outer;
    const IntMat ginv = g.adjugate();
    for (const auto& y : shifted) {
      ++conjugations;
      const IntMat z = g * y * ginv;
      if (!knm_bounds_hold(z, n, m)) {
        ++failures;
        r.add_witness("g=" + to_string(g) + " h=" + to_string(y + id) + " ghg^-1=" + to_string(z + id));
      }
    }
  };
  if (opts.sampled) {
    Rng rng(opts.seed);
    for (std::int64_t s = 0; s < opts.samples; ++s) sweep(random_element(f, Bounds{}, prec, rng));
    r.counts["seed"] = static_cast<std::int64_t>(opts.seed);
  } else {
    const std::int64_t predicted = 6 * (std::int64_t{1} << (3 * (prec - 1)));
    if (predicted > opts.cap) fail(ErrorCode::Overflow, "K mod K_" + std::to_string(prec) + " exceeds cap");
    for_each_element(f, Bounds{}, prec, sweep, opts.cap);
  }
  r.counts["precision"] = prec;
  r.counts["subgroup_reps"] = static_cast<std::int64_t>(shifted.size());
  r.counts["group_reps"] = outer;
  r.counts["conjugations"] = conjugations;
  r.counts["failures"] = failures;
  r.counts["exhaustive"] = opts.sampled ? 0 : 1;
  if (in_hyp) {
    r.verdict = failures == 0 ? Verdict::Pass : Verdict::Fail;
  } else {
    r.verdict = Verdict::OutOfHypothesis;
    r.notes.push_back(std::string("outside hypothesis m <= min(e, n); observed: ") +
                      (failures == 0 ? "normal" : "not normal"));
  }
  return r;
}

CheckReport conjugate_intersection_check(const FieldSpec& f, int n, int m, const SweepOptions& opts) {
  CheckReport r = make_report("normality", "conjugate intersection", {{"e", f.e()}, {"n", n}, {"m", m}});
  const bool in_hyp = f.e() >= m && n >= m;
  const int level = n + m;
  const int prec = n + m + f.e();
  const Bounds knm = SubgroupDesc::knm(n, m).bounds();
  const Bounds borel = SubgroupDesc::borel(level).bounds();
  const IntMat id = identity(f, prec);

  // (a) K_n^m = B_{n+m} cap K_n cap Stab([0:1]_{n+m}), elementwise over K_n mod K_prec.
  const ProjPoint top = canonicalize_point(f, 0, 1, level);
  std::int64_t a_checked = 0, a_mismatch = 0;
  for_each_element(f, SubgroupDesc::kernel(n).bounds(), prec, [&](const IntMat& x) {
    ++a_checked;
    const bool lhs = in_bounds(x, knm);
    const bool rhs = in_bounds(x, borel) && act(x, top) == top;
    if (lhs != rhs) {
      ++a_mismatch;
      r.add_witness("(a) " + to_string(x) + (lhs ? " in K_n^m only" : " in the intersection only"));
    }
  }, opts.cap);

  // (b) pointwise triviality at level n+m.
  const CheckReport b = trivial_action_check(f, n, m);
  for (const auto& w : b.witnesses) r.add_witness("(b) " + w);

  // (c) K_n^m lies in every conjugate g (B_{n+m} cap K_n) g^-1.
  std::vector<IntMat> shifted;
  for_each_element(f, knm, prec, [&](const IntMat& h) { shifted.push_back(h - id); }, opts.cap);
  std::int64_t c_checked = 0, c_fail = 0;
  auto sweep = [&](const IntMat& g) {
    const IntMat ginv = g.adjugate();
    for (const auto& y : shifted) {
      ++c_checked;
      const IntMat z = ginv * y * g;
      if (!(z.a.val_at_least(n) && z.d.val_at_least(n) && z.b.val_at_least(n) && z.c.val_at_least(level))) {
        ++c_fail;
        r.add_witness("(c) g=" + to_string(g) + " h=" + to_string(y + id));
      }
    }
  };
  const std::int64_t group_size = 6 * (std::int64_t{1} << (3 * (prec - 1)));
  const bool exhaustive = !opts.sampled && group_size * static_cast<std::int64_t>(shifted.size()) <= 8'000'000;
  if (exhaustive) {
    for_each_element(f, Bounds{}, prec, sweep, opts.cap);
  } else {
    Rng rng(opts.seed);
    for (std::int64_t s = 0; s < std::min<std::int64_t>(opts.samples, 2000); ++s)
      sweep(random_element(f, Bounds{}, prec, rng));
    r.counts["seed"] = static_cast<std::int64_t>(opts.seed);
  }

  r.counts["a_checked"] = a_checked;
  r.counts["a_mismatches"] = a_mismatch;
  r.counts["b_elements"] = b.counts.at("elements");
  r.counts["b_points"] = b.counts.at("points");
  r.counts["b_moved"] = b.counts.at("moved");
  r.counts["b_diagonal_mismatches"] = b.counts.at("diagonal_mismatches");
  r.counts["c_checked"] = c_checked;
  r.counts["c_failures"] = c_fail;
  r.counts["c_exhaustive"] = exhaustive ? 1 : 0;
  const bool ok = a_mismatch == 0 && b.counts.at("moved") == 0 && b.counts.at("diagonal_mismatches") == 0 &&
                  c_fail == 0;
  if (in_hyp) {
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  } else {
    r.verdict = Verdict::OutOfHypothesis;
    r.notes.push_back(std::string("outside hypothesis m <= min(e, n); observed: ") + (ok ? "holds" : "fails"));
  }
  return r;
}

CheckReport theta_check(const FieldSpec& f, int n, int m, int l, const SweepOptions& opts,
                        std::optional<int> precision) {
  CheckReport r = make_report("theta", "X -> X-1 isomorphism", {{"e", f.e()}, {"n", n}, {"m", m}, {"l", l}});
  const int minp = minimum_precision(f.e(), n, m, l);
  const int prec = std::max(minp, precision.value_or(minp));
  r.counts["precision"] = prec;
  const SubgroupDesc g = SubgroupDesc::general(n, m, l);
  const SubgroupDesc g2 = SubgroupDesc::general(2 * n, m, l);
  const IntMat id = identity(f, prec);
  const TruncElem one = f.one(prec);
  bool ok = true;

  // Round trip and cardinality of the coordinate side.
  const auto coords = all_quotient_coords(f, n, m, l);
  std::int64_t round_trip_fail = 0, det_fail = 0;
  std::vector<IntMat> reps;
  for (const auto& v : coords) {
    const IntMat x = theta_inverse(f, v, prec);
    reps.push_back(x);
    if (x.det() != one) ++det_fail;
    if (!(theta(x, n, m, l) == v)) {
      ++round_trip_fail;
      r.add_witness("round trip fails at " + v.to_string());
    }
  }
  std::unordered_set<std::uint64_t> keys;
  for (const auto& x : reps) keys.insert(theta(x, n, m, l).key());
  const auto expected = static_cast<std::int64_t>(std::uint64_t{1} << (3 * n));
  r.counts["coordinates"] = static_cast<std::int64_t>(coords.size());
  r.counts["expected_order"] = expected;
  r.counts["round_trip_failures"] = round_trip_fail;
  r.counts["det_failures"] = det_fail;
  r.counts["distinct_images"] = static_cast<std::int64_t>(keys.size());
  ok = ok && round_trip_fail == 0 && det_fail == 0 && static_cast<std::int64_t>(keys.size()) == expected;

  // Group-side cardinality |G(n,m,l)/K_N| / |G(2n,m,l)/K_N|.
  try {
    const std::int64_t big = count_elements(f, g.bounds(), prec, opts.cap);
    const std::int64_t small = count_elements(f, g2.bounds(), prec, opts.cap);
    r.counts["group_elements"] = big;
    r.counts["kernel_elements"] = small;
    const bool divides = small != 0 && big % small == 0;
    r.counts["index"] = divides ? big / small : -1;
    if (!divides || big / small != expected) {
      ok = false;
      r.add_witness("index " + std::to_string(big) + "/" + std::to_string(small) + " != " + std::to_string(expected));
    }
  } catch (const Error& err) {
    if (err.code() != ErrorCode::Overflow) throw;
    r.notes.push_back("group-side count skipped: exceeds cap");
  }

  // Homomorphism.
  std::int64_t hom_pairs = 0, hom_fail = 0, inv_fail = 0;
  auto hom = [&](const IntMat& x, const IntMat& y) {
    ++hom_pairs;
    if (!(theta(x * y, n, m, l) == theta(x, n, m, l) + theta(y, n, m, l))) {
      ++hom_fail;
      r.add_witness("theta(XY) != theta(X)+theta(Y) for X=" + to_string(x) + " Y=" + to_string(y));
    }
  };
  if (n == 1 && !opts.sampled) {
    for (const auto& x : reps)
      for (const auto& y : reps) hom(x, y);
  }
  Rng rng(opts.seed);
  const Bounds gb = g.bounds();
  for (std::int64_t s = 0; s < opts.samples; ++s) hom(random_element(f, gb, prec, rng), random_element(f, gb, prec, rng));
  r.counts["seed"] = static_cast<std::int64_t>(opts.seed);
  for (const auto& x : reps)
    if (!(theta(mat_inv(x), n, m, l) == -theta(x, n, m, l))) {
      ++inv_fail;
      r.add_witness("theta(X^-1) != -theta(X) for X=" + to_string(x));
    }
  r.counts["hom_pairs"] = hom_pairs;
  r.counts["hom_failures"] = hom_fail;
  r.counts["inverse_failures"] = inv_fail;
  ok = ok && hom_fail == 0 && inv_fail == 0;

  // Kernel is G(2n,m,l) and the trace of X - 1 lands in p^2n.
  std::int64_t kernel_checked = 0, kernel_fail = 0, trace_fail = 0;
  auto kernel = [&](const IntMat& x) {
    ++kernel_checked;
    const bool zero = theta(x, n, m, l).is_zero();
    if (zero != in_bounds(x, g2.bounds())) {
      ++kernel_fail;
      r.add_witness("kernel mismatch at " + to_string(x));
    }
    if (!(x - id).trace().val_at_least(2 * n)) {
      ++trace_fail;
      r.add_witness("trace(X-1) not in p^" + std::to_string(2 * n) + " for X=" + to_string(x));
    }
  };
  bool kernel_exhaustive = false;
  if (!opts.sampled) {
    try {
      for_each_element(f, gb, prec, kernel, std::min<std::int64_t>(opts.cap, std::int64_t{1} << 18));
      kernel_exhaustive = true;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::Overflow) throw;
    }
  }
  if (!kernel_exhaustive) {
    kernel_checked = kernel_fail = trace_fail = 0;
    for (std::int64_t s = 0; s < opts.samples; ++s) kernel(random_element(f, gb, prec, rng));
  }
  r.counts["kernel_checked"] = kernel_checked;
  r.counts["kernel_failures"] = kernel_fail;
  r.counts["trace_failures"] = trace_fail;
  r.counts["kernel_exhaustive"] = kernel_exhaustive ? 1 : 0;
  ok = ok && kernel_fail == 0 && trace_fail == 0;
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  if (m + l < 0) r.notes.push_back("m + l < 0: products of coordinates reach p^(2n+m+l), below p^2n");
  return r;
}

CheckReport closure_check(const FieldSpec& f, const SubgroupDesc& s, int precision, const SweepOptions& opts) {
  CheckReport r = make_report("theta", "closure", {{"e", f.e()}, {"n", s.n}, {"m", s.m}, {"l", s.l}});
  r.notes.push_back("group " + s.to_string());
  const auto elems = enumerate_elements(f, s, precision, opts.cap);
  std::int64_t products = 0, prod_fail = 0, inv_fail = 0;
  auto check = [&](const IntMat& x, const IntMat& y) {
    ++products;
    if (!membership(x * y, s)) {
      ++prod_fail;
      r.add_witness("product escapes: " + to_string(x) + " * " + to_string(y));
    }
  };
  const auto count = static_cast<std::int64_t>(elems.size());
  const bool exhaustive = !opts.sampled && count * count <= 1'000'000;
  if (exhaustive) {
    for (const auto& x : elems)
      for (const auto& y : elems) check(x, y);
  } else {
    Rng rng(opts.seed);
    for (std::int64_t t = 0; t < opts.samples; ++t)
      check(elems[random_below(rng, elems.size())], elems[random_below(rng, elems.size())]);
    r.counts["seed"] = static_cast<std::int64_t>(opts.seed);
  }
  for (const auto& x : elems)
    if (!membership(mat_inv(x), s)) {
      ++inv_fail;
      r.add_witness("inverse escapes: " + to_string(x));
    }
  r.counts["precision"] = precision;
  r.counts["elements"] = count;
  r.counts["products"] = products;
  r.counts["product_failures"] = prod_fail;
  r.counts["inverse_failures"] = inv_fail;
  r.counts["exhaustive"] = exhaustive ? 1 : 0;
  r.verdict = prod_fail == 0 && inv_fail == 0 ? Verdict::Pass : Verdict::Fail;
  return r;
}

}  // namespace twoadic
