#include "twoadic/projective_line.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "twoadic/filtration.hpp"
#include "twoadic/random.hpp"

namespace twoadic {

namespace {

// (branch, digits of the free coordinate); unique per canonical point.
std::pair<int, std::uint64_t> point_key(const ProjPoint& p) {
  if (p.level == 0) return {0, 0};
  if (p.x.is_unit()) return {0, p.y.digit_bits()};
  return {1, p.x.digit_bits()};
}

}  // namespace

std::string ProjPoint::to_string() const {
  if (level == 0) return "[*]_0";
  return "[" + x.to_string() + " : " + y.to_string() + "]_" + std::to_string(level);
}

ProjPoint canonicalize_point(const TruncElem& x, const TruncElem& y, int level) {
  const FieldSpec& f = x.field();
  if (level == 0) return {0, f.one(0), f.zero(0)};
  const TruncElem xr = x.with_precision(level);
  const TruncElem yr = y.with_precision(level);
  if (xr.is_unit()) return {level, f.one(level), yr * xr.inverse()};
  if (yr.is_unit()) return {level, xr * yr.inverse(), f.one(level)};
  fail(ErrorCode::NotPrimitive, "neither " + xr.to_string() + " nor " + yr.to_string() + " is a unit");
}

ProjPoint canonicalize_point(const FieldSpec& f, std::int64_t x, std::int64_t y, int level) {
  return canonicalize_point(f.from_int(x, level), f.from_int(y, level), level);
}

ProjPoint act(const IntMat& g, const ProjPoint& p) {
  if (p.level == 0) return p;
  const IntMat h = reduce(g, p.level);
  const TruncElem nx = h.a * p.x + h.b * p.y;
  const TruncElem ny = h.c * p.x + h.d * p.y;
  try {
    return canonicalize_point(nx, ny, p.level);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::NotPrimitive)
      fail(ErrorCode::Internal, "matrix " + to_string(h) + " is not in K: " + err.what());
    throw;
  }
}

std::vector<ProjPoint> projective_line(const FieldSpec& f, int level) {
  if (level == 0) return {ProjPoint{0, f.one(0), f.zero(0)}};
  std::vector<ProjPoint> pts;
  const std::uint64_t full = std::uint64_t{1} << level;
  for (std::uint64_t bits = 0; bits < full; ++bits)
    pts.push_back({level, f.one(level), f.from_digits(bits, 0, level)});
  for (std::uint64_t bits = 0; bits < full / 2; ++bits)
    pts.push_back({level, f.from_digits(bits, 1, level), f.one(level)});
  return pts;
}

std::int64_t expected_point_count(int level) {
  if (level == 0) return 1;
  return (std::int64_t{1} << level) + (std::int64_t{1} << (level - 1));
}

CheckReport verify_stabilizer(const FieldSpec& f, int n) {
  CheckReport r;
  r.suite = "projline";
  r.name = "stabilizer";
  r.params = {{"e", f.e()}, {"n", n}};
  if (n == 0) {
    r.counts = {{"elements", 1}, {"stabilizing", 1}, {"in_borel", 1}, {"mismatches", 0}};
    r.notes.push_back("level 0 is a single point; all of K stabilizes it");
    return r;
  }
  const ProjPoint base = canonicalize_point(f, 1, 0, n);
  const Bounds borel = SubgroupDesc::borel(n).bounds();
  std::int64_t elements = 0, stabilizing = 0, in_borel = 0, mismatches = 0;
  for_each_element(f, Bounds{}, n, [&](const IntMat& g) {
    ++elements;
    const bool fixes = act(g, base) == base;
    const bool member = in_bounds(g, borel);
    stabilizing += fixes;
    in_borel += member;
    if (fixes != member) {
      ++mismatches;
      r.add_witness("g=" + to_string(g) + (fixes ? " fixes [1:0] but is not in B_n" : " is in B_n but moves [1:0]"));
    }
  });
  r.counts = {{"elements", elements}, {"stabilizing", stabilizing}, {"in_borel", in_borel}, {"mismatches", mismatches}};
  r.verdict = mismatches == 0 ? Verdict::Pass : Verdict::Fail;
  return r;
}

CheckReport trivial_action_check(const FieldSpec& f, int n, int m) {
  CheckReport r;
  r.suite = "projline";
  r.name = "trivial_action";
  r.params = {{"e", f.e()}, {"n", n}, {"m", m}};
  const bool in_hyp = f.e() >= m && n >= m;
  const int level = n + m;
  const int prec = n + m + f.e();
  const auto pts = projective_line(f, level);
  std::int64_t elements = 0, moved = 0, diag_mismatch = 0;
  for_each_element(f, SubgroupDesc::knm(n, m).bounds(), prec, [&](const IntMat& h) {
    ++elements;
    const TruncElem a = h.a;
    const IntMat diag{a, f.zero(prec), f.zero(prec), a.inverse()};
    for (const auto& p : pts) {
      const ProjPoint q = act(h, p);
      if (q != p) {
        ++moved;
        r.add_witness("h=" + to_string(h) + " moves " + p.to_string() + " to " + q.to_string());
      }
      if (level > 0 && !p.x.is_unit() && act(diag, p) != q) {
        ++diag_mismatch;
        r.add_witness("h=" + to_string(h) + " and its diagonal part disagree on " + p.to_string());
      }
    }
  });
  r.counts = {{"elements", elements},
              {"points", static_cast<std::int64_t>(pts.size())},
              {"moved", moved},
              {"diagonal_mismatches", diag_mismatch}};
  const bool ok = moved == 0 && diag_mismatch == 0;
  if (in_hyp) {
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  } else {
    r.verdict = Verdict::OutOfHypothesis;
    r.notes.push_back(std::string("outside hypothesis m <= min(e, n); observed: ") +
                      (ok ? "trivial action" : "nontrivial action"));
  }
  return r;
}

CheckReport action_check(const FieldSpec& f, int n, const SweepOptions& opts) {
  CheckReport r;
  r.suite = "projline";
  r.name = "action";
  r.params = {{"e", f.e()}, {"n", n}};
  const auto pts = projective_line(f, n);
  std::set<std::pair<int, std::uint64_t>> distinct;
  for (const auto& p : pts) distinct.insert(point_key(p));
  const auto expected = expected_point_count(n);
  bool ok = static_cast<std::int64_t>(pts.size()) == expected &&
            distinct.size() == pts.size();
  if (!ok) r.add_witness("point count " + std::to_string(pts.size()) + " (distinct " +
                         std::to_string(distinct.size()) + "), expected " + std::to_string(expected));

  const int prec = std::max(n, 1);
  std::vector<IntMat> group;
  for_each_element(f, Bounds{}, prec, [&](const IntMat& g) { group.push_back(g); }, opts.cap);

  const ProjPoint base = n == 0 ? pts.front() : canonicalize_point(f, 1, 0, n);
  std::set<std::pair<int, std::uint64_t>> orbit;
  for (const auto& g : group) orbit.insert(point_key(act(g, base)));
  if (orbit != distinct) {
    ok = false;
    r.add_witness("orbit of [1:0] has " + std::to_string(orbit.size()) + " points");
  }

  const IntMat id = identity(f, prec);
  std::int64_t identity_failures = 0;
  for (const auto& p : pts)
    if (act(id, p) != p) ++identity_failures;

  std::int64_t triples = 0, compat_failures = 0;
  auto check = [&](const IntMat& g, const IntMat& h, const ProjPoint& p) {
    ++triples;
    if (act(g * h, p) != act(g, act(h, p))) {
      ++compat_failures;
      r.add_witness("act(gh,P) != act(g,act(h,P)) for g=" + to_string(g) + " h=" + to_string(h) + " P=" +
                    p.to_string());
    }
  };
  const auto gs = static_cast<std::int64_t>(group.size());
  const bool exhaustive = !opts.sampled && gs * gs * static_cast<std::int64_t>(pts.size()) <= 2'000'000;
  if (exhaustive) {
    for (const auto& g : group)
      for (const auto& h : group)
        for (const auto& p : pts) check(g, h, p);
  } else {
    Rng rng(opts.seed);
    const std::int64_t samples = std::min<std::int64_t>(opts.samples, 1000);
    for (std::int64_t s = 0; s < samples; ++s) {
      const auto& g = group[random_below(rng, group.size())];
      const auto& h = group[random_below(rng, group.size())];
      const auto& p = pts[random_below(rng, pts.size())];
      check(g, h, p);
    }
    r.counts["seed"] = static_cast<std::int64_t>(opts.seed);
  }
  r.counts["points"] = static_cast<std::int64_t>(pts.size());
  r.counts["expected_points"] = expected;
  r.counts["orbit_size"] = static_cast<std::int64_t>(orbit.size());
  r.counts["group_elements"] = gs;
  r.counts["identity_failures"] = identity_failures;
  r.counts["triples"] = triples;
  r.counts["compatibility_failures"] = compat_failures;
  r.counts["exhaustive"] = exhaustive ? 1 : 0;
  ok = ok && identity_failures == 0 && compat_failures == 0;
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return r;
}

}  // namespace twoadic
