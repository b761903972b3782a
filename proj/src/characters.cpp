#include "twoadic/characters.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "twoadic/random.hpp"

namespace twoadic {

namespace {

int log2_exact(std::int64_t d) {
  if (d <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(d)))
    fail(ErrorCode::Internal, "cyclic factor " + std::to_string(d) + " is not a power of two");
  return std::countr_zero(static_cast<std::uint64_t>(d));
}

DyadicRotation rotation(std::int64_t coord, std::int64_t factor) {
  if (factor == 1) return {};
  std::int64_t c = coord % factor;
  if (c < 0) c += factor;
  return DyadicRotation::make(c, log2_exact(factor));
}

CheckReport make_report(const char* suite, const char* name, const FieldSpec& f, int n, int m, int l) {
  CheckReport r;
  r.suite = suite;
  r.name = name;
  r.params = {{"e", f.e()}, {"n", n}, {"m", m}, {"l", l}};
  return r;
}

std::string conductor_note(const AdditiveCharacter& chi) {
  return "chi trivial on p^" + std::to_string(chi.conductor()) + ", nontrivial on p^" +
         std::to_string(chi.conductor() - 1) + " (value " + chi.certificate_below().to_string() + "), variant " +
         std::to_string(chi.variant());
}

int chi_depth(const FieldSpec& f, int n) { return n + f.e() + 2; }

}  // namespace

// ---------------------------------------------------------------------------

AdditiveCharacter::AdditiveCharacter(const FieldSpec& f, int depth, int conductor, int variant)
    : field_(&f), depth_(depth), conductor_(conductor), variant_(variant) {
  const int width = depth + conductor;
  if (depth < 0 || width < 1) fail(ErrorCode::InvalidArgument, "character domain is empty");
  if (width > 60) fail(ErrorCode::Overflow, "character domain too wide");

  // Generators pi^j (j < width) of o/p^width, relations 2 e_j = digits(2 pi^j).
  GroupPresentation pres;
  pres.generators = width;
  const TruncElem two = f.from_int(2, width);
  for (int j = 0; j < width; ++j) {
    std::vector<std::int64_t> row(static_cast<std::size_t>(width), 0);
    row[static_cast<std::size_t>(j)] += 2;
    const auto ds = (two * f.pi_power(j, width)).digits();
    for (int t = 0; t < width; ++t) row[static_cast<std::size_t>(t)] -= ds[static_cast<std::size_t>(t)];
    pres.relations.push_back(std::move(row));
  }
  smith_ = smith_normal_form(pres);
  if (!smith_.finite()) fail(ErrorCode::Internal, "o/p^N presented as an infinite group");

  const std::size_t g = smith_.factors.size();
  weights_.assign(g, 0);
  for (std::size_t t = 0; t < g; ++t) {
    const std::int64_t d = smith_.factors[t];
    weights_[t] = d == 1 ? 0 : (2 * static_cast<std::int64_t>(variant) + 1) % d;
  }
  auto generator_value = [&](std::size_t j) {
    DyadicRotation v;
    for (std::size_t t = 0; t < g; ++t) v += rotation(weights_[t] * smith_.V[j][t], smith_.factors[t]);
    return v;
  };
  // pi^(width-1) has order 2, so each summand of its value is 0 or 1/2;
  // dropping one nonzero summand toggles the total.
  const std::size_t top = static_cast<std::size_t>(width - 1);
  if (generator_value(top).is_zero()) {
    for (std::size_t t = 0; t < g; ++t)
      if (!rotation(weights_[t] * smith_.V[top][t], smith_.factors[t]).is_zero()) {
        weights_[t] = 0;
        break;
      }
  }
  for (std::size_t j = 0; j < static_cast<std::size_t>(width); ++j) digit_values_.push_back(generator_value(j));
  if (digit_values_[top].is_zero()) fail(ErrorCode::Internal, "could not make chi nontrivial below the conductor");
  for (int i = 0; i < f.e(); ++i)
    coeff_values_.push_back(i < width ? digit_values_[static_cast<std::size_t>(i)] : DyadicRotation{});
}

AdditiveCharacter build_character(const FieldSpec& f, int depth, int conductor, int variant) {
  return AdditiveCharacter(f, depth, conductor, variant);
}

DyadicRotation AdditiveCharacter::eval_domain(const TruncElem& y) const {
  const int w = width();
  if (y.precision() < w)
    fail(ErrorCode::PrecisionExhausted, "argument known to " + std::to_string(y.precision()) + " digits, need " +
                                            std::to_string(w));
  const TruncElem r = y.reduce(w);
  DyadicRotation v;
  for (int i = 0; i < field_->e(); ++i) {
    const std::uint64_t a = r.coeff(i);
    if (a != 0) v += coeff_values_[static_cast<std::size_t>(i)].times(a);
  }
  return v;
}

DyadicRotation AdditiveCharacter::eval_scaled(const TruncElem& v, int scale) const {
  const int shift = depth_ - scale;
  if (shift >= 0) return eval_domain(v.mul_pi(shift));
  if (!v.val_at_least(-shift))
    fail(ErrorCode::ShapeViolation, "argument outside p^-" + std::to_string(depth_));
  return eval_domain(v.div_pi(-shift));
}

DyadicRotation AdditiveCharacter::eval_by_digits(const TruncElem& y) const {
  const int w = width();
  const auto ds = y.reduce(w).digits();
  std::vector<std::int64_t> x(ds.begin(), ds.end());
  const auto coords = smith_.coordinates(x);
  DyadicRotation v;
  for (std::size_t t = 0; t < coords.size(); ++t) v += rotation(weights_[t] * coords[t], smith_.factors[t]);
  return v;
}

DyadicRotation AdditiveCharacter::certificate_below() const { return digit_values_.back(); }

DyadicRotation AdditiveCharacter::certificate_at() const {
  return eval_domain(field_->pi_power(width(), width()));
}

CheckReport character_check(const FieldSpec& f, int depth, int conductor, int variant) {
  CheckReport r;
  r.suite = "duality";
  r.name = "additive character";
  r.params = {{"e", f.e()}, {"depth", depth}, {"conductor", conductor}, {"variant", variant}};
  const AdditiveCharacter chi(f, depth, conductor, variant);
  const int w = chi.width();
  std::vector<TruncElem> dom;
  std::vector<DyadicRotation> val;
  std::int64_t digit_mismatch = 0;
  const bool exhaustive = w <= 8;
  Rng rng(1);
  const std::int64_t count = exhaustive ? (std::int64_t{1} << w) : 4096;
  for (std::int64_t i = 0; i < count; ++i) {
    const TruncElem y = exhaustive ? f.from_digits(static_cast<std::uint64_t>(i), 0, w) : random_elem(f, w, rng);
    dom.push_back(y);
    val.push_back(chi.eval_scaled(y, depth));
    if (val.back() != chi.eval_by_digits(y)) ++digit_mismatch;
  }
  std::int64_t pairs = 0, additive_fail = 0;
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = 0; j < dom.size(); ++j) {
      if (!exhaustive && j != (i * 7 + 3) % dom.size()) continue;
      ++pairs;
      if (chi.eval_scaled(dom[i] + dom[j], depth) != val[i] + val[j]) {
        ++additive_fail;
        r.add_witness("chi(x+y) != chi(x)+chi(y) at x=" + dom[i].to_string() + " y=" + dom[j].to_string());
      }
    }
  const bool cert = !chi.certificate_below().is_zero() && chi.certificate_at().is_zero();
  r.counts = {{"domain", count},
              {"pairs", pairs},
              {"additivity_failures", additive_fail},
              {"digit_path_mismatches", digit_mismatch},
              {"certificate_ok", cert ? 1 : 0},
              {"exhaustive", exhaustive ? 1 : 0}};
  r.notes.push_back(conductor_note(chi));
  r.verdict = additive_fail == 0 && digit_mismatch == 0 && cert ? Verdict::Pass : Verdict::Fail;
  return r;
}

// ---------------------------------------------------------------------------

FracMat DualParam::matrix() const {
  return {FracElem(scaled.a, scale), FracElem(scaled.b, scale), FracElem(scaled.c, scale), FracElem(scaled.d, scale)};
}

DualParam dual_param(const FieldSpec& f, int n, int m, int l, const QuotientCoords& b, int precision) {
  const int e = f.e();
  if (m > e || l > e) fail(ErrorCode::HypothesisViolated, "dual parameters need m, l <= e");
  DualParam p;
  p.n = n;
  p.m = m;
  p.l = l;
  p.b = b;
  p.scale = 2 * n + e;
  const TruncElem b1 = b.c1.lift(precision);
  p.scaled = {b1, b.c3.lift(precision) * f.pi_power(e - l, precision),
              b.c2.lift(precision) * f.pi_power(e - m, precision), -b1};
  return p;
}

FracMat dual_param_matrix(const FieldSpec& f, int n, int m, int l, const QuotientCoords& b) {
  return dual_param(f, n, m, l, b, f.working_precision()).matrix();
}

DyadicRotation eval_psi_scaled(const AdditiveCharacter& chi, const IntMat& t, int scale, const IntMat& x) {
  const FieldSpec& f = x.a.field();
  const TruncElem one = f.one(x.a.precision());
  const TruncElem z11 = x.a - one, z22 = x.d - one;
  const TruncElem tr = z11 * t.a + x.b * t.c + x.c * t.b + z22 * t.d;
  return chi.eval_scaled(tr, scale);
}

DyadicRotation eval_psi(const AdditiveCharacter& chi, const DualParam& a, const IntMat& x) {
  return eval_psi_scaled(chi, a.scaled, a.scale, x);
}

DyadicRotation eval_psi(const AdditiveCharacter& chi, const FracMat& a, const IntMat& x) {
  const IntMat z = x - identity(x.a.field(), precision_of(x));
  return chi.eval((to_frac(z) * a).trace());
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> coset_index(const std::vector<IntMat>& reps, const std::vector<IntMat>& rep_inverses,
                                       const SubgroupDesc& modulus, const IntMat& x) {
  const Bounds b = modulus.bounds();
  for (std::size_t k = 0; k < reps.size(); ++k)
    if (in_bounds(rep_inverses[k] * x, b)) return k;
  return std::nullopt;
}

CharacterOracle enumerate_characters_oracle(const FieldSpec& f, int n, int m, int l, int precision,
                                            std::int64_t cap) {
  CharacterOracle out;
  const SubgroupDesc g = SubgroupDesc::general(n, m, l);
  const SubgroupDesc h = SubgroupDesc::general(2 * n, m, l);
  const Bounds gb = g.bounds(), hb = h.bounds();
  const auto reps = theta_cosets(f, n, m, l, precision).representatives;
  std::vector<IntMat> inv;
  for (const auto& r : reps) inv.push_back(r.adjugate());
  const std::size_t q = reps.size();

  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j)
      if (in_bounds(inv[i] * reps[j], hb)) {
        out.well_defined = false;
        out.notes.push_back("representatives " + std::to_string(i) + " and " + std::to_string(j) + " share a coset");
      }

  // Sample of the modulus group used to probe that products of cosets do
  // not depend on the representatives.
  Rng rng(0x5eed);
  std::vector<IntMat> probes;
  for (int s = 0; s < 12; ++s) probes.push_back(random_element(f, hb, precision, rng));

  GroupPresentation pres;
  pres.generators = static_cast<int>(q);
  std::int64_t not_closed = 0, ambiguous = 0;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      const IntMat p = reps[i] * reps[j];
      if (!in_bounds(p, gb)) {
        ++not_closed;
        continue;
      }
      const auto k = coset_index(reps, inv, h, p);
      if (!k) {
        ++ambiguous;
        continue;
      }
      for (const auto& z : probes) {
        const auto k2 = coset_index(reps, inv, h, reps[i] * z * reps[j]);
        if (k2 != k) {
          ++ambiguous;
          break;
        }
      }
      std::vector<std::int64_t> row(q, 0);
      row[i] += 1;
      row[j] += 1;
      row[*k] -= 1;
      pres.relations.push_back(std::move(row));
    }
  if (not_closed > 0) {
    out.closed = false;
    out.notes.push_back(std::to_string(not_closed) + " products of representatives leave " + g.to_string());
  }
  if (ambiguous > 0) {
    out.well_defined = false;
    out.notes.push_back(std::to_string(ambiguous) + " products whose coset depends on the representatives");
  }
  {
    std::vector<std::int64_t> row(q, 0);
    const auto id = coset_index(reps, inv, h, identity(f, precision));
    if (id) {
      row[*id] = 1;
      pres.relations.push_back(std::move(row));
    }
  }

  const SmithForm sf = smith_normal_form(pres);
  if (!sf.finite()) {
    out.notes.push_back("presented group is infinite");
    return out;
  }
  for (auto d : sf.factors)
    if (d != 1) out.factors.push_back(d);
  const std::int64_t order = sf.order();
  out.quotient_order = order;
  if (order > cap) fail(ErrorCode::Overflow, "character group of order " + std::to_string(order) + " exceeds cap");

  std::vector<std::size_t> live;
  for (std::size_t t = 0; t < sf.factors.size(); ++t)
    if (sf.factors[t] != 1) live.push_back(t);
  for (std::int64_t idx = 0; idx < order; ++idx) {
    std::vector<std::int64_t> k(live.size());
    std::int64_t rest = idx;
    for (std::size_t u = 0; u < live.size(); ++u) {
      k[u] = rest % sf.factors[live[u]];
      rest /= sf.factors[live[u]];
    }
    std::vector<DyadicRotation> table(q);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t u = 0; u < live.size(); ++u)
        table[i] += rotation(k[u] * sf.V[i][live[u]], sf.factors[live[u]]);
    out.tables.push_back(std::move(table));
  }
  return out;
}

// ---------------------------------------------------------------------------

CheckReport verify_duality(const FieldSpec& f, int n, int m, int l, const SweepOptions& opts,
                           const DualityOptions& dopts) {
  CheckReport r = make_report("duality", "characters of G(n,m,l)/G(2n,m,l)", f, n, m, l);
  const int e = f.e();
  if (n < 1 || m < -1 || l < -1 || m > e || l > e) {
    r.verdict = Verdict::Refused;
    r.notes.push_back("refused: parametrization needs n >= 1 and -1 <= l, m <= e");
    return r;
  }
  const int minp = minimum_precision(e, n, m, l);
  const int prec = std::max(minp, dopts.precision.value_or(minp));
  const AdditiveCharacter chi(f, chi_depth(f, n), dopts.conductor, dopts.variant);
  r.notes.push_back(conductor_note(chi));

  const SubgroupDesc g = SubgroupDesc::general(n, m, l);
  const SubgroupDesc h = SubgroupDesc::general(2 * n, m, l);
  const auto reps = theta_cosets(f, n, m, l, prec).representatives;
  std::vector<IntMat> inv;
  for (const auto& x : reps) inv.push_back(x.adjugate());
  const std::size_t q = reps.size();

  std::vector<DualParam> params;
  for (const auto& b : all_quotient_coords(f, n, m, l)) params.push_back(dual_param(f, n, m, l, b, prec));
  const std::size_t np = params.size();

  std::vector<std::vector<DyadicRotation>> tables(np, std::vector<DyadicRotation>(q));
  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t k = 0; k < q; ++k) tables[a][k] = eval_psi(chi, params[a], reps[k]);

  // (i) homomorphism on all pairs of representatives, constancy on cosets.
  std::int64_t hom_checked = 0, hom_fail = 0;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      const IntMat p = reps[i] * reps[j];
      for (std::size_t a = 0; a < np; ++a) {
        ++hom_checked;
        if (eval_psi(chi, params[a], p) != tables[a][i] + tables[a][j]) {
          ++hom_fail;
          r.add_witness("psi_A(XY) != psi_A(X) psi_A(Y): A=" + to_string(params[a].matrix()) +
                        " X=" + to_string(reps[i]) + " Y=" + to_string(reps[j]));
        }
      }
    }
  std::int64_t coset_checked = 0, coset_fail = 0, unlocated = 0;
  auto constancy = [&](const IntMat& x) {
    const auto k = coset_index(reps, inv, h, x);
    if (!k) {
      ++unlocated;
      return;
    }
    for (std::size_t a = 0; a < np; ++a) {
      ++coset_checked;
      if (eval_psi(chi, params[a], x) != tables[a][*k]) {
        ++coset_fail;
        r.add_witness("psi_A not constant on a coset: A=" + to_string(params[a].matrix()) + " X=" + to_string(x) +
                      " rep=" + to_string(reps[*k]));
      }
    }
  };
  bool exhaustive = false;
  if (!opts.sampled) {
    try {
      for_each_element(f, g.bounds(), prec, constancy, std::min<std::int64_t>(opts.cap, std::int64_t{1} << 17));
      exhaustive = true;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::Overflow) throw;
      coset_checked = coset_fail = unlocated = 0;
    }
  }
  if (!exhaustive) {
    Rng rng(opts.seed);
    for (std::int64_t s = 0; s < opts.samples; ++s) constancy(random_element(f, g.bounds(), prec, rng));
    r.counts["seed"] = static_cast<std::int64_t>(opts.seed);
  }

  // (ii) injectivity. psi is additive in A, so psi_A depends only on the residue
  // class of b iff psi_D vanishes for D = pi^(n+j) in one b-coordinate, j < e
  // (a Z2-basis of the deeper lattice).
  std::int64_t lift_checked = 0, lift_fail = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < e; ++j) {
      const TruncElem z = f.zero(prec), s = f.pi_power(n + j, prec);
      IntMat d{z, z, z, z};
      if (i == 0) d = {s, z, z, -s};
      if (i == 1) d = {z, z, s * f.pi_power(e - m, prec), z};
      if (i == 2) d = {z, s * f.pi_power(e - l, prec), z, z};
      for (const auto& x : reps) {
        ++lift_checked;
        if (!eval_psi_scaled(chi, d, 2 * n + e, x).is_zero()) {
          ++lift_fail;
          r.add_witness("psi_A depends on the lift of b" + std::to_string(i + 1) + ": adding pi^" +
                        std::to_string(n + j) + " changes the value at X=" + to_string(x));
        }
      }
    }
  std::set<std::vector<DyadicRotation>> image(tables.begin(), tables.end());

  // (iii) surjectivity onto the independently enumerated character group.
  const CharacterOracle oracle = enumerate_characters_oracle(f, n, m, l, prec);
  for (const auto& note : oracle.notes) r.notes.push_back("oracle: " + note);
  std::set<std::vector<DyadicRotation>> oracle_set(oracle.tables.begin(), oracle.tables.end());
  std::int64_t missing = 0, foreign = 0;
  for (const auto& t : oracle_set)
    if (image.count(t) == 0) ++missing;
  for (const auto& t : image)
    if (oracle_set.count(t) == 0) ++foreign;

  // (iv) cardinalities.
  std::int64_t group_index = -1;
  try {
    const std::int64_t big = count_elements(f, g.bounds(), prec, opts.cap);
    const std::int64_t small = count_elements(f, h.bounds(), prec, opts.cap);
    if (small > 0 && big % small == 0) group_index = big / small;
  } catch (const Error& err) {
    if (err.code() != ErrorCode::Overflow) throw;
  }
  const auto dual_residues = static_cast<std::int64_t>(np);
  const auto index = static_cast<std::int64_t>(q);
  const auto oracle_count = static_cast<std::int64_t>(oracle.tables.size());

  r.counts = {{"precision", prec},
              {"chi_depth", chi.depth()},
              {"chi_conductor", chi.conductor()},
              {"chi_variant", chi.variant()},
              {"hom_checked", hom_checked},
              {"hom_failures", hom_fail},
              {"coset_checked", coset_checked},
              {"coset_failures", coset_fail},
              {"coset_unlocated", unlocated},
              {"coset_exhaustive", exhaustive ? 1 : 0},
              {"lift_checked", lift_checked},
              {"lift_failures", lift_fail},
              {"dual_residues", dual_residues},
              {"distinct_characters", static_cast<std::int64_t>(image.size())},
              {"oracle_characters", oracle_count},
              {"missing_from_image", missing},
              {"not_in_oracle", foreign},
              {"quotient_index", index},
              {"group_index", group_index},
              {"oracle_closed", oracle.closed ? 1 : 0},
              {"oracle_well_defined", oracle.well_defined ? 1 : 0}};
  if (!exhaustive) r.counts["seed"] = static_cast<std::int64_t>(opts.seed);

  const bool character = hom_fail == 0 && coset_fail == 0 && unlocated == 0;
  const bool injective = static_cast<std::int64_t>(image.size()) == dual_residues;
  const bool residue_defined = lift_fail == 0;
  const bool surjective = missing == 0 && foreign == 0 && oracle.closed && oracle.well_defined;
  const bool cardinal = index == oracle_count && index == dual_residues && index == group_index;
  r.counts["is_character"] = character ? 1 : 0;
  r.counts["residue_well_defined"] = residue_defined ? 1 : 0;
  r.counts["injective"] = injective ? 1 : 0;
  r.counts["surjective"] = surjective ? 1 : 0;
  r.counts["cardinalities_agree"] = cardinal ? 1 : 0;
  r.verdict = character && residue_defined && injective && surjective && cardinal ? Verdict::Pass : Verdict::Fail;
  return r;
}

CheckReport psi_product_check(const FieldSpec& f, int n, int m, int l, const SweepOptions& opts) {
  CheckReport r = make_report("duality", "psi_A psi_B = psi_(A+B)", f, n, m, l);
  const int e = f.e();
  if (n < 1 || m < -1 || l < -1 || m > e || l > e) {
    r.verdict = Verdict::Refused;
    r.notes.push_back("refused: parametrization needs n >= 1 and -1 <= l, m <= e");
    return r;
  }
  const int prec = minimum_precision(e, n, m, l);
  const AdditiveCharacter chi(f, chi_depth(f, n), 0, 0);
  const auto reps = theta_cosets(f, n, m, l, prec).representatives;
  std::vector<DualParam> params;
  for (const auto& b : all_quotient_coords(f, n, m, l)) params.push_back(dual_param(f, n, m, l, b, prec));

  std::int64_t checked = 0, failures = 0;
  auto check = [&](const DualParam& a, const DualParam& b) {
    const IntMat sum = a.scaled + b.scaled;
    const IntMat diff = a.scaled - b.scaled;
    for (const auto& x : reps) {
      ++checked;
      const DyadicRotation pa = eval_psi(chi, a, x), pb = eval_psi(chi, b, x);
      if (pa + pb != eval_psi_scaled(chi, sum, a.scale, x) || pa - pb != eval_psi_scaled(chi, diff, a.scale, x)) {
        ++failures;
        r.add_witness("A=" + to_string(a.matrix()) + " B=" + to_string(b.matrix()) + " X=" + to_string(x));
      }
    }
  };
  const auto np = params.size();
  if (!opts.sampled && np * np <= 4096) {
    for (const auto& a : params)
      for (const auto& b : params) check(a, b);
  } else {
    Rng rng(opts.seed);
    for (int s = 0; s < 256; ++s) check(params[random_below(rng, np)], params[random_below(rng, np)]);
    r.counts["seed"] = static_cast<std::int64_t>(opts.seed);
  }
  r.counts["precision"] = prec;
  r.counts["checked"] = checked;
  r.counts["failures"] = failures;
  r.verdict = failures == 0 ? Verdict::Pass : Verdict::Fail;
  return r;
}

CheckReport equivariance_check(const FieldSpec& f, int n, int m, int l, const SweepOptions& opts) {
  CheckReport r = make_report("duality", "equivariance psi_A(X^g) = psi_(A^g)(X)", f, n, m, l);
  const int e = f.e();
  if (n < 1 || m < -1 || l < -1 || m > e || l > e) {
    r.verdict = Verdict::Refused;
    r.notes.push_back("refused: parametrization needs n >= 1 and -1 <= l, m <= e");
    return r;
  }
  const int prec = minimum_precision(e, n, m, l);
  const AdditiveCharacter chi(f, chi_depth(f, n), 0, 0);
  const auto reps = theta_cosets(f, n, m, l, prec).representatives;
  std::vector<DualParam> params;
  for (const auto& b : all_quotient_coords(f, n, m, l)) params.push_back(dual_param(f, n, m, l, b, prec));

  std::vector<std::pair<std::string, IntMat>> gs;
  const TruncElem three = f.from_int(3, prec);
  gs.emplace_back("w", int_mat(f, prec, 0, 1, -1, 0));
  gs.emplace_back("upper unipotent", int_mat(f, prec, 1, 1, 0, 1));
  gs.emplace_back("lower unipotent", int_mat(f, prec, 1, 0, 1, 1));
  gs.emplace_back("diag(3,1/3)", IntMat{three, f.zero(prec), f.zero(prec), three.inverse()});
  if (reps.size() > 1) {
    gs.emplace_back("subgroup element", reps[1]);
    gs.emplace_back("subgroup element", reps.back());
  }
  Rng rng(opts.seed);
  for (int s = 0; s < 20; ++s) gs.emplace_back("random", random_element(f, Bounds{}, prec, rng));

  const Bounds same = SubgroupDesc::general(n, m, l).bounds();
  const Bounds swapped = SubgroupDesc::general(n, l, m).bounds();
  auto dual_in = [&](const IntMat& t, int mm, int ll) {
    return t.b.val_at_least(e - ll) && t.c.val_at_least(e - mm);
  };

  std::int64_t checked = 0, mismatches = 0, literal_mismatches = 0, undefined = 0;
  std::int64_t x_same = 0, x_swapped = 0, x_other = 0, a_same = 0, a_swapped = 0, a_other = 0;
  for (const auto& [label, g] : gs) {
    const IntMat ginv = g.adjugate();
    std::vector<IntMat> conj_x;
    for (const auto& x : reps) {
      const IntMat xg = ginv * x * g;
      conj_x.push_back(xg);
      if (in_bounds(xg, same)) ++x_same;
      else if (in_bounds(xg, swapped)) ++x_swapped;
      else ++x_other;
    }
    for (const auto& a : params) {
      const IntMat tg = g * a.scaled * ginv;     // A^g = g A g^-1
      const IntMat tlit = ginv * a.scaled * g;   // g^-1 A g
      if (dual_in(tg, m, l)) ++a_same;
      else if (dual_in(tg, l, m)) ++a_swapped;
      else ++a_other;
      for (std::size_t k = 0; k < reps.size(); ++k) {
        try {
          ++checked;
          const DyadicRotation lhs = eval_psi_scaled(chi, a.scaled, a.scale, conj_x[k]);
          const DyadicRotation rhs = eval_psi_scaled(chi, tg, a.scale, reps[k]);
          if (lhs != rhs) {
            ++mismatches;
            r.add_witness(label + ": g=" + to_string(g) + " A=" + to_string(a.matrix()) + " X=" + to_string(reps[k]));
          }
          if (lhs != eval_psi_scaled(chi, tlit, a.scale, reps[k])) ++literal_mismatches;
        } catch (const Error& err) {
          if (err.code() != ErrorCode::ShapeViolation) throw;
          ++undefined;
        }
      }
    }
  }
  r.counts = {{"precision", prec},
              {"group_elements", static_cast<std::int64_t>(gs.size())},
              {"checked", checked},
              {"mismatches", mismatches},
              {"undefined", undefined},
              {"literal_convention_mismatches", literal_mismatches},
              {"conjugate_x_in_shape", x_same},
              {"conjugate_x_in_swapped_shape", x_swapped},
              {"conjugate_x_elsewhere", x_other},
              {"conjugate_a_in_shape", a_same},
              {"conjugate_a_in_swapped_shape", a_swapped},
              {"conjugate_a_elsewhere", a_other},
              {"seed", static_cast<std::int64_t>(opts.seed)}};
  r.notes.push_back("A^g = g A g^-1 (contragredient to X^g = g^-1 X g)");
  r.verdict = mismatches == 0 && undefined == 0 ? Verdict::Pass : Verdict::Fail;
  return r;
}

}  // namespace twoadic
