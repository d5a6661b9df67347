#include "ringstab/criteria.hpp"

#include <algorithm>
#include <cassert>

#include "ringstab/errors.hpp"

namespace ringstab {

Matrix stacked_T(const Plant& p) {
  const Ring& ring = p.ring();
  int m = p.inputs(), n = p.outputs();
  Matrix t(ring, m + n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) t.set(i, j, p.N().at(i, j));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t.set(n + i, j, p.D().at(i, j));
  return t;
}

Matrix stacked_W(const Plant& p) {
  Plant q = p.with_left_fraction();
  const Ring& ring = q.ring();
  int m = q.inputs(), n = q.outputs();
  Matrix w(ring, n, m + n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) w.set(i, j, q.N_left().at(i, j));
    for (int j = 0; j < n; ++j) w.set(i, m + j, q.D_left().at(i, j));
  }
  return w;
}

std::pair<Ideal, std::map<IndexSet, RingElement>> minor_ideal(const Plant& p) {
  Matrix t = stacked_T(p);
  auto minors = full_size_minors(t, p.inputs());
  std::vector<RingElement> gens;
  for (const auto& [I, v] : minors) gens.push_back(v);
  return {Ideal(p.ring(), std::move(gens)), std::move(minors)};
}

std::pair<Ideal, std::map<IndexSet, RingElement>> minor_ideal_W(const Plant& p) {
  Matrix w = stacked_W(p);
  auto minors = full_size_minors(transpose(w), p.outputs());
  std::vector<RingElement> gens;
  for (const auto& [J, v] : minors) gens.push_back(v);
  return {Ideal(p.ring(), std::move(gens)), std::move(minors)};
}

namespace {

std::string zero_one_refutation(const Ideal& sum) {
  // Produces a human-readable certificate that 1 is not a member.
  const Ring& ring = sum.ring();
  auto gens = sum.canonical_generators();
  switch (ring->kind) {
    case RingKind::Integers: {
      if (gens.empty()) return "the quotient sum is the zero ideal";
      return "every generator is divisible by " + gens[0].to_string() +
             ", which does not divide 1";
    }
    case RingKind::Rationals:
      return "the quotient sum is the zero ideal";
    case RingKind::QuadraticSqrtMinus5: {
      std::string s = "1 is outside the coordinate lattice spanned by {";
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) s += ", ";
        s += gens[i].to_string();
      }
      return s + "}";
    }
    default: {
      bool vanish = !gens.empty();
      for (const auto& g : gens)
        if (sgn(g.as_poly().constant_term()) != 0) vanish = false;
      if (vanish)
        return "every generator vanishes at the origin while 1 does not";
      return "the normal form of 1 modulo the canonical basis is nonzero";
    }
  }
}

struct QuotientSumData {
  std::vector<Ideal> quotients;               // aligned with keys
  std::vector<std::vector<RingElement>> gens; // canonical, per quotient
  Ideal sum;
  std::optional<std::vector<RingElement>> one_cofactors;
};

// Shared core of the quotient-coprimeness tests: quotients ((a_i) : whole) and the
// expression of 1 over the concatenated canonical generators.
QuotientSumData sum_of_quotients(const std::vector<RingElement>& elems,
                                 const Ideal& whole) {
  const Ring& ring = whole.ring();
  QuotientSumData data{{}, {}, Ideal(ring, {}), std::nullopt};
  std::vector<RingElement> all;
  for (const auto& a : elems) {
    Ideal q = ideal_quotient(Ideal(ring, {a}), whole);
    data.gens.push_back(q.canonical_generators());
    for (const auto& g : data.gens.back()) all.push_back(g);
    data.quotients.push_back(std::move(q));
  }
  data.sum = Ideal(ring, all);
  data.one_cofactors = ideal_contains_one(data.sum);
  return data;
}

}  // namespace

StabilizabilityReport quotient_sum(const Plant& p) {
  StabilizabilityReport report(p.ring());
  auto [t_ideal, minors] = minor_ideal(p);
  report.minor_ideal = t_ideal;
  report.minors = minors;

  std::vector<IndexSet> keys;
  std::vector<RingElement> elems;
  for (const auto& [I, tI] : minors) {
    keys.push_back(I);
    elems.push_back(tI);
  }
  QuotientSumData data = sum_of_quotients(elems, t_ideal);
  for (std::size_t i = 0; i < keys.size(); ++i)
    report.quotient_ideals.emplace(keys[i], data.quotients[i]);

  if (data.one_cofactors) {
    report.verdict = true;
    std::vector<WitnessTerm> witness;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      RingElement x = RingElement::zero(p.ring());
      for (const auto& g : data.gens[i]) {
        const RingElement& c = (*data.one_cofactors)[pos];
        if (!is_zero(c)) {
          x = add(x, mul(c, g));
          report.witness_cofactors.emplace_back(c, g);
        }
        ++pos;
      }
      if (!is_zero(x))
        witness.push_back({keys[i], x, RingElement::one(p.ring())});
    }
    report.witness = std::move(witness);
  } else {
    report.negative_certificate = zero_one_refutation(data.sum);
  }
  return report;
}

StabilizabilityReport is_stabilizable(const Plant& p) {
  return quotient_sum(p);
}

ProjectivityResult is_ideal_projective(const std::vector<RingElement>& gens,
                                       const Ring& ring) {
  ProjectivityResult result;
  Ideal whole(ring, gens);
  if (whole.is_zero_ideal()) {
    // The zero module is projective; the quotient convention gives (1).
    result.projective = true;
    return result;
  }
  QuotientSumData data = sum_of_quotients(gens, whole);
  if (!data.one_cofactors) return result;
  result.projective = true;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    RingElement x = RingElement::zero(ring);
    for (const auto& g : data.gens[i]) {
      x = add(x, mul((*data.one_cofactors)[pos], g));
      ++pos;
    }
    if (!is_zero(x)) result.witness.emplace_back(x, gens[i]);
  }
  return result;
}

ReducedMinors reduced_minors(const Plant& p) {
  const Ring& ring = p.ring();
  if (!ring->is_ufd())
    fail(ErrorCode::UnsupportedRing,
         "reduced minors need a unique factorization domain, not " +
             ring->describe());
  auto [t_ideal, minors] = minor_ideal(p);
  RingElement d = RingElement::zero(ring);
  for (const auto& [I, tI] : minors) d = gcd(d, tI);
  ReducedMinors out{d, {}};
  for (const auto& [I, tI] : minors) {
    auto q = exact_divide(tI, d);
    assert(q.has_value());
    out.reduced.emplace(I, *q);
  }
  return out;
}

bool reduced_minors_generate(const Plant& p) {
  ReducedMinors rm = reduced_minors(p);
  std::vector<RingElement> gens;
  for (const auto& [I, aI] : rm.reduced) gens.push_back(aI);
  bool generate = ideal_contains_one(Ideal(p.ring(), gens)).has_value();
  // Consistency of the two formulations: generating reduced minors are
  // equivalent to
  // the minor ideal being principal.
  auto [t_ideal, minors] = minor_ideal(p);
  PrincipalityResult pr = principal_generator(t_ideal);
  if (pr.generator.has_value() != generate)
    fail(ErrorCode::Internal,
         "reduced-minor test and principality test disagree");
  return generate;
}

Plant scalar_denominator_form(const Plant& p) {
  RingElement d = det(p.D());
  Matrix n_scaled = mat_mul(p.N(), adjugate(p.D()));
  Matrix d_scaled = mat_scale(d, Matrix::identity(p.ring(), p.inputs()));
  return Plant(n_scaled, d_scaled, p.causality_ideal());
}

namespace {

bool is_scalar_denominator(const Plant& p) {
  const Matrix& d = p.D();
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j) {
      if (i != j && !is_zero(d.at(i, j))) return false;
      if (i == j && !(d.at(i, j) == d.at(0, 0))) return false;
    }
  return true;
}

// Elementary factor of an (m+n) x k stacked matrix with respect to I: the
// squarefree part of the lcm of the reduced denominators of M (Delta_I M)^{-1}.
RingElement elementary_factor_of_stack(const Matrix& stack, const IndexSet& I) {
  const Ring& ring = stack.ring();
  Matrix sel = select_rows(stack, I);
  RingElement tI = det(sel);
  if (is_zero(tI))
    fail(ErrorCode::SingularSelection,
         "selection " + I.to_string() + " is singular");
  Matrix num = mat_mul(stack, adjugate(sel));
  RingElement lcm = RingElement::one(ring);
  for (int i = 0; i < num.rows(); ++i)
    for (int j = 0; j < num.cols(); ++j) {
      FractionElement e(num.at(i, j), tI);  // reduced to lowest terms
      if (e.is_zero() || is_unit(e.den())) continue;
      RingElement den = e.den();
      RingElement g = gcd(lcm, den);
      lcm = mul(*exact_divide(lcm, g), den);
    }
  return squarefree_part(lcm);
}

}  // namespace

RingElement elementary_factor(const Plant& p, const IndexSet& I) {
  if (!p.ring()->is_ufd())
    fail(ErrorCode::UnsupportedRing,
         "elementary factors need a unique factorization domain, not " +
             p.ring()->describe());
  Plant sp = is_scalar_denominator(p) ? p : scalar_denominator_form(p);
  return elementary_factor_of_stack(stacked_T(sp), I);
}

bool elementary_factors_coprime(const Plant& p) {
  if (!p.ring()->is_ufd())
    fail(ErrorCode::UnsupportedRing,
         "elementary factors need a unique factorization domain, not " +
             p.ring()->describe());
  const Ring& ring = p.ring();
  Plant sp = is_scalar_denominator(p) ? p : scalar_denominator_form(p);
  Matrix t = stacked_T(sp);
  Matrix wt = transpose(stacked_W(sp));
  std::vector<RingElement> fs, gs;
  for (const auto& [I, tI] : full_size_minors(t, sp.inputs()))
    if (!is_zero(tI)) fs.push_back(elementary_factor_of_stack(t, I));
  for (const auto& [J, wJ] : full_size_minors(wt, sp.outputs()))
    if (!is_zero(wJ)) gs.push_back(elementary_factor_of_stack(wt, J));
  std::vector<RingElement> products;
  for (const auto& f : fs)
    for (const auto& g : gs) products.push_back(mul(f, g));
  return ideal_contains_one(Ideal(ring, products)).has_value();
}

Ideal generalized_elementary_factor(const Plant& p, const IndexSet& I) {
  const Ring& ring = p.ring();
  Matrix t = stacked_T(p);
  Matrix sel = select_rows(t, I);
  RingElement tI = det(sel);
  if (is_zero(tI)) return Ideal(ring, {});  // rank argument: only 0 qualifies
  Matrix tprime = mat_mul(t, adjugate(sel));
  std::vector<RingElement> entries;
  for (int i = 0; i < tprime.rows(); ++i)
    for (int j = 0; j < tprime.cols(); ++j)
      if (!is_zero(tprime.at(i, j))) entries.push_back(tprime.at(i, j));
  return ideal_quotient(Ideal(ring, {tI}), Ideal(ring, entries));
}

bool gef_sum_is_ring(const Plant& p) {
  std::vector<RingElement> gens;
  for (const auto& I : all_index_sets(p.inputs(), p.inputs() + p.outputs())) {
    Ideal lambda = generalized_elementary_factor(p, I);
    for (const auto& g : lambda.canonical_generators()) gens.push_back(g);
  }
  return ideal_contains_one(Ideal(p.ring(), gens)).has_value();
}

bool gef_membership_sound(const Plant& p, const IndexSet& I,
                          const RingElement& lambda) {
  Matrix t = stacked_T(p);
  Matrix sel = select_rows(t, I);
  RingElement tI = det(sel);
  if (is_zero(tI)) return is_zero(lambda);
  Matrix tprime = mat_mul(t, adjugate(sel));
  Matrix k(p.ring(), tprime.rows(), tprime.cols());
  for (int i = 0; i < tprime.rows(); ++i)
    for (int j = 0; j < tprime.cols(); ++j) {
      auto q = exact_divide(mul(lambda, tprime.at(i, j)), tI);
      if (!q) return false;
      k.set(i, j, *q);
    }
  Matrix lhs = mat_scale(lambda, t);
  Matrix rhs = mat_mul(k, select_rows(t, I));
  return lhs == rhs;
}

CrossCheckReport radical_cross_checks(const Plant& p, int radical_bound) {
  CrossCheckReport report;
  report.radical_bound = radical_bound;
  const Ring& ring = p.ring();
  bool ufd = ring->is_ufd();
  // UFD relations are stated for the scalar-denominator form; compute
  // everything on one consistent T.
  Plant sp = ufd && !is_scalar_denominator(p) ? scalar_denominator_form(p) : p;
  auto [t_ideal, minors] = minor_ideal(sp);

  std::optional<ReducedMinors> rm;
  if (ufd) rm = reduced_minors(sp);

  auto add_item = [&](const IndexSet& I, const std::string& check,
                      const std::string& status, const std::string& detail) {
    if (status == "violation") report.all_ok = false;
    if (status == "inconclusive") report.inconclusive = true;
    report.items.push_back({I, check, status, detail});
  };

  for (const auto& [I, tI] : minors) {
    Ideal quotient = ideal_quotient(Ideal(ring, {tI}), t_ideal);
    Ideal lambda = generalized_elementary_factor(sp, I);

    // Mutual radical membership between Lambda_PI and ((t_I) : t).
    bool ok = true;
    bool inconclusive = false;
    for (const auto& g : lambda.canonical_generators()) {
      RadicalDecision d = radical_membership(g, quotient, radical_bound);
      if (!d.member) {
        if (d.certified) ok = false;
        else inconclusive = true;
      }
    }
    for (const auto& g : quotient.canonical_generators()) {
      RadicalDecision d = radical_membership(g, lambda, radical_bound);
      if (!d.member) {
        if (d.certified) ok = false;
        else inconclusive = true;
      }
    }
    if (!ok)
      add_item(I, "radical(Lambda) = radical((t_I):t)", "violation",
               "a generator fails mutual radical membership");
    else if (inconclusive)
      add_item(I, "radical(Lambda) = radical((t_I):t)", "inconclusive",
               "power search exhausted at bound " +
                   std::to_string(radical_bound));
    else
      add_item(I, "radical(Lambda) = radical((t_I):t)", "ok", "");

    if (ufd) {
      // (a_I) = ((t_I) : t) exactly.
      const RingElement& aI = rm->reduced.at(I);
      Ideal principal_aI(ring, {aI});
      if (ideal_equals(principal_aI, quotient))
        add_item(I, "(a_I) = ((t_I):t)", "ok", "");
      else
        add_item(I, "(a_I) = ((t_I):t)", "violation",
                 "(" + aI.to_string() + ") differs from the quotient");

      // squarefree(f_I) associate to squarefree(a_I), on nonsingular I.
      if (!is_zero(tI)) {
        RingElement fI = elementary_factor(sp, I);
        if (is_zero(aI)) {
          add_item(I, "radical(f_I) ~ radical(a_I)", "violation",
                   "a_I is zero for a nonsingular selection");
        } else {
          RingElement sf = squarefree_part(fI);
          RingElement sa = squarefree_part(aI);
          if (associates(sf, sa))
            add_item(I, "radical(f_I) ~ radical(a_I)", "ok", "");
          else
            add_item(I, "radical(f_I) ~ radical(a_I)", "violation",
                     sf.to_string() + " vs " + sa.to_string());
        }
      }
    }
  }
  return report;
}

IsoCertificate ideal_iso_certificate(const Ideal& a, const Ideal& b) {
  IsoCertificate cert;
  PrincipalityResult pa = principal_generator(a);
  PrincipalityResult pb = principal_generator(b);
  if (pa.generator && pb.generator) {
    if (is_zero(*pa.generator) && is_zero(*pb.generator)) {
      cert.verdict = IsoVerdict::Isomorphic;
      cert.detail = "both zero ideals";
      return cert;
    }
    if (!is_zero(*pa.generator) && !is_zero(*pb.generator) &&
        associates(*pa.generator, *pb.generator)) {
      cert.verdict = IsoVerdict::Isomorphic;
      cert.detail = "principal with associate generators " +
                    pa.generator->to_string() + " ~ " +
                    pb.generator->to_string();
      return cert;
    }
  }
  // Scaling search over generator ratios: c*a == d*b for nonzerodivisors.
  auto scaled = [](const Ideal& ideal, const RingElement& c) {
    std::vector<RingElement> gens;
    for (const auto& g : ideal.generators()) gens.push_back(mul(c, g));
    return Ideal(ideal.ring(), gens);
  };
  for (const auto& c : b.canonical_generators()) {
    if (is_zero(c)) continue;
    for (const auto& d : a.canonical_generators()) {
      if (is_zero(d)) continue;
      if (ideal_equals(scaled(a, c), scaled(b, d))) {
        cert.verdict = IsoVerdict::Isomorphic;
        cert.detail = "(" + c.to_string() + ")*a = (" + d.to_string() + ")*b";
        return cert;
      }
    }
  }
  cert.detail = "no associate or scaling certificate found";
  return cert;
}

}  // namespace ringstab
