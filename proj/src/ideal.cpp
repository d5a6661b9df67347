#include "ringstab/ideal.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>

#include "ringstab/errors.hpp"

namespace ringstab {

struct Ideal::Cache {
  std::once_flag once;

  // Integers: g = sum cof[j]*gens[j], g >= 0.
  mpz_class z_gen;
  std::vector<mpz_class> z_cof;

  // Rationals.
  bool q_one = false;
  std::size_t q_which = 0;

  // Quadratic lattice, rank 0 or 2: rows (d1, 0) and (c, d2) with
  // d1, d2 > 0 and 0 <= c < d1; cofactors express the rows over gens.
  int lat_rank = 0;
  mpz_class d1, c, d2;
  std::vector<RingElement> cof_row1, cof_row2;

  // Polynomial kinds; for the cuspidal kind the basis is over the lifted
  // generator list gens + {u^3 - v^2}.
  GroebnerBasis gb;
};

namespace {

void require_same_ring(const Ideal& a, const Ideal& b) {
  if (!same_ring(a.ring(), b.ring()))
    fail(ErrorCode::SpecMismatch, "ideals over different rings");
}

std::vector<Poly> lifted_polys(const Ideal& ideal) {
  std::vector<Poly> ps;
  for (const auto& g : ideal.generators()) ps.push_back(g.as_poly());
  if (ideal.ring()->kind == RingKind::CuspidalCubicQuotient)
    ps.push_back(cuspidal_relation());
  return ps;
}

void compute_cache(const Ring& ring, const std::vector<RingElement>& gens,
                   Ideal::Cache& cache) {
  switch (ring->kind) {
    case RingKind::Integers: {
      mpz_class g = 0;
      std::vector<mpz_class> cof(gens.size(), 0);
      for (std::size_t j = 0; j < gens.size(); ++j) {
        const mpz_class& a = gens[j].as_integer();
        if (sgn(a) == 0) continue;
        if (sgn(g) == 0) {
          g = abs(a);
          cof.assign(gens.size(), 0);
          cof[j] = sgn(a);
          continue;
        }
        mpz_class ng, s, t;
        mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                   g.get_mpz_t(), a.get_mpz_t());
        for (auto& x : cof) x *= s;
        cof[j] += t;
        g = ng;
      }
      cache.z_gen = g;
      cache.z_cof = std::move(cof);
      return;
    }
    case RingKind::Rationals: {
      for (std::size_t j = 0; j < gens.size(); ++j) {
        if (!is_zero(gens[j])) {
          cache.q_one = true;
          cache.q_which = j;
          return;
        }
      }
      cache.q_one = false;
      return;
    }
    case RingKind::QuadraticSqrtMinus5: {
      // Lattice spanned by g_j and s*g_j, canonicalized with the column
      // order (b, a) so the basis reads {d1, c + d2*s}.
      ZMat span;
      for (const auto& g : gens) {
        const QuadInt& q = g.as_quadratic();
        span.push_back({q.b, q.a});            // g
        span.push_back({q.a, mpz_class(-5) * q.b});  // s*g
      }
      HnfResult hr = zmat_hnf(span);
      if (hr.rank == 0) {
        cache.lat_rank = 0;
        return;
      }
      if (hr.rank != 2)
        fail(ErrorCode::Internal, "quadratic ideal lattice of rank 1");
      cache.lat_rank = 2;
      cache.d2 = hr.h[0][0];
      cache.c = hr.h[0][1];
      cache.d1 = hr.h[1][1];
      auto fold = [&](const ZRow& urow) {
        std::vector<RingElement> cof;
        for (std::size_t j = 0; j < gens.size(); ++j)
          cof.push_back(RingElement::quadratic(ring, urow[2 * j],
                                               urow[2 * j + 1]));
        return cof;
      };
      cache.cof_row2 = fold(hr.u[0]);  // c + d2*s
      cache.cof_row1 = fold(hr.u[1]);  // d1
      return;
    }
    case RingKind::PolynomialOverRationals: {
      std::vector<Poly> ps;
      for (const auto& g : gens) ps.push_back(g.as_poly());
      cache.gb = groebner(ps, MonoOrder{}, true);
      return;
    }
    case RingKind::CuspidalCubicQuotient: {
      std::vector<Poly> ps;
      for (const auto& g : gens) ps.push_back(g.as_poly());
      ps.push_back(cuspidal_relation());
      cache.gb = groebner(ps, MonoOrder{}, true);
      return;
    }
  }
}

}  // namespace

Ideal::Ideal(Ring ring, std::vector<RingElement> gens)
    : ring_(std::move(ring)),
      gens_(std::move(gens)),
      cache_(std::make_shared<Cache>()) {
  for (const auto& g : gens_)
    if (!same_ring(g.ring(), ring_))
      fail(ErrorCode::SpecMismatch, "generator from a different ring");
}

const Ideal::Cache& Ideal::canon() const {
  std::call_once(cache_->once,
                 [this] { compute_cache(ring_, gens_, *cache_); });
  return *cache_;
}

std::vector<RingElement> Ideal::canonical_generators() const {
  const Cache& c = canon();
  std::vector<RingElement> out;
  switch (ring_->kind) {
    case RingKind::Integers:
      if (sgn(c.z_gen) != 0) out.push_back(RingElement::from_mpz(ring_, c.z_gen));
      break;
    case RingKind::Rationals:
      if (c.q_one) out.push_back(RingElement::one(ring_));
      break;
    case RingKind::QuadraticSqrtMinus5:
      if (c.lat_rank == 2) {
        out.push_back(RingElement::quadratic(ring_, c.d1, 0));
        out.push_back(RingElement::quadratic(ring_, c.c, c.d2));
      }
      break;
    case RingKind::PolynomialOverRationals:
      for (const auto& e : c.gb.elems)
        out.push_back(RingElement::polynomial(ring_, e.p));
      break;
    case RingKind::CuspidalCubicQuotient:
      for (const auto& e : c.gb.elems) {
        Poly nf = cuspidal_reduce(e.p);
        if (!nf.is_zero()) out.push_back(RingElement::polynomial(ring_, nf));
      }
      break;
  }
  return out;
}

bool Ideal::is_zero_ideal() const {
  const Cache& c = canon();
  switch (ring_->kind) {
    case RingKind::Integers: return sgn(c.z_gen) == 0;
    case RingKind::Rationals: return !c.q_one;
    case RingKind::QuadraticSqrtMinus5: return c.lat_rank == 0;
    default: {
      for (const auto& e : c.gb.elems) {
        if (ring_->kind == RingKind::CuspidalCubicQuotient) {
          if (!cuspidal_reduce(e.p).is_zero()) return false;
        } else if (!e.p.is_zero()) {
          return false;
        }
      }
      return true;
    }
  }
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  std::vector<RingElement> gens = a.generators();
  for (const auto& g : b.generators()) gens.push_back(g);
  return Ideal(a.ring(), std::move(gens));
}

Ideal ideal_sum(const std::vector<Ideal>& parts) {
  if (parts.empty()) fail(ErrorCode::SpecMismatch, "empty ideal sum");
  Ideal acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = ideal_sum(acc, parts[i]);
  return acc;
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  std::vector<RingElement> gens;
  for (const auto& x : a.generators())
    for (const auto& y : b.generators()) gens.push_back(mul(x, y));
  return Ideal(a.ring(), std::move(gens));
}

std::optional<std::vector<RingElement>> ideal_membership_cofactors(
    const RingElement& f, const Ideal& ideal) {
  if (!same_ring(f.ring(), ideal.ring()))
    fail(ErrorCode::SpecMismatch, "ideal membership across rings");
  const Ring& ring = ideal.ring();
  const Ideal::Cache& c = ideal.canon();
  const auto& gens = ideal.generators();
  switch (ring->kind) {
    case RingKind::Integers: {
      std::vector<RingElement> cof;
      if (sgn(c.z_gen) == 0) {
        if (sgn(f.as_integer()) != 0) return std::nullopt;
        for (std::size_t j = 0; j < gens.size(); ++j)
          cof.push_back(RingElement::zero(ring));
        return cof;
      }
      mpz_class q, r;
      mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), f.as_integer().get_mpz_t(),
                  c.z_gen.get_mpz_t());
      if (sgn(r) != 0) return std::nullopt;
      for (std::size_t j = 0; j < gens.size(); ++j)
        cof.push_back(RingElement::from_mpz(ring, q * c.z_cof[j]));
      return cof;
    }
    case RingKind::Rationals: {
      std::vector<RingElement> cof(gens.size(), RingElement::zero(ring));
      if (is_zero(f)) return cof;
      if (!c.q_one) return std::nullopt;
      cof[c.q_which] = RingElement::from_mpq(
          ring, f.as_rational() / gens[c.q_which].as_rational());
      return cof;
    }
    case RingKind::QuadraticSqrtMinus5: {
      std::vector<RingElement> cof(gens.size(), RingElement::zero(ring));
      if (is_zero(f)) return cof;
      if (c.lat_rank == 0) return std::nullopt;
      const QuadInt& q = f.as_quadratic();
      // beta rows of (c, d2), alpha rows of (d1, 0).
      mpz_class beta_r, beta_q;
      mpz_tdiv_qr(beta_q.get_mpz_t(), beta_r.get_mpz_t(), q.b.get_mpz_t(),
                  c.d2.get_mpz_t());
      if (sgn(beta_r) != 0) return std::nullopt;
      mpz_class rest = q.a - beta_q * c.c;
      mpz_class alpha_q, alpha_r;
      mpz_tdiv_qr(alpha_q.get_mpz_t(), alpha_r.get_mpz_t(), rest.get_mpz_t(),
                  c.d1.get_mpz_t());
      if (sgn(alpha_r) != 0) return std::nullopt;
      RingElement alpha = RingElement::quadratic(ring, alpha_q, 0);
      RingElement beta = RingElement::quadratic(ring, beta_q, 0);
      for (std::size_t j = 0; j < gens.size(); ++j)
        cof[j] = add(mul(alpha, c.cof_row1[j]), mul(beta, c.cof_row2[j]));
      return cof;
    }
    case RingKind::PolynomialOverRationals: {
      std::vector<Poly> pcof;
      Poly nf = gb_normal_form(f.as_poly(), c.gb, &pcof);
      if (!nf.is_zero()) return std::nullopt;
      std::vector<RingElement> cof;
      for (std::size_t j = 0; j < gens.size(); ++j)
        cof.push_back(RingElement::polynomial(ring, pcof[j]));
      return cof;
    }
    case RingKind::CuspidalCubicQuotient: {
      std::vector<Poly> pcof;
      Poly nf = gb_normal_form(f.as_poly(), c.gb, &pcof);
      if (!nf.is_zero()) return std::nullopt;
      std::vector<RingElement> cof;
      // Drop the cofactor of the adjoined relation; it is zero in A.
      for (std::size_t j = 0; j < gens.size(); ++j)
        cof.push_back(RingElement::polynomial(ring, pcof[j]));
      return cof;
    }
  }
  return std::nullopt;
}

bool ideal_membership(const RingElement& f, const Ideal& ideal) {
  if (!same_ring(f.ring(), ideal.ring()))
    fail(ErrorCode::SpecMismatch, "ideal membership across rings");
  const Ring& ring = ideal.ring();
  if (ring->is_polynomial_backed()) {
    // Cheaper: no cofactor bookkeeping.
    Poly nf = gb_normal_form(f.as_poly(), ideal.canon().gb, nullptr);
    return nf.is_zero();
  }
  return ideal_membership_cofactors(f, ideal).has_value();
}

namespace {

// { v : v * mul_by_b in lattice(rows of h) }, rows-as-coordinates form.
// h holds the nonzero HNF rows (possibly empty = zero lattice).
ZMat lattice_preimage(const ZMat& h, const ZMat& mul_by_b) {
  if (h.empty()) {
    // Preimage of the zero lattice: kernel of mul_by_b.
    return zmat_left_kernel(mul_by_b);
  }
  // Unknown z = (v, w); constraint v*M - w*H = 0.
  ZMat stacked;
  for (const auto& row : mul_by_b) stacked.push_back(row);
  for (const auto& row : h) {
    ZRow negated;
    for (const auto& x : row) negated.push_back(-x);
    stacked.push_back(negated);
  }
  ZMat kernel = zmat_left_kernel(stacked);
  ZMat projected;
  for (const auto& krow : kernel)
    projected.push_back(ZRow(krow.begin(), krow.begin() + mul_by_b.size()));
  return projected;
}

ZMat lattice_intersect(const ZMat& h1, const ZMat& h2) {
  if (h1.empty() || h2.empty()) return {};
  ZMat stacked;
  for (const auto& row : h1) stacked.push_back(row);
  for (const auto& row : h2) {
    ZRow negated;
    for (const auto& x : row) negated.push_back(-x);
    stacked.push_back(negated);
  }
  ZMat kernel = zmat_left_kernel(stacked);
  ZMat rows;
  for (const auto& krow : kernel) {
    ZRow v(h1[0].size(), 0);
    for (std::size_t i = 0; i < h1.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += krow[i] * h1[i][j];
    rows.push_back(std::move(v));
  }
  return rows;
}

// Nonzero HNF rows of the coordinate lattice of a quadratic ideal, in the
// plain (a, b) column order used by the quotient computation.
ZMat quad_lattice_rows(const Ideal& ideal) {
  ZMat span;
  for (const auto& g : ideal.generators()) {
    const QuadInt& q = g.as_quadratic();
    span.push_back({q.a, q.b});
    span.push_back({mpz_class(-5) * q.b, q.a});
  }
  HnfResult hr = zmat_hnf(span);
  ZMat rows(hr.h.begin(), hr.h.begin() + hr.rank);
  return rows;
}

Ideal quad_ideal_from_rows(const Ring& ring, const ZMat& rows) {
  // Emit generators in the canonical {d1, c + d2*s} shape.
  ZMat rev;
  for (const auto& r : rows) rev.push_back({r[1], r[0]});
  HnfResult hr = zmat_hnf(rev);
  std::vector<RingElement> gens;
  if (hr.rank == 2) {
    gens.push_back(RingElement::quadratic(ring, hr.h[1][1], hr.h[1][0]));
    gens.push_back(RingElement::quadratic(ring, hr.h[0][1], hr.h[0][0]));
  } else if (hr.rank == 1) {
    gens.push_back(RingElement::quadratic(ring, hr.h[0][1], hr.h[0][0]));
  }
  return Ideal(ring, std::move(gens));
}

}  // namespace

Ideal ideal_quotient(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  const Ring& ring = a.ring();
  if (b.is_zero_ideal())
    return Ideal(ring, {RingElement::one(ring)});  // vacuous condition
  switch (ring->kind) {
    case RingKind::Integers: {
      const mpz_class& g = a.canon().z_gen;
      if (sgn(g) == 0) return Ideal(ring, {});
      mpz_class acc = 1;
      for (const auto& bj : b.generators()) {
        if (is_zero(bj)) continue;
        mpz_class d;
        mpz_gcd(d.get_mpz_t(), g.get_mpz_t(), bj.as_integer().get_mpz_t());
        mpz_class part = g / d;
        mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), part.get_mpz_t());
      }
      return Ideal(ring, {RingElement::from_mpz(ring, acc)});
    }
    case RingKind::Rationals: {
      if (a.canon().q_one) return Ideal(ring, {RingElement::one(ring)});
      return Ideal(ring, {});
    }
    case RingKind::QuadraticSqrtMinus5: {
      ZMat ha = quad_lattice_rows(a);
      ZMat acc;
      bool first = true;
      for (const auto& bj : b.generators()) {
        if (is_zero(bj)) continue;
        const QuadInt& q = bj.as_quadratic();
        // Right multiplication by bj on row coordinates (x, y).
        ZMat mul_by_b = {{q.a, q.b}, {mpz_class(-5) * q.b, q.a}};
        ZMat pre = lattice_preimage(ha, mul_by_b);
        pre = zmat_hnf(pre).h;
        while (!pre.empty() && std::all_of(pre.back().begin(), pre.back().end(),
                                           [](const mpz_class& x) { return sgn(x) == 0; }))
          pre.pop_back();
        if (first) {
          acc = pre;
          first = false;
        } else {
          acc = lattice_intersect(acc, pre);
          acc = zmat_hnf(acc).h;
          while (!acc.empty() &&
                 std::all_of(acc.back().begin(), acc.back().end(),
                             [](const mpz_class& x) { return sgn(x) == 0; }))
            acc.pop_back();
        }
      }
      return quad_ideal_from_rows(ring, acc);
    }
    case RingKind::PolynomialOverRationals: {
      std::vector<Poly> pa, pb;
      for (const auto& g : a.generators()) pa.push_back(g.as_poly());
      for (const auto& g : b.generators()) pb.push_back(g.as_poly());
      std::vector<Poly> q = poly_ideal_quotient(pa, pb);
      std::vector<RingElement> gens;
      for (auto& p : q) gens.push_back(RingElement::polynomial(ring, p));
      return Ideal(ring, std::move(gens));
    }
    case RingKind::CuspidalCubicQuotient: {
      std::vector<Poly> pa = lifted_polys(a);
      std::vector<Poly> pb;
      for (const auto& g : b.generators())
        if (!is_zero(g)) pb.push_back(g.as_poly());
      std::vector<Poly> q = poly_ideal_quotient(pa, pb);
      std::vector<RingElement> gens;
      for (auto& p : q) {
        Poly nf = cuspidal_reduce(p);
        if (!nf.is_zero()) gens.push_back(RingElement::polynomial(ring, nf));
      }
      return Ideal(ring, std::move(gens));
    }
  }
  fail(ErrorCode::Internal, "unreachable");
}

RadicalDecision radical_membership(const RingElement& f, const Ideal& ideal,
                                   int quadratic_power_bound) {
  if (!same_ring(f.ring(), ideal.ring()))
    fail(ErrorCode::SpecMismatch, "radical membership across rings");
  const Ring& ring = ideal.ring();
  RadicalDecision d;
  switch (ring->kind) {
    case RingKind::Integers: {
      const mpz_class& g = ideal.canon().z_gen;
      if (sgn(g) == 0) {
        d.member = is_zero(f);
        return d;
      }
      // Drain common prime factors; membership iff every prime of g divides f.
      mpz_class m = g;
      const mpz_class& x = f.as_integer();
      while (m > 1) {
        mpz_class common;
        mpz_gcd(common.get_mpz_t(), m.get_mpz_t(), x.get_mpz_t());
        if (common == 1) break;
        m /= common;
      }
      d.member = (m == 1);
      return d;
    }
    case RingKind::Rationals:
      d.member = ideal.canon().q_one || is_zero(f);
      return d;
    case RingKind::QuadraticSqrtMinus5: {
      d.bound_used = quadratic_power_bound;
      if (is_zero(f)) {
        d.member = true;
        return d;
      }
      RingElement p = f;
      for (int k = 1; k <= quadratic_power_bound; ++k) {
        if (ideal_membership(p, ideal)) {
          d.member = true;
          return d;
        }
        p = mul(p, f);
      }
      d.member = false;
      d.certified = false;  // search exhausted, not a refutation
      return d;
    }
    case RingKind::PolynomialOverRationals: {
      std::vector<Poly> gens;
      for (const auto& g : ideal.generators()) gens.push_back(g.as_poly());
      d.member = poly_radical_membership(f.as_poly(), gens);
      return d;
    }
    case RingKind::CuspidalCubicQuotient: {
      d.member = poly_radical_membership(f.as_poly(), lifted_polys(ideal));
      return d;
    }
  }
  fail(ErrorCode::Internal, "unreachable");
}

bool ideal_equals(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  const Ideal::Cache& ca = a.canon();
  const Ideal::Cache& cb = b.canon();
  switch (a.ring()->kind) {
    case RingKind::Integers: return ca.z_gen == cb.z_gen;
    case RingKind::Rationals: return ca.q_one == cb.q_one;
    case RingKind::QuadraticSqrtMinus5:
      if (ca.lat_rank != cb.lat_rank) return false;
      if (ca.lat_rank == 0) return true;
      return ca.d1 == cb.d1 && ca.c == cb.c && ca.d2 == cb.d2;
    default: {
      if (ca.gb.elems.size() != cb.gb.elems.size()) return false;
      for (std::size_t i = 0; i < ca.gb.elems.size(); ++i)
        if (!(ca.gb.elems[i].p == cb.gb.elems[i].p)) return false;
      return true;
    }
  }
}

std::optional<std::vector<RingElement>> ideal_contains_one(const Ideal& ideal) {
  return ideal_membership_cofactors(RingElement::one(ideal.ring()), ideal);
}

PrincipalityResult principal_generator(const Ideal& ideal) {
  PrincipalityResult r;
  const Ring& ring = ideal.ring();
  const Ideal::Cache& c = ideal.canon();
  switch (ring->kind) {
    case RingKind::Integers:
      r.generator = RingElement::from_mpz(ring, c.z_gen);
      return r;
    case RingKind::Rationals:
      r.generator = c.q_one ? RingElement::one(ring) : RingElement::zero(ring);
      return r;
    case RingKind::QuadraticSqrtMinus5: {
      if (c.lat_rank == 0) {
        r.generator = RingElement::zero(ring);
        return r;
      }
      // (g) = ideal iff norm(g) equals the lattice index d1*d2; enumerating
      // the norm ellipse decides principality exactly.
      mpz_class index = c.d1 * c.d2;
      mpz_class bmax;
      mpz_class idx5 = index / 5;
      mpz_sqrt(bmax.get_mpz_t(), idx5.get_mpz_t());
      for (mpz_class b = 0; b <= bmax; ++b) {
        mpz_class rem = index - 5 * b * b;
        if (sgn(rem) < 0) break;
        if (mpz_perfect_square_p(rem.get_mpz_t()) == 0) continue;
        mpz_class a;
        mpz_sqrt(a.get_mpz_t(), rem.get_mpz_t());
        std::vector<QuadInt> candidates = {{a, b}, {a, -b}};
        for (const auto& cand : candidates) {
          RingElement g = RingElement::quadratic(ring, cand.a, cand.b);
          if (is_zero(g)) continue;
          if (ideal_membership(g, ideal)) {
            r.generator = g;
            return r;
          }
        }
      }
      return r;  // certified: no element of matching norm exists
    }
    case RingKind::PolynomialOverRationals: {
      if (c.gb.elems.empty()) {
        r.generator = RingElement::zero(ring);
        return r;
      }
      if (c.gb.elems.size() == 1)
        r.generator = RingElement::polynomial(ring, c.gb.elems[0].p);
      return r;  // reduced basis of a principal ideal is a singleton
    }
    case RingKind::CuspidalCubicQuotient: {
      r.certified = false;
      std::vector<RingElement> cand = ideal.canonical_generators();
      if (cand.empty()) {
        r.generator = RingElement::zero(ring);
        r.certified = true;
        return r;
      }
      for (const auto& g : cand) {
        if (ideal_equals(Ideal(ring, {g}), ideal)) {
          r.generator = g;
          r.certified = true;
          return r;
        }
      }
      return r;
    }
  }
  fail(ErrorCode::Internal, "unreachable");
}

}  // namespace ringstab
