#include "ringstab/ring.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "ringstab/errors.hpp"
#include "ringstab/groebner.hpp"

namespace ringstab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::UnsupportedRing: return "UnsupportedRing";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::SingularSelection: return "SingularSelection";
    case ErrorCode::SingularLoop: return "SingularLoop";
    case ErrorCode::ZeroMinor: return "ZeroMinor";
    case ErrorCode::CausalityIdealMissing: return "CausalityIdealMissing";
    case ErrorCode::ImproperCausalityIdeal: return "ImproperCausalityIdeal";
    case ErrorCode::DivisibilityBoundExceeded: return "DivisibilityBoundExceeded";
    case ErrorCode::NoValidMinor: return "NoValidMinor";
    case ErrorCode::RepairFailed: return "RepairFailed";
    case ErrorCode::NotStabilizable: return "NotStabilizable";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

bool RingSpec::is_ufd() const {
  return kind == RingKind::Integers || kind == RingKind::Rationals ||
         kind == RingKind::PolynomialOverRationals;
}

bool RingSpec::is_polynomial_backed() const {
  return kind == RingKind::PolynomialOverRationals ||
         kind == RingKind::CuspidalCubicQuotient;
}

std::string RingSpec::describe() const {
  switch (kind) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::QuadraticSqrtMinus5: return "Z[sqrt(-5)]";
    case RingKind::PolynomialOverRationals: {
      std::string s = "Q[";
      for (std::size_t i = 0; i < variables.size(); ++i) {
        if (i) s += ",";
        s += variables[i];
      }
      return s + "]";
    }
    case RingKind::CuspidalCubicQuotient: return "Q[u,v]/(u^3-v^2)";
  }
  return "?";
}

Ring ring_integers() {
  return std::make_shared<RingSpec>(RingSpec{RingKind::Integers, {}});
}
Ring ring_rationals() {
  return std::make_shared<RingSpec>(RingSpec{RingKind::Rationals, {}});
}
Ring ring_quadratic() {
  return std::make_shared<RingSpec>(RingSpec{RingKind::QuadraticSqrtMinus5, {}});
}
Ring ring_polynomial(std::vector<std::string> variables) {
  if (variables.empty())
    fail(ErrorCode::UnsupportedRing, "polynomial ring needs variables");
  std::set<std::string> seen(variables.begin(), variables.end());
  if (seen.size() != variables.size())
    fail(ErrorCode::UnsupportedRing, "duplicate variable names");
  return std::make_shared<RingSpec>(
      RingSpec{RingKind::PolynomialOverRationals, std::move(variables)});
}
Ring ring_cuspidal() {
  return std::make_shared<RingSpec>(
      RingSpec{RingKind::CuspidalCubicQuotient, {"u", "v"}});
}

Poly cuspidal_relation() {
  Poly g(2);
  g.add_term(Mono{3, 0}, 1);
  g.add_term(Mono{0, 2}, -1);
  return g;
}

Poly cuspidal_reduce(const Poly& p) {
  static const Poly rel = cuspidal_relation();
  MonoOrder order;
  return poly_divmod(p, {rel}, order, nullptr);
}

namespace {

void check_same(const RingElement& a, const RingElement& b) {
  if (!same_ring(a.ring(), b.ring()))
    fail(ErrorCode::SpecMismatch, "operands from different rings");
}

}  // namespace

RingElement RingElement::zero(const Ring& r) { return from_int(r, 0); }
RingElement RingElement::one(const Ring& r) { return from_int(r, 1); }

RingElement RingElement::from_int(const Ring& r, long v) {
  return from_mpz(r, mpz_class(v));
}

RingElement RingElement::from_mpz(const Ring& r, const mpz_class& v) {
  RingElement e;
  e.ring_ = r;
  switch (r->kind) {
    case RingKind::Integers: e.v_ = v; break;
    case RingKind::Rationals: e.v_ = mpq_class(v); break;
    case RingKind::QuadraticSqrtMinus5: e.v_ = QuadInt{v, 0}; break;
    case RingKind::PolynomialOverRationals:
    case RingKind::CuspidalCubicQuotient:
      e.v_ = Poly::constant(r->arity(), mpq_class(v));
      break;
  }
  return e;
}

RingElement RingElement::from_mpq(const Ring& r, const mpq_class& v) {
  if (r->kind == RingKind::Rationals) {
    RingElement e;
    e.ring_ = r;
    mpq_class c = v;
    c.canonicalize();
    e.v_ = c;
    return e;
  }
  if (r->is_polynomial_backed()) {
    RingElement e;
    e.ring_ = r;
    e.v_ = Poly::constant(r->arity(), v);
    return e;
  }
  fail(ErrorCode::UnsupportedRing, "rational constant not in this ring");
}

RingElement RingElement::quadratic(const Ring& r, const mpz_class& a,
                                   const mpz_class& b) {
  if (r->kind != RingKind::QuadraticSqrtMinus5)
    fail(ErrorCode::SpecMismatch, "quadratic payload in non-quadratic ring");
  RingElement e;
  e.ring_ = r;
  e.v_ = QuadInt{a, b};
  return e;
}

RingElement RingElement::polynomial(const Ring& r, Poly p) {
  if (!r->is_polynomial_backed())
    fail(ErrorCode::SpecMismatch, "polynomial payload in non-polynomial ring");
  if (p.arity() != r->arity())
    fail(ErrorCode::SpecMismatch, "polynomial arity mismatch");
  RingElement e;
  e.ring_ = r;
  if (r->kind == RingKind::CuspidalCubicQuotient) p = cuspidal_reduce(p);
  e.v_ = std::move(p);
  return e;
}

const mpz_class& RingElement::as_integer() const { return std::get<mpz_class>(v_); }
const mpq_class& RingElement::as_rational() const { return std::get<mpq_class>(v_); }
const QuadInt& RingElement::as_quadratic() const { return std::get<QuadInt>(v_); }
const Poly& RingElement::as_poly() const { return std::get<Poly>(v_); }

bool RingElement::operator==(const RingElement& o) const {
  return same_ring(ring_, o.ring_) && v_ == o.v_;
}

RingElement add(const RingElement& a, const RingElement& b) {
  check_same(a, b);
  RingElement r = a;
  switch (a.ring()->kind) {
    case RingKind::Integers: r.v_ = mpz_class(a.as_integer() + b.as_integer()); break;
    case RingKind::Rationals: r.v_ = mpq_class(a.as_rational() + b.as_rational()); break;
    case RingKind::QuadraticSqrtMinus5:
      r.v_ = QuadInt{mpz_class(a.as_quadratic().a + b.as_quadratic().a),
                     mpz_class(a.as_quadratic().b + b.as_quadratic().b)};
      break;
    case RingKind::PolynomialOverRationals:
    case RingKind::CuspidalCubicQuotient:
      r.v_ = a.as_poly() + b.as_poly();
      break;
  }
  return r;
}

RingElement sub(const RingElement& a, const RingElement& b) {
  return add(a, neg(b));
}

RingElement mul(const RingElement& a, const RingElement& b) {
  check_same(a, b);
  RingElement r = a;
  switch (a.ring()->kind) {
    case RingKind::Integers: r.v_ = mpz_class(a.as_integer() * b.as_integer()); break;
    case RingKind::Rationals: r.v_ = mpq_class(a.as_rational() * b.as_rational()); break;
    case RingKind::QuadraticSqrtMinus5: {
      const QuadInt& x = a.as_quadratic();
      const QuadInt& y = b.as_quadratic();
      r.v_ = QuadInt{mpz_class(x.a * y.a - 5 * x.b * y.b),
                     mpz_class(x.a * y.b + x.b * y.a)};
      break;
    }
    case RingKind::PolynomialOverRationals:
      r.v_ = a.as_poly() * b.as_poly();
      break;
    case RingKind::CuspidalCubicQuotient:
      r.v_ = cuspidal_reduce(a.as_poly() * b.as_poly());
      break;
  }
  return r;
}

RingElement neg(const RingElement& a) {
  RingElement r = a;
  switch (a.ring()->kind) {
    case RingKind::Integers: r.v_ = mpz_class(-a.as_integer()); break;
    case RingKind::Rationals: r.v_ = mpq_class(-a.as_rational()); break;
    case RingKind::QuadraticSqrtMinus5:
      r.v_ = QuadInt{mpz_class(-a.as_quadratic().a), mpz_class(-a.as_quadratic().b)};
      break;
    case RingKind::PolynomialOverRationals:
    case RingKind::CuspidalCubicQuotient:
      r.v_ = -a.as_poly();
      break;
  }
  return r;
}

bool is_zero(const RingElement& a) {
  switch (a.ring()->kind) {
    case RingKind::Integers: return sgn(a.as_integer()) == 0;
    case RingKind::Rationals: return sgn(a.as_rational()) == 0;
    case RingKind::QuadraticSqrtMinus5:
      return sgn(a.as_quadratic().a) == 0 && sgn(a.as_quadratic().b) == 0;
    case RingKind::PolynomialOverRationals:
    case RingKind::CuspidalCubicQuotient:
      return a.as_poly().is_zero();
  }
  return false;
}

bool is_unit(const RingElement& a) {
  switch (a.ring()->kind) {
    case RingKind::Integers: {
      const mpz_class& v = a.as_integer();
      return v == 1 || v == -1;
    }
    case RingKind::Rationals: return sgn(a.as_rational()) != 0;
    case RingKind::QuadraticSqrtMinus5: {
      const QuadInt& q = a.as_quadratic();
      return q.a * q.a + 5 * q.b * q.b == 1;
    }
    case RingKind::PolynomialOverRationals:
      return a.as_poly().is_constant() && !a.as_poly().is_zero();
    case RingKind::CuspidalCubicQuotient:
      // Units of Q[z^2, z^3] are the nonzero constants.
      return a.as_poly().is_constant() && !a.as_poly().is_zero();
  }
  return false;
}

bool is_nonzerodivisor(const RingElement& a) { return !is_zero(a); }

std::optional<RingElement> exact_divide(const RingElement& a,
                                        const RingElement& b) {
  check_same(a, b);
  if (is_zero(b)) fail(ErrorCode::DivisionByZero, "exact_divide by zero");
  const Ring& r = a.ring();
  switch (r->kind) {
    case RingKind::Integers: {
      mpz_class q, rem;
      mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a.as_integer().get_mpz_t(),
                  b.as_integer().get_mpz_t());
      if (sgn(rem) != 0) return std::nullopt;
      return RingElement::from_mpz(r, q);
    }
    case RingKind::Rationals:
      return RingElement::from_mpq(r, a.as_rational() / b.as_rational());
    case RingKind::QuadraticSqrtMinus5: {
      // a * conj(b) / norm(b) with an integrality check.
      const QuadInt& x = a.as_quadratic();
      const QuadInt& y = b.as_quadratic();
      mpz_class norm = y.a * y.a + 5 * y.b * y.b;
      mpz_class na = x.a * y.a + 5 * x.b * y.b;
      mpz_class nb = x.b * y.a - x.a * y.b;
      if (na % norm != 0 || nb % norm != 0) return std::nullopt;
      return RingElement::quadratic(r, na / norm, nb / norm);
    }
    case RingKind::PolynomialOverRationals: {
      auto q = poly_exact_div(a.as_poly(), b.as_poly());
      if (!q) return std::nullopt;
      return RingElement::polynomial(r, *q);
    }
    case RingKind::CuspidalCubicQuotient: {
      // Divisibility modulo the relation: a in (b, u^3 - v^2).
      MonoOrder order;
      GroebnerBasis gb = groebner({b.as_poly(), cuspidal_relation()}, order);
      std::vector<Poly> cof;
      Poly nf = gb_normal_form(a.as_poly(), gb, &cof);
      if (!nf.is_zero()) return std::nullopt;
      return RingElement::polynomial(r, cof[0]);
    }
  }
  return std::nullopt;
}

RingElement gcd(const RingElement& a, const RingElement& b) {
  check_same(a, b);
  const Ring& r = a.ring();
  if (!r->is_ufd())
    fail(ErrorCode::UnsupportedRing,
         "gcd is not available in " + r->describe());
  switch (r->kind) {
    case RingKind::Integers: {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), a.as_integer().get_mpz_t(),
              b.as_integer().get_mpz_t());
      return RingElement::from_mpz(r, g);
    }
    case RingKind::Rationals:
      if (is_zero(a) && is_zero(b)) return RingElement::zero(r);
      return RingElement::one(r);
    default:
      return RingElement::polynomial(r, poly_gcd(a.as_poly(), b.as_poly()));
  }
}

namespace {

// Trial-division factorization adequate for desk-scale integers; perfect
// powers are peeled off so that any surviving cofactor is squarefree.
mpz_class squarefree_integer(const mpz_class& value) {
  mpz_class m = abs(value);
  mpz_class result = 1;
  auto push_prime = [&](const mpz_class& p) {
    if (result % p != 0) result *= p;
  };
  mpz_class p = 2;
  while (p * p <= m && p < 1000000) {
    if (m % p == 0) {
      push_prime(p);
      while (m % p == 0) m /= p;
    }
    p += (p == 2) ? 1 : 2;
  }
  while (m > 1 && mpz_perfect_power_p(m.get_mpz_t())) {
    for (unsigned k = 2;; ++k) {
      mpz_class root;
      if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
        m = root;
        break;
      }
    }
  }
  if (m > 1) push_prime(m);
  return result;
}

}  // namespace

RingElement squarefree_part(const RingElement& a) {
  const Ring& r = a.ring();
  if (!r->is_ufd())
    fail(ErrorCode::UnsupportedRing,
         "squarefree_part is not available in " + r->describe());
  if (is_zero(a)) fail(ErrorCode::DivisionByZero, "squarefree_part of zero");
  switch (r->kind) {
    case RingKind::Integers:
      return RingElement::from_mpz(r, squarefree_integer(a.as_integer()));
    case RingKind::Rationals:
      return RingElement::one(r);
    default:
      return RingElement::polynomial(r, poly_squarefree_part(a.as_poly()));
  }
}

RingElement power(const RingElement& a, unsigned e) {
  RingElement r = RingElement::one(a.ring());
  for (unsigned i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

bool associates(const RingElement& a, const RingElement& b) {
  if (is_zero(a) || is_zero(b)) return is_zero(a) && is_zero(b);
  auto q = exact_divide(a, b);
  if (!q || !is_unit(*q)) return false;
  return true;
}

std::string RingElement::to_string() const {
  switch (ring_->kind) {
    case RingKind::Integers: return as_integer().get_str();
    case RingKind::Rationals: return mpq_to_string(as_rational());
    case RingKind::QuadraticSqrtMinus5: {
      const QuadInt& q = as_quadratic();
      if (sgn(q.b) == 0) return q.a.get_str();
      std::string bs = mpz_class(abs(q.b)).get_str() + "*s";
      if (sgn(q.a) == 0) return (sgn(q.b) < 0 ? "-" : "") + bs;
      return q.a.get_str() + (sgn(q.b) < 0 ? " - " : " + ") + bs;
    }
    case RingKind::PolynomialOverRationals:
    case RingKind::CuspidalCubicQuotient:
      return poly_to_string(as_poly(), ring_->variables);
  }
  return "?";
}

}  // namespace ringstab
