#include "ringstab/fraction.hpp"

#include "ringstab/errors.hpp"

namespace ringstab {

FractionElement::FractionElement(RingElement num, RingElement den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (!same_ring(num_.ring(), den_.ring()))
    fail(ErrorCode::SpecMismatch, "fraction across rings");
  if (ringstab::is_zero(den_)) fail(ErrorCode::DivisionByZero, "zero denominator");
  reduce();
}

FractionElement FractionElement::from_ring(const RingElement& e) {
  return FractionElement(e, RingElement::one(e.ring()));
}

FractionElement FractionElement::zero(const Ring& r) {
  return from_ring(RingElement::zero(r));
}

FractionElement FractionElement::one(const Ring& r) {
  return from_ring(RingElement::one(r));
}

bool FractionElement::is_zero() const { return ringstab::is_zero(num_); }

void FractionElement::reduce() {
  const Ring& r = num_.ring();
  if (ringstab::is_zero(num_)) {
    den_ = RingElement::one(r);
    return;
  }
  if (r->is_ufd()) {
    RingElement g = gcd(num_, den_);
    if (!is_unit(g)) {
      num_ = *exact_divide(num_, g);
      den_ = *exact_divide(den_, g);
    }
  }
  // Fold unit denominators into the numerator everywhere.
  if (is_unit(den_)) {
    num_ = *exact_divide(num_, den_);
    den_ = RingElement::one(r);
    return;
  }
  // Normalize sign for readability in UFD kinds: integers by sign, the
  // polynomial kinds by the sign of the leading coefficient.
  switch (r->kind) {
    case RingKind::Integers:
      if (sgn(den_.as_integer()) < 0) {
        num_ = neg(num_);
        den_ = neg(den_);
      }
      break;
    case RingKind::PolynomialOverRationals:
      if (sgn(den_.as_poly().leading_coeff(MonoOrder{})) < 0) {
        num_ = neg(num_);
        den_ = neg(den_);
      }
      break;
    default:
      break;
  }
}

FractionElement FractionElement::operator+(const FractionElement& o) const {
  return FractionElement(add(mul(num_, o.den_), mul(o.num_, den_)),
                         mul(den_, o.den_));
}

FractionElement FractionElement::operator-(const FractionElement& o) const {
  return FractionElement(sub(mul(num_, o.den_), mul(o.num_, den_)),
                         mul(den_, o.den_));
}

FractionElement FractionElement::operator*(const FractionElement& o) const {
  return FractionElement(mul(num_, o.num_), mul(den_, o.den_));
}

FractionElement FractionElement::operator/(const FractionElement& o) const {
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "fraction division by zero");
  return FractionElement(mul(num_, o.den_), mul(den_, o.num_));
}

FractionElement FractionElement::operator-() const {
  FractionElement r = *this;
  r.num_ = neg(r.num_);
  return r;
}

FractionElement FractionElement::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  return FractionElement(den_, num_);
}

bool FractionElement::operator==(const FractionElement& o) const {
  return ringstab::is_zero(sub(mul(num_, o.den_), mul(o.num_, den_)));
}

std::string FractionElement::to_string() const {
  if (is_unit(den_) || ringstab::is_zero(num_)) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

bool fraction_in_ring(const FractionElement& f) {
  const Ring& r = f.ring();
  if (r->kind == RingKind::CuspidalCubicQuotient) {
    Ideal den_ideal(r, {f.den()});
    return ideal_membership(f.num(), den_ideal);
  }
  return exact_divide(f.num(), f.den()).has_value();
}

RingElement fraction_to_ring(const FractionElement& f) {
  const Ring& r = f.ring();
  if (r->kind == RingKind::CuspidalCubicQuotient) {
    Ideal den_ideal(r, {f.den()});
    auto cof = ideal_membership_cofactors(f.num(), den_ideal);
    if (!cof) fail(ErrorCode::Internal, "fraction_to_ring: not in ring");
    return (*cof)[0];
  }
  auto q = exact_divide(f.num(), f.den());
  if (!q) fail(ErrorCode::Internal, "fraction_to_ring: not in ring");
  return *q;
}

bool fraction_is_causal(const FractionElement& f, const Ideal& z) {
  // f = n/d is causal iff some b outside z has b*n in (d), i.e. the
  // transporter ((d) : (n)) is not contained in z.
  Ideal transporter = ideal_quotient(Ideal(f.ring(), {f.den()}),
                                     Ideal(f.ring(), {f.num()}));
  for (const auto& g : transporter.canonical_generators())
    if (!ideal_membership(g, z)) return true;
  return false;
}

}  // namespace ringstab
