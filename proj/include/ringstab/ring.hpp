#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ringstab/poly.hpp"

namespace ringstab {

enum class RingKind {
  Integers,
  Rationals,
  QuadraticSqrtMinus5,
  PolynomialOverRationals,
  CuspidalCubicQuotient,
};

/// Description of the ambient ring A. CuspidalCubicQuotient presents
/// Q[z^2, z^3] as Q[u, v] reduced modulo u^3 - v^2 (u = z^2, v = z^3);
/// every supported kind is an integral domain.
class RingSpec {
 public:
  RingKind kind;
  std::vector<std::string> variables;  // polynomial kinds only

  bool operator==(const RingSpec&) const = default;
  bool is_ufd() const;
  bool is_polynomial_backed() const;  // Poly payload (polynomial or cuspidal)
  bool is_field() const { return kind == RingKind::Rationals; }
  int arity() const { return static_cast<int>(variables.size()); }
  std::string describe() const;
};

using Ring = std::shared_ptr<const RingSpec>;

Ring ring_integers();
Ring ring_rationals();
Ring ring_quadratic();
Ring ring_polynomial(std::vector<std::string> variables);
Ring ring_cuspidal();

inline bool same_ring(const Ring& a, const Ring& b) { return *a == *b; }

/// a + b*sqrt(-5) with integer a, b.
struct QuadInt {
  mpz_class a, b;
  bool operator==(const QuadInt&) const = default;
};

/// The defining relation u^3 - v^2 of the cuspidal quotient.
Poly cuspidal_relation();
/// Normal form modulo u^3 - v^2 under grevlex (u > v).
Poly cuspidal_reduce(const Poly& p);

/// Immutable exact element of one of the supported rings.
class RingElement {
 public:
  static RingElement zero(const Ring& r);
  static RingElement one(const Ring& r);
  static RingElement from_int(const Ring& r, long v);
  static RingElement from_mpz(const Ring& r, const mpz_class& v);
  static RingElement from_mpq(const Ring& r, const mpq_class& v);  // Q only
  static RingElement quadratic(const Ring& r, const mpz_class& a,
                               const mpz_class& b);
  static RingElement polynomial(const Ring& r, Poly p);  // reduced if cuspidal

  const Ring& ring() const { return ring_; }

  const mpz_class& as_integer() const;
  const mpq_class& as_rational() const;
  const QuadInt& as_quadratic() const;
  const Poly& as_poly() const;

  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  friend RingElement add(const RingElement&, const RingElement&);
  friend RingElement sub(const RingElement&, const RingElement&);
  friend RingElement mul(const RingElement&, const RingElement&);
  friend RingElement neg(const RingElement&);
  friend bool is_zero(const RingElement&);

  Ring ring_;
  std::variant<mpz_class, mpq_class, QuadInt, Poly> v_;
};

RingElement add(const RingElement& a, const RingElement& b);
RingElement sub(const RingElement& a, const RingElement& b);
RingElement mul(const RingElement& a, const RingElement& b);
RingElement neg(const RingElement& a);

inline RingElement operator+(const RingElement& a, const RingElement& b) { return add(a, b); }
inline RingElement operator-(const RingElement& a, const RingElement& b) { return sub(a, b); }
inline RingElement operator*(const RingElement& a, const RingElement& b) { return mul(a, b); }
inline RingElement operator-(const RingElement& a) { return neg(a); }

bool is_zero(const RingElement& a);
bool is_unit(const RingElement& a);
bool is_nonzerodivisor(const RingElement& a);

/// Quotient q with a = q*b when b divides a in the ring, else nullopt.
std::optional<RingElement> exact_divide(const RingElement& a,
                                        const RingElement& b);

/// Greatest common divisor, normalized; UFD kinds only.
RingElement gcd(const RingElement& a, const RingElement& b);

/// Product of the distinct prime factors; UFD kinds only, nonzero input.
RingElement squarefree_part(const RingElement& a);

RingElement power(const RingElement& a, unsigned e);

/// True when a and b differ by a unit factor.
bool associates(const RingElement& a, const RingElement& b);

}  // namespace ringstab
