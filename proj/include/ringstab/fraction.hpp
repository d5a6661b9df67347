#pragma once

#include <optional>
#include <string>

#include "ringstab/ideal.hpp"
#include "ringstab/ring.hpp"

namespace ringstab {

/// Element of the total ring of fractions F = { n/d : d a nonzerodivisor }.
/// Reduced by gcd (denominator normalized) over UFD kinds; stored as given
/// otherwise, with equality decided by cross-multiplication.
class FractionElement {
 public:
  FractionElement() = default;
  FractionElement(RingElement num, RingElement den);
  static FractionElement from_ring(const RingElement& e);
  static FractionElement zero(const Ring& r);
  static FractionElement one(const Ring& r);

  const RingElement& num() const { return num_; }
  const RingElement& den() const { return den_; }
  const Ring& ring() const { return num_.ring(); }

  bool is_zero() const;

  FractionElement operator+(const FractionElement& o) const;
  FractionElement operator-(const FractionElement& o) const;
  FractionElement operator*(const FractionElement& o) const;
  FractionElement operator/(const FractionElement& o) const;
  FractionElement operator-() const;
  FractionElement inverse() const;

  bool operator==(const FractionElement& o) const;
  bool operator!=(const FractionElement& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void reduce();
  RingElement num_, den_;
};

/// True iff f equals an element of A (the denominator divides the numerator;
/// for the cuspidal kind this is an ideal-membership test).
bool fraction_in_ring(const FractionElement& f);

/// The ring element equal to f; requires fraction_in_ring(f).
RingElement fraction_to_ring(const FractionElement& f);

/// True iff f admits a representative a/b with b outside the prime ideal z,
/// decided through the transporter ((den) : (num)).
bool fraction_is_causal(const FractionElement& f, const Ideal& z);

}  // namespace ringstab
