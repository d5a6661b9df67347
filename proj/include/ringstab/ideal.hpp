#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ringstab/groebner.hpp"
#include "ringstab/ring.hpp"
#include "ringstab/zutil.hpp"

namespace ringstab {

/// Finitely generated ideal of A, kept as the original generator list plus a
/// lazily computed canonical basis:
///   - Integers: a single nonnegative generator (gcd),
///   - Rationals: (0) or (1),
///   - QuadraticSqrtMinus5: the Hermite-normal-form basis {d1, c + d2*s} of
///     the rank-2 coordinate lattice in (1, sqrt(-5)),
///   - polynomial kinds: the reduced Groebner basis (grevlex); the cuspidal
///     kind adjoins the relation u^3 - v^2 to every computation.
/// Values are immutable; the cache fills once and is race-safe.
class Ideal {
 public:
  Ideal(Ring ring, std::vector<RingElement> gens);

  const Ring& ring() const { return ring_; }
  const std::vector<RingElement>& generators() const { return gens_; }

  std::vector<RingElement> canonical_generators() const;
  bool is_zero_ideal() const;

  struct Cache;
  const Cache& canon() const;

 private:
  Ring ring_;
  std::vector<RingElement> gens_;
  std::shared_ptr<Cache> cache_;
};

Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_sum(const std::vector<Ideal>& parts);
Ideal ideal_product(const Ideal& a, const Ideal& b);

bool ideal_membership(const RingElement& f, const Ideal& ideal);

/// Membership with cofactors c_j (over the original generators) such that
/// f == sum_j c_j * g_j; nullopt when f is not a member.
std::optional<std::vector<RingElement>> ideal_membership_cofactors(
    const RingElement& f, const Ideal& ideal);

/// (a : b) = { f : f*b ⊆ a }. By convention (a : (0)) = (1).
Ideal ideal_quotient(const Ideal& a, const Ideal& b);

struct RadicalDecision {
  bool member = false;
  /// False only for a negative answer from the bounded power search in the
  /// quadratic ring, where no Rabinowitsch analogue is implemented.
  bool certified = true;
  int bound_used = 0;
};
RadicalDecision radical_membership(const RingElement& f, const Ideal& ideal,
                                   int quadratic_power_bound = 8);

bool ideal_equals(const Ideal& a, const Ideal& b);

/// Cofactors expressing 1 over the original generator list, or nullopt.
std::optional<std::vector<RingElement>> ideal_contains_one(const Ideal& ideal);

struct PrincipalityResult {
  std::optional<RingElement> generator;
  /// True when a missing generator proves the ideal non-principal (all kinds
  /// except the cuspidal quotient, where the search is heuristic).
  bool certified = true;
};
PrincipalityResult principal_generator(const Ideal& ideal);

}  // namespace ringstab
