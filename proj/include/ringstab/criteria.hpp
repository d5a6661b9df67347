#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringstab/plant.hpp"

namespace ringstab {

/// Stacked matrix T = [N^t D^t]^t of the right fraction ((m+n) x m).
Matrix stacked_T(const Plant& p);
/// W = [N~ D~] of the left fraction (n x (m+n)); derives the left pair.
Matrix stacked_W(const Plant& p);

struct WitnessTerm {
  IndexSet I;
  RingElement x;  // element of ((t_I) : t)
  RingElement r;  // multiplier; sum r*x == 1
};

/// Outcome of the quotient-ideal stabilizability test: the full-size minor
/// ideal t, the minors t_I, the quotients ((t_I) : t), and (when the sum is
/// the whole ring) a witness combination of 1.
struct StabilizabilityReport {
  bool verdict = false;
  Ideal minor_ideal;
  std::map<IndexSet, RingElement> minors;
  std::map<IndexSet, Ideal> quotient_ideals;
  std::optional<std::vector<WitnessTerm>> witness;
  /// Raw cofactor expansion of 1 over the quotient-sum generators.
  std::vector<std::pair<RingElement, RingElement>> witness_cofactors;
  std::string negative_certificate;

  StabilizabilityReport(Ring ring)
      : minor_ideal(std::move(ring), {}) {}
};

std::pair<Ideal, std::map<IndexSet, RingElement>> minor_ideal(const Plant& p);
std::pair<Ideal, std::map<IndexSet, RingElement>> minor_ideal_W(const Plant& p);

/// Quotients ((t_I) : t), their sum, and the witness; verdict filled by
/// is_stabilizable.
StabilizabilityReport quotient_sum(const Plant& p);
StabilizabilityReport is_stabilizable(const Plant& p);

/// Projectivity of (a_1, ..., a_k) via sum_i ((a_i) : (a_1..a_k)) = R.
struct ProjectivityResult {
  bool projective = false;
  std::vector<std::pair<RingElement, RingElement>> witness;  // (x_i, gen a_i)
};
ProjectivityResult is_ideal_projective(const std::vector<RingElement>& gens,
                                       const Ring& ring);

/// Reduced minors a_I = t_I / gcd(all t_I); UFD kinds only.
struct ReducedMinors {
  RingElement gcd_of_minors;
  std::map<IndexSet, RingElement> reduced;
};
ReducedMinors reduced_minors(const Plant& p);
bool reduced_minors_generate(const Plant& p);

/// Scalar-denominator normalization (N*adj(D), det(D)*E) used by the
/// elementary-factor machinery.
Plant scalar_denominator_form(const Plant& p);

/// f_I: squarefree part of the lcm of denominators of T (Delta_I T)^{-1};
/// UFD kinds, I with nonsingular selection only.
RingElement elementary_factor(const Plant& p, const IndexSet& I);
bool elementary_factors_coprime(const Plant& p);

/// Lambda_PI = { l : l*T = K * Delta_I T for some K over A }, computed as
/// the quotient ((t_I) : (entries of T*adj(Delta_I T))); the zero ideal
/// when t_I = 0.
Ideal generalized_elementary_factor(const Plant& p, const IndexSet& I);
bool gef_sum_is_ring(const Plant& p);

/// Reconstructs K with l*T = K*Delta_I T for a member l of Lambda_PI and
/// verifies the matrix identity exactly.
bool gef_membership_sound(const Plant& p, const IndexSet& I,
                          const RingElement& lambda);

struct CrossCheckItem {
  IndexSet I;
  std::string check;   // which relation was examined
  std::string status;  // "ok", "violation", "inconclusive"
  std::string detail;
};

struct CrossCheckReport {
  bool all_ok = true;
  bool inconclusive = false;
  int radical_bound = 8;
  std::vector<CrossCheckItem> items;
};

/// Radical/equality relations between the factor notions: the radical of
/// Lambda_PI vs the radical of ((t_I) : t) on every ring; (a_I) = ((t_I):t)
/// exactly and squarefree(f_I) associate to squarefree(a_I) on UFD kinds
/// (computed on the scalar-denominator form).
CrossCheckReport radical_cross_checks(const Plant& p, int radical_bound = 8);

/// Isomorphism certificate for two ideals viewed as modules: both principal
/// with associate generators, or c*a == d*b for generators c of b and d of a.
enum class IsoVerdict { Isomorphic, Inconclusive };
struct IsoCertificate {
  IsoVerdict verdict = IsoVerdict::Inconclusive;
  std::string detail;
};
IsoCertificate ideal_iso_certificate(const Ideal& a, const Ideal& b);

}  // namespace ringstab
