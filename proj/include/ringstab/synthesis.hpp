#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringstab/criteria.hpp"

namespace ringstab {

struct Limits {
  int k_div = 32;        // divisibility exponent bound for clearing powers
  int radical_bound = 8; // power bound for quadratic radical membership
};

/// Right-coprime factorization of the plant over the localization A_x:
/// T'' = num / x^k with Delta_{I0} T'' = E, so the split rows of Delta_{I0}
/// give Ytilde*N0 + Xtilde*D0 = E over A_x.
struct LocalFactorization {
  IndexSet I0;
  RingElement x;   // localization witness, a member of ((t_{I0}) : t)
  RingElement t;   // t_{I0}
  Matrix num;      // cleared numerator of T'' (stack rows x stack cols)
  int k = 0;       // clearing exponent: T'' = num / x^k
  Matrix Ytilde;   // m x n, rows of Delta_{I0} (left split)
  Matrix Xtilde;   // m x m (right split)
  int top_rows = 0;  // rows of the numerator block (n for T, m for W^t)

  FracMatrix N0() const;  // top block of T'' over F
  FracMatrix D0() const;  // bottom block of T'' over F
};

/// Extraction from the proof of the projectivity criterion: forms
/// T' = T*adj(Delta_{I0} T), divides by t_{I0} over A_x and splits.
LocalFactorization local_coprime_factorization(const Plant& p,
                                               const IndexSet& I0,
                                               const RingElement& x,
                                               const Limits& limits = {});

/// Mirror construction on W^t, producing a left-coprime factorization
/// P = D~_0^{-1} N~_0 over A_x.
struct LeftLocalFactorization {
  IndexSet J0;
  RingElement x;
  RingElement w;   // w_{J0}
  FracMatrix Nt0;  // n x m over F
  FracMatrix Dt0;  // n x n over F
  int k = 0;       // clearing exponent
};
LeftLocalFactorization local_left_factorization(const Plant& p,
                                                const IndexSet& J0,
                                                const RingElement& x,
                                                const Limits& limits = {});

/// Determinant repair: a 0/1 matrix R such that det(A + R*B) lies
/// outside `avoid`, built from a full-size minor of [A^t B^t]^t outside
/// `avoid` with as few B-rows as possible. Returns the zero matrix whenever
/// det(A) is already outside.
Matrix repair_determinant(const Matrix& A, const Matrix& B, const Ideal& avoid);

/// Multipliers r with sum r_i * q_i = 1. When the leading product r_1 * q_1
/// lands inside `avoid` (q_1 itself outside), the combination is reindexed
/// so that it moves out; used to keep the distinguished witness usable for
/// the repair step.
std::vector<RingElement> partition_of_unity(const Ring& ring,
                                            const std::vector<RingElement>& q,
                                            const Ideal& avoid);

struct SynthesisStep {
  IndexSet I;
  RingElement x;  // witness product r_i * x_i from the report
  RingElement r;  // partition multiplier: sum r_i * q_i = 1
  RingElement q;  // clearing power x^{e_i}
  int clearing_power = 0;
};

struct ControllerCertificate {
  FracMatrix C;  // m x n
  FracMatrix H;  // (m+n) x (m+n)
  bool det_condition = false;       // det(E + PC) != 0
  bool all_entries_in_ring = false; // H(P,C) over A
  bool repair_applied = false;
  std::optional<bool> controller_causal;  // only when Z is configured
  std::vector<SynthesisStep> steps;
  std::vector<std::string> notes;

  bool stable() const { return det_condition && all_entries_in_ring; }
};

/// Constructive synthesis: local factorizations at the witnesses, the
/// partition-of-unity gluing matrix, the determinant repair when the glued
/// denominator block is Z-singular, and C = H22^{-1} H21.
ControllerCertificate glue_controller(const Plant& p,
                                      const StabilizabilityReport& report,
                                      const Limits& limits = {});

/// Closed-loop transfer matrix of the feedback pair, exactly over F.
FracMatrix h_matrix(const FracMatrix& P, const FracMatrix& C);

/// Independent stability check: recomputes H(P,C) from scratch and tests the
/// determinant condition plus entrywise ring membership.
ControllerCertificate verify_stabilizing(const Plant& p, const FracMatrix& C);

/// Relation between the full-size minor ideals of P, C and H(P,C): the
/// product ideal t_P * t_C against t_{H(P,C)} from the right fraction
/// H = S * Q^{-1}.
struct ProductCheckReport {
  Ideal t_plant;
  Ideal t_controller;
  Ideal product;
  Ideal t_closed_loop;
  IsoCertificate iso;
};
ProductCheckReport minor_ideal_product_check(const Plant& p,
                                             const FracMatrix& C);

}  // namespace ringstab
