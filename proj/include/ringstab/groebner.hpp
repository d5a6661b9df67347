#pragma once

#include <optional>
#include <vector>

#include "ringstab/poly.hpp"

namespace ringstab {

/// Basis element with its expression over the input generators:
/// p == sum_j expr[j] * gens[j].
struct GBElem {
  Poly p;
  std::vector<Poly> expr;
};

struct GroebnerBasis {
  MonoOrder order;
  std::size_t gen_count = 0;
  std::vector<GBElem> elems;  // reduced basis, monic, sorted by leading mono

  bool contains_unit() const;
};

/// Buchberger with the coprime-leading-term and chain pair criteria, followed
/// by full inter-reduction. When track_cofactors is false the expr vectors
/// are left empty (cheaper; used by intermediate eliminations).
GroebnerBasis groebner(const std::vector<Poly>& gens, const MonoOrder& order,
                       bool track_cofactors = true);

/// Remainder of f modulo the basis. When cofactors_on_gens != nullptr (which
/// requires a tracked basis) and the remainder is zero, the vector is filled
/// with c_j such that f == sum_j c_j * gens[j].
Poly gb_normal_form(const Poly& f, const GroebnerBasis& gb,
                    std::vector<Poly>* cofactors_on_gens = nullptr);

/// Ideal intersection via an auxiliary variable: t*a + (1-t)*b, eliminate t.
std::vector<Poly> poly_ideal_intersect(const std::vector<Poly>& a,
                                       const std::vector<Poly>& b);

/// Quotient (a : b) for finitely generated polynomial ideals.
std::vector<Poly> poly_ideal_quotient(const std::vector<Poly>& a,
                                      const std::vector<Poly>& b);

/// Radical membership via the Rabinowitsch trick: f in sqrt(a) iff
/// 1 in a + (1 - t*f).
bool poly_radical_membership(const Poly& f, const std::vector<Poly>& a);

}  // namespace ringstab
