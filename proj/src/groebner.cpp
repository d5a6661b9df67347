#include "ringstab/groebner.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "ringstab/errors.hpp"

namespace ringstab {

bool GroebnerBasis::contains_unit() const {
  for (const auto& e : elems)
    if (e.p.is_constant() && !e.p.is_zero()) return true;
  return false;
}

namespace {

struct Pair {
  std::size_t i, j;
  Mono lcm;
};

// Reduces f (and its generator expression) to normal form modulo basis.
void reduce_full(Poly& f, std::vector<Poly>& fexpr,
                 const std::vector<GBElem>& basis, const MonoOrder& order,
                 bool track) {
  Poly rem(f.arity());
  while (!f.is_zero()) {
    Mono lm = f.leading_mono(order);
    mpq_class lc = f.terms().at(lm);
    bool reduced = false;
    for (const auto& b : basis) {
      if (b.p.is_zero()) continue;
      Mono blm = b.p.leading_mono(order);
      if (!mono_divides(blm, lm)) continue;
      mpq_class qc = lc / b.p.terms().at(blm);
      Poly qterm = Poly::term(f.arity(), mono_div(lm, blm), qc);
      f = f - qterm * b.p;
      if (track)
        for (std::size_t k = 0; k < fexpr.size(); ++k)
          fexpr[k] = fexpr[k] - qterm * b.expr[k];
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.add_term(lm, lc);
      f = f - Poly::term(f.arity(), lm, lc);
    }
  }
  f = rem;
}

}  // namespace

GroebnerBasis groebner(const std::vector<Poly>& gens, const MonoOrder& order,
                       bool track_cofactors) {
  GroebnerBasis gb;
  gb.order = order;
  gb.gen_count = gens.size();
  int arity = gens.empty() ? 0 : gens[0].arity();

  std::vector<GBElem> basis;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].is_zero()) continue;
    GBElem e;
    e.p = gens[j];
    if (track_cofactors) {
      e.expr.assign(gens.size(), Poly(arity));
      e.expr[j] = Poly::constant(arity, 1);
    }
    basis.push_back(std::move(e));
  }

  auto make_pair = [&](std::size_t i, std::size_t j) {
    Pair p;
    p.i = i;
    p.j = j;
    p.lcm = mono_lcm(basis[i].p.leading_mono(order),
                     basis[j].p.leading_mono(order));
    return p;
  };

  std::vector<Pair> pending;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      pending.push_back(make_pair(i, j));

  auto in_pending = [&](std::size_t a, std::size_t b) {
    for (const auto& p : pending)
      if ((p.i == a && p.j == b) || (p.i == b && p.j == a)) return true;
    return false;
  };

  while (!pending.empty()) {
    // Normal selection: smallest lcm under the order, ties by indices.
    std::size_t best = 0;
    for (std::size_t k = 1; k < pending.size(); ++k) {
      const Pair& a = pending[k];
      const Pair& b = pending[best];
      if (order.less(a.lcm, b.lcm) ||
          (a.lcm == b.lcm && std::tie(a.i, a.j) < std::tie(b.i, b.j)))
        best = k;
    }
    Pair pr = pending[best];
    pending.erase(pending.begin() + best);

    Mono lmi = basis[pr.i].p.leading_mono(order);
    Mono lmj = basis[pr.j].p.leading_mono(order);
    // Coprime leading terms: S-polynomial reduces to zero.
    if (pr.lcm == mono_mul(lmi, lmj)) continue;
    // Chain criterion: an intermediate k whose leading term divides the lcm,
    // with both side pairs already handled.
    bool skip = false;
    for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!mono_divides(basis[k].p.leading_mono(order), pr.lcm)) continue;
      if (!in_pending(pr.i, k) && !in_pending(pr.j, k)) skip = true;
    }
    if (skip) continue;

    // S-polynomial.
    mpq_class ci = basis[pr.i].p.terms().at(lmi);
    mpq_class cj = basis[pr.j].p.terms().at(lmj);
    Poly mi = Poly::term(arity, mono_div(pr.lcm, lmi), mpq_class(1) / ci);
    Poly mj = Poly::term(arity, mono_div(pr.lcm, lmj), mpq_class(1) / cj);
    Poly s = mi * basis[pr.i].p - mj * basis[pr.j].p;
    std::vector<Poly> sexpr;
    if (track_cofactors) {
      sexpr.assign(gens.size(), Poly(arity));
      for (std::size_t k = 0; k < gens.size(); ++k)
        sexpr[k] = mi * basis[pr.i].expr[k] - mj * basis[pr.j].expr[k];
    }
    reduce_full(s, sexpr, basis, order, track_cofactors);
    if (s.is_zero()) continue;
    basis.push_back({std::move(s), std::move(sexpr)});
    for (std::size_t k = 0; k + 1 < basis.size(); ++k)
      pending.push_back(make_pair(k, basis.size() - 1));
  }

  // Minimal basis: drop elements whose leading monomial is divisible by the
  // leading monomial of another kept element.
  std::vector<bool> keep(basis.size(), true);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Mono lmi = basis[i].p.leading_mono(order);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j || !keep[j]) continue;
      Mono lmj = basis[j].p.leading_mono(order);
      if (mono_divides(lmj, lmi) && (lmj != lmi || j < i)) {
        keep[i] = false;
        break;
      }
    }
  }
  std::vector<GBElem> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (keep[i]) minimal.push_back(std::move(basis[i]));

  // Monic + tail reduction against the other elements.
  for (auto& e : minimal) {
    mpq_class lc = e.p.leading_coeff(order);
    mpq_class inv = mpq_class(1) / lc;
    e.p = e.p * inv;
    for (auto& c : e.expr) c = c * inv;
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<GBElem> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Poly p = minimal[i].p;
    std::vector<Poly> expr = minimal[i].expr;
    reduce_full(p, expr, others, order, track_cofactors);
    minimal[i].p = std::move(p);
    minimal[i].expr = std::move(expr);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const GBElem& a, const GBElem& b) {
    return order.less(a.p.leading_mono(order), b.p.leading_mono(order));
  });
  gb.elems = std::move(minimal);
  return gb;
}

Poly gb_normal_form(const Poly& f, const GroebnerBasis& gb,
                    std::vector<Poly>* cofactors_on_gens) {
  std::vector<Poly> quotients;
  std::vector<Poly> basis_polys;
  for (const auto& e : gb.elems) basis_polys.push_back(e.p);
  Poly rem = poly_divmod(f, basis_polys, gb.order,
                         cofactors_on_gens ? &quotients : nullptr);
  if (cofactors_on_gens) {
    cofactors_on_gens->assign(gb.gen_count, Poly(f.arity()));
    for (std::size_t i = 0; i < gb.elems.size(); ++i) {
      if (quotients[i].is_zero()) continue;
      assert(!gb.elems[i].expr.empty() || gb.gen_count == 0);
      for (std::size_t j = 0; j < gb.gen_count; ++j)
        (*cofactors_on_gens)[j] =
            (*cofactors_on_gens)[j] + quotients[i] * gb.elems[i].expr[j];
    }
  }
  return rem;
}

std::vector<Poly> poly_ideal_intersect(const std::vector<Poly>& a,
                                       const std::vector<Poly>& b) {
  int arity = 0;
  for (const auto& p : a) arity = p.arity();
  for (const auto& p : b) arity = p.arity();
  // t*a_i and (1-t)*b_j in Q[t, x...]; elements free of t span a ∩ b.
  Poly t = Poly::variable(arity + 1, 0);
  Poly one_minus_t = Poly::constant(arity + 1, 1) - t;
  std::vector<Poly> gens;
  for (const auto& p : a) gens.push_back(t * p.insert_variable_front());
  for (const auto& p : b)
    gens.push_back(one_minus_t * p.insert_variable_front());
  MonoOrder elim{1};
  GroebnerBasis gb = groebner(gens, elim, false);
  std::vector<Poly> result;
  for (const auto& e : gb.elems)
    if (!e.p.involves_front_variable()) result.push_back(e.p.drop_variable_front());
  return result;
}

std::vector<Poly> poly_ideal_quotient(const std::vector<Poly>& a,
                                      const std::vector<Poly>& b) {
  int arity = 0;
  for (const auto& p : a) arity = p.arity();
  for (const auto& p : b) arity = p.arity();
  std::vector<Poly> result;
  bool first = true;
  for (const auto& bj : b) {
    if (bj.is_zero()) continue;
    std::vector<Poly> inter = poly_ideal_intersect(a, {bj});
    std::vector<Poly> qj;
    for (const auto& h : inter) {
      auto q = poly_exact_div(h, bj);
      assert(q.has_value());
      qj.push_back(*q);
    }
    if (first) {
      result = std::move(qj);
      first = false;
    } else {
      result = poly_ideal_intersect(result, qj);
    }
  }
  if (first) {
    // b is the zero ideal: the condition is vacuous, quotient is (1).
    result.push_back(Poly::constant(arity, 1));
  }
  return result;
}

bool poly_radical_membership(const Poly& f, const std::vector<Poly>& a) {
  int arity = f.arity();
  std::vector<Poly> gens;
  for (const auto& p : a) gens.push_back(p.insert_variable_front());
  Poly t = Poly::variable(arity + 1, 0);
  gens.push_back(Poly::constant(arity + 1, 1) - t * f.insert_variable_front());
  MonoOrder order;
  GroebnerBasis gb = groebner(gens, order, false);
  return gb.contains_unit();
}

}  // namespace ringstab
