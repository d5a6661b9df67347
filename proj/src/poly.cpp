#include "ringstab/poly.hpp"

#include <algorithm>
#include <cassert>

#include "ringstab/errors.hpp"

namespace ringstab {

unsigned mono_degree(const Mono& m) {
  unsigned d = 0;
  for (unsigned e : m) d += e;
  return d;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool mono_divides(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Mono mono_div(const Mono& b, const Mono& a) {
  Mono r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - a[i];
  return r;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

namespace {

// Grevlex on a contiguous block [lo, hi): -1 if a < b, 0, +1.
int grevlex_cmp_block(const Mono& a, const Mono& b, std::size_t lo,
                      std::size_t hi) {
  unsigned da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i > lo; --i) {
    unsigned ea = a[i - 1], eb = b[i - 1];
    if (ea != eb) return ea > eb ? -1 : 1;
  }
  return 0;
}

}  // namespace

bool MonoOrder::less(const Mono& a, const Mono& b) const {
  std::size_t e = static_cast<std::size_t>(elim);
  if (e > 0) {
    int c = grevlex_cmp_block(a, b, 0, std::min(e, a.size()));
    if (c != 0) return c < 0;
  }
  return grevlex_cmp_block(a, b, e, a.size()) < 0;
}

Poly Poly::constant(int arity, const mpq_class& c) {
  Poly p(arity);
  p.add_term(Mono(arity, 0), c);
  return p;
}

Poly Poly::variable(int arity, int index, unsigned exp) {
  Poly p(arity);
  Mono m(arity, 0);
  m[index] = exp;
  p.add_term(m, 1);
  return p;
}

Poly Poly::term(int arity, const Mono& m, const mpq_class& c) {
  Poly p(arity);
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0;
}

mpq_class Poly::constant_term() const {
  auto it = terms_.find(Mono(arity_, 0));
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void Poly::add_term(const Mono& m, const mpq_class& c) {
  if (sgn(c) == 0) return;
  assert(static_cast<int>(m.size()) == arity_);
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(arity_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(arity_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(mono_mul(m1, m2), c1 * c2);
  return r;
}

Poly Poly::operator*(const mpq_class& c) const {
  Poly r(arity_);
  if (sgn(c) == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

Mono Poly::leading_mono(const MonoOrder& order) const {
  assert(!terms_.empty());
  const Mono* best = nullptr;
  for (const auto& [m, c] : terms_)
    if (!best || order.less(*best, m)) best = &m;
  return *best;
}

mpq_class Poly::leading_coeff(const MonoOrder& order) const {
  return terms_.at(leading_mono(order));
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
  return d;
}

unsigned Poly::degree_in(int var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

Poly Poly::derivative(int var) const {
  Poly r(arity_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Mono m2 = m;
    m2[var] -= 1;
    r.add_term(m2, c * m[var]);
  }
  return r;
}

mpq_class Poly::evaluate(const std::vector<mpq_class>& point) const {
  mpq_class total = 0;
  for (const auto& [m, c] : terms_) {
    mpq_class v = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (unsigned e = 0; e < m[i]; ++e) v *= point[i];
    total += v;
  }
  return total;
}

Poly Poly::insert_variable_front() const {
  Poly r(arity_ + 1);
  for (const auto& [m, c] : terms_) {
    Mono m2(arity_ + 1, 0);
    std::copy(m.begin(), m.end(), m2.begin() + 1);
    r.terms_.emplace(std::move(m2), c);
  }
  return r;
}

Poly Poly::drop_variable_front() const {
  Poly r(arity_ - 1);
  for (const auto& [m, c] : terms_) {
    assert(m[0] == 0);
    r.terms_.emplace(Mono(m.begin() + 1, m.end()), c);
  }
  return r;
}

bool Poly::involves_front_variable() const {
  for (const auto& [m, c] : terms_)
    if (m[0] != 0) return true;
  return false;
}

Poly poly_divmod(const Poly& f, const std::vector<Poly>& g,
                 const MonoOrder& order, std::vector<Poly>* quotients) {
  if (quotients) quotients->assign(g.size(), Poly(f.arity()));
  Poly rem(f.arity());
  Poly work = f;
  while (!work.is_zero()) {
    Mono lm = work.leading_mono(order);
    mpq_class lc = work.terms().at(lm);
    bool reduced = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i].is_zero()) continue;
      Mono glm = g[i].leading_mono(order);
      if (!mono_divides(glm, lm)) continue;
      mpq_class qc = lc / g[i].terms().at(glm);
      Poly qterm = Poly::term(f.arity(), mono_div(lm, glm), qc);
      work = work - qterm * g[i];
      if (quotients) (*quotients)[i] = (*quotients)[i] + qterm;
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.add_term(lm, lc);
      Poly lt = Poly::term(f.arity(), lm, lc);
      work = work - lt;
    }
  }
  return rem;
}

std::optional<Poly> poly_exact_div(const Poly& f, const Poly& g) {
  if (g.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  MonoOrder order;
  std::vector<Poly> q;
  Poly rem = poly_divmod(f, {g}, order, &q);
  if (!rem.is_zero()) return std::nullopt;
  return q[0];
}

Poly poly_normalize(const Poly& f) {
  if (f.is_zero()) return f;
  // Scale so all coefficients are integers with gcd 1.
  mpz_class den_lcm = 1;
  for (const auto& [m, c] : f.terms())
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            c.get_den().get_mpz_t());
  mpz_class num_gcd = 0;
  for (const auto& [m, c] : f.terms()) {
    mpz_class scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  mpq_class scale(den_lcm, num_gcd);
  scale.canonicalize();
  Poly r = f * scale;
  MonoOrder order;
  if (sgn(r.leading_coeff(order)) < 0) r = -r;
  return r;
}

namespace {

// View of f as a univariate polynomial in its last variable, with
// coefficients in the remaining variables.
std::map<unsigned, Poly> last_var_view(const Poly& f) {
  int n = f.arity();
  std::map<unsigned, Poly> view;
  for (const auto& [m, c] : f.terms()) {
    unsigned d = m[n - 1];
    Mono rest(m.begin(), m.end() - 1);
    auto it = view.find(d);
    if (it == view.end()) it = view.emplace(d, Poly(n - 1)).first;
    it->second.add_term(rest, c);
  }
  return view;
}

Poly lift_last(const Poly& p, int arity) {
  // Embed an (arity-1)-variate polynomial as a degree-0 coefficient.
  Poly f(arity);
  for (const auto& [m, c] : p.terms()) {
    Mono full = m;
    full.push_back(0);
    f.add_term(full, c);
  }
  return f;
}

Poly poly_content_last(const Poly& f);

// Primitive part with respect to the last variable.
Poly poly_primitive_last(const Poly& f, Poly* content_out) {
  Poly cont = poly_content_last(f);
  if (content_out) *content_out = cont;
  if (f.is_zero()) return f;
  auto q = poly_exact_div(f, lift_last(cont, f.arity()));
  assert(q.has_value());
  return *q;
}

Poly poly_content_last(const Poly& f) {
  Poly cont(f.arity() - 1);
  for (const auto& [d, coeff] : last_var_view(f))
    cont = poly_gcd(cont, coeff);
  return cont;
}

// Standard pseudo-remainder in the last variable:
// lc(g)^(deg f - deg g + 1) * f = q*g + prem(f, g).
Poly poly_prem_last(const Poly& f, const Poly& g) {
  int n = f.arity();
  unsigned dg = g.degree_in(n - 1);
  Poly glead = lift_last(last_var_view(g).rbegin()->second, n);
  Poly r = f;
  int e = static_cast<int>(f.degree_in(n - 1)) - static_cast<int>(dg) + 1;
  while (!r.is_zero() && r.degree_in(n - 1) >= dg) {
    unsigned dr = r.degree_in(n - 1);
    Poly rlead = lift_last(last_var_view(r).rbegin()->second, n);
    Mono shift(n, 0);
    shift[n - 1] = dr - dg;
    r = r * glead - g * (rlead * Poly::term(n, shift, 1));
    --e;
  }
  for (int k = 0; k < e; ++k) r = r * glead;
  return r;
}

Poly poly_pow(const Poly& p, unsigned e) {
  Poly acc = Poly::constant(p.arity(), 1);
  for (unsigned i = 0; i < e; ++i) acc = acc * p;
  return acc;
}

}  // namespace

namespace {

// Exponent-wise minimum over all terms: the largest monomial dividing p.
Mono common_monomial(const Poly& p) {
  Mono m(p.arity(), 0);
  bool first = true;
  for (const auto& [mono, c] : p.terms()) {
    if (first) {
      m = mono;
      first = false;
    } else {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], mono[i]);
    }
  }
  return m;
}

}  // namespace

Poly poly_gcd(const Poly& f, const Poly& g) {
  if (f.is_zero()) return poly_normalize(g);
  if (g.is_zero()) return poly_normalize(f);
  int n = f.arity();
  if (n == 0) return Poly::constant(0, 1);
  if (f.is_constant() || g.is_constant()) return Poly::constant(n, 1);
  if (f == g) return poly_normalize(f);

  if (f.term_count() == 1 || g.term_count() == 1) {
    Mono m = common_monomial(f);
    Mono mg = common_monomial(g);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], mg[i]);
    return Poly::term(n, m, 1);
  }

  if (n == 1) {
    // Euclid over Q[x].
    MonoOrder order;
    Poly a = f, b = g;
    while (!b.is_zero()) {
      Poly r = poly_divmod(a, {b}, order, nullptr);
      a = std::move(b);
      b = std::move(r);
    }
    return poly_normalize(a);
  }

  Poly cf, cg;
  // Subresultant remainder sequence in the last variable; the scale factors
  // g_*h^delta keep coefficient growth polynomial without per-step content
  // computations.
  Poly a = poly_normalize(poly_primitive_last(f, &cf));
  Poly b = poly_normalize(poly_primitive_last(g, &cg));
  if (a.degree_in(n - 1) < b.degree_in(n - 1)) std::swap(a, b);
  Poly scale_g = Poly::constant(n, 1);
  Poly scale_h = Poly::constant(n, 1);
  while (true) {
    unsigned delta = a.degree_in(n - 1) - b.degree_in(n - 1);
    Poly r = poly_prem_last(a, b);
    if (r.is_zero()) break;
    a = b;
    auto q = poly_exact_div(r, scale_g * poly_pow(scale_h, delta));
    assert(q.has_value());
    b = std::move(*q);
    scale_g = lift_last(last_var_view(a).rbegin()->second, n);
    if (delta > 0) {
      Poly num = poly_pow(scale_g, delta);
      if (delta > 1) {
        auto h = poly_exact_div(num, poly_pow(scale_h, delta - 1));
        assert(h.has_value());
        scale_h = std::move(*h);
      } else {
        scale_h = std::move(num);
      }
    }
    if (b.degree_in(n - 1) == 0) break;
  }
  Poly result = poly_normalize(poly_primitive_last(b, nullptr));
  Poly cont_gcd = poly_gcd(cf, cg);
  return poly_normalize(result * lift_last(cont_gcd, n));
}

Poly poly_squarefree_part(const Poly& f) {
  if (f.is_zero()) fail(ErrorCode::DivisionByZero, "squarefree part of zero");
  Poly g = f;
  Poly d(f.arity());
  for (int v = 0; v < f.arity(); ++v) d = poly_gcd(d, f.derivative(v));
  Poly common = poly_gcd(f, d);
  auto q = poly_exact_div(f, common);
  assert(q.has_value());
  return poly_normalize(*q);
}

std::string mpq_to_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string poly_to_string(const Poly& f,
                           const std::vector<std::string>& vars) {
  if (f.is_zero()) return "0";
  MonoOrder order;
  std::vector<const std::pair<const Mono, mpq_class>*> sorted;
  for (const auto& t : f.terms()) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [&](auto* a, auto* b) { return order.greater(a->first, b->first); });
  std::string out;
  bool first = true;
  for (auto* t : sorted) {
    const Mono& m = t->first;
    mpq_class c = t->second;
    bool neg = sgn(c) < 0;
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    mpq_class a = abs(c);
    std::string monostr;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!monostr.empty()) monostr += "*";
      monostr += vars[i];
      if (m[i] > 1) monostr += "^" + std::to_string(m[i]);
    }
    if (monostr.empty()) {
      out += mpq_to_string(a);
    } else if (a == 1) {
      out += monostr;
    } else {
      out += mpq_to_string(a) + "*" + monostr;
    }
  }
  return out;
}

}  // namespace ringstab
