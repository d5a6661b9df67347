#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ringstab {

/// Exponent vector; the length equals the arity of the owning polynomial.
using Mono = std::vector<unsigned>;

unsigned mono_degree(const Mono& m);
Mono mono_mul(const Mono& a, const Mono& b);
bool mono_divides(const Mono& a, const Mono& b);  // a | b
Mono mono_div(const Mono& b, const Mono& a);      // b / a, assumes a | b
Mono mono_lcm(const Mono& a, const Mono& b);

/// Monomial order: graded reverse lexicographic, optionally preceded by a
/// grevlex block on the first `elim` variables (a product order, which makes
/// those variables eliminable).
struct MonoOrder {
  int elim = 0;
  bool less(const Mono& a, const Mono& b) const;
  bool greater(const Mono& a, const Mono& b) const { return less(b, a); }
};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept in a map under a fixed structural key order; algorithms
/// that need a monomial order (division, Buchberger) receive one explicitly.
class Poly {
 public:
  Poly() : arity_(0) {}
  explicit Poly(int arity) : arity_(arity) {}

  static Poly constant(int arity, const mpq_class& c);
  static Poly variable(int arity, int index, unsigned exp = 1);
  static Poly term(int arity, const Mono& m, const mpq_class& c);

  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  mpq_class constant_term() const;
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Mono, mpq_class>& terms() const { return terms_; }

  void add_term(const Mono& m, const mpq_class& c);

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const mpq_class& c) const;
  bool operator==(const Poly& o) const = default;

  /// Leading monomial/coefficient under the given order; zero poly forbidden.
  Mono leading_mono(const MonoOrder& order) const;
  mpq_class leading_coeff(const MonoOrder& order) const;
  unsigned total_degree() const;
  unsigned degree_in(int var) const;

  Poly derivative(int var) const;
  mpq_class evaluate(const std::vector<mpq_class>& point) const;

  /// Arity adjustments used by elimination-order computations.
  Poly insert_variable_front() const;  // arity+1; new variable has index 0
  Poly drop_variable_front() const;    // requires exponent 0 in every term
  bool involves_front_variable() const;

 private:
  int arity_;
  std::map<Mono, mpq_class> terms_;  // no zero coefficients
};

/// Multivariate division of f by the ordered list g; returns the remainder
/// and, when quotients != nullptr, the quotients with
/// f = sum quotients[i]*g[i] + remainder.
Poly poly_divmod(const Poly& f, const std::vector<Poly>& g,
                 const MonoOrder& order, std::vector<Poly>* quotients);

/// Exact division: q with f = q*g, or nullopt when g does not divide f.
std::optional<Poly> poly_exact_div(const Poly& f, const Poly& g);

/// GCD over Q[x1..xn] by recursion on the last variable with primitive
/// pseudo-remainder sequences. Result is normalized: integer coefficients
/// with content 1 and positive leading (grevlex) coefficient.
Poly poly_gcd(const Poly& f, const Poly& g);

/// Product of the distinct irreducible factors, normalized as poly_gcd.
Poly poly_squarefree_part(const Poly& f);

/// Normalizes to integer-primitive form with positive leading coefficient.
Poly poly_normalize(const Poly& f);

/// Rendering under grevlex-descending term order; see the docs for the
/// canonical textual form of ring elements.
std::string poly_to_string(const Poly& f, const std::vector<std::string>& vars);

std::string mpq_to_string(const mpq_class& q);

}  // namespace ringstab
