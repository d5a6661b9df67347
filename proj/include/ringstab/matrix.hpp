#pragma once

#include <map>
#include <string>
#include <vector>

#include "ringstab/fraction.hpp"
#include "ringstab/ring.hpp"

namespace ringstab {

/// Sorted set of 1-based row indices selecting a full-size square submatrix;
/// an element of the family I (cardinality m) or J (cardinality n).
struct IndexSet {
  std::vector<int> idx;

  bool operator==(const IndexSet&) const = default;
  bool operator<(const IndexSet& o) const { return idx < o.idx; }
  bool contains(int i) const;
  std::string to_string() const;  // "{1,3}"
};

/// All C(width, k) index sets in lexicographic order. The enumeration order
/// is part of the report contract.
std::vector<IndexSet> all_index_sets(int k, int width);

/// The bijection between m-subsets and n-subsets of [1, m+n] under which the
/// minors of T and W correspond, and its inverse.
IndexSet tau(const IndexSet& I, int m, int n);
IndexSet tau_inv(const IndexSet& J, int m, int n);

/// Exact dense matrix over A.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(Ring ring, int rows, int cols);  // zero-filled
  static Matrix identity(const Ring& ring, int n);

  const Ring& ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const RingElement& at(int r, int c) const;
  void set(int r, int c, RingElement v);

  bool operator==(const Matrix& o) const;

 private:
  Ring ring_;
  int rows_, cols_;
  std::vector<RingElement> e_;
};

Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_scale(const RingElement& c, const Matrix& a);
Matrix mat_neg(const Matrix& a);
Matrix transpose(const Matrix& a);
bool mat_is_zero(const Matrix& a);

/// Exact determinant: fraction-free Bareiss elimination where exact division
/// is cheap (integers, rationals, polynomials), cofactor expansion otherwise.
RingElement det(const Matrix& m);

/// adj(M) with M * adj(M) = det(M) * E (checked in debug builds).
Matrix adjugate(const Matrix& m);

/// Row-selection matrix: delta_matrix(I, w) * M extracts rows I of M.
Matrix delta_matrix(const IndexSet& I, int width, const Ring& ring);

/// Rows of M selected by I, as a square block (|I| = cols expected by use).
Matrix select_rows(const Matrix& m, const IndexSet& I);

/// All det(delta_matrix(I) * M) for the index sets of size k, keyed by I in
/// enumeration order.
std::map<IndexSet, RingElement> full_size_minors(const Matrix& m, int k);

/// Exact dense matrix over the total ring of fractions.
class FracMatrix {
 public:
  FracMatrix() : rows_(0), cols_(0) {}
  FracMatrix(Ring ring, int rows, int cols);
  static FracMatrix identity(const Ring& ring, int n);
  static FracMatrix from_ring_matrix(const Matrix& m);

  const Ring& ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FractionElement& at(int r, int c) const;
  void set(int r, int c, FractionElement v);

  bool operator==(const FracMatrix& o) const;

 private:
  Ring ring_;
  int rows_, cols_;
  std::vector<FractionElement> e_;
};

FracMatrix frac_add(const FracMatrix& a, const FracMatrix& b);
FracMatrix frac_sub(const FracMatrix& a, const FracMatrix& b);
FracMatrix frac_mul(const FracMatrix& a, const FracMatrix& b);
FracMatrix frac_scale(const FractionElement& c, const FracMatrix& a);
FracMatrix frac_neg(const FracMatrix& a);
FracMatrix frac_transpose(const FracMatrix& a);

FractionElement frac_det(const FracMatrix& m);
FracMatrix frac_adjugate(const FracMatrix& m);

/// Inverse via adjugate over det; throws SingularMatrix on zero determinant.
FracMatrix fraction_matrix_inverse(const FracMatrix& m);

/// Entrywise test/conversion between A-matrices and F-matrices.
bool frac_matrix_in_ring(const FracMatrix& m);
Matrix frac_matrix_to_ring(const FracMatrix& m);

}  // namespace ringstab
