#include "ringstab/matrix.hpp"

#include <algorithm>
#include <cassert>

#include "ringstab/errors.hpp"

namespace ringstab {

bool IndexSet::contains(int i) const {
  return std::binary_search(idx.begin(), idx.end(), i);
}

std::string IndexSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(idx[i]);
  }
  return s + "}";
}

std::vector<IndexSet> all_index_sets(int k, int width) {
  std::vector<IndexSet> out;
  if (k <= 0 || k > width) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(IndexSet{cur});
    int pos = k - 1;
    while (pos >= 0 && cur[pos] == width - (k - 1 - pos)) --pos;
    if (pos < 0) break;
    ++cur[pos];
    for (int i = pos + 1; i < k; ++i) cur[i] = cur[i - 1] + 1;
  }
  return out;
}

IndexSet tau(const IndexSet& I, int m, int n) {
  if (static_cast<int>(I.idx.size()) != m)
    fail(ErrorCode::DimensionMismatch, "tau expects an m-element index set");
  // I splits into I_N (rows of N, <= n) and I_d (rows of the denominator);
  // J_N = [1,m] \ { i - n : i in I_d },  J_d = { i + m : i in [1,n] \ I_N }.
  std::vector<int> j;
  for (int x = 1; x <= m; ++x) {
    bool excluded = false;
    for (int i : I.idx)
      if (i > n && i - n == x) excluded = true;
    if (!excluded) j.push_back(x);
  }
  for (int x = 1; x <= n; ++x) {
    if (!I.contains(x)) j.push_back(x + m);
  }
  std::sort(j.begin(), j.end());
  return IndexSet{j};
}

IndexSet tau_inv(const IndexSet& J, int m, int n) {
  if (static_cast<int>(J.idx.size()) != n)
    fail(ErrorCode::DimensionMismatch, "tau_inv expects an n-element index set");
  // I_N = [1,n] \ { j - m : j in J_d },  I_d = { j + n : j in [1,m] \ J_N }.
  std::vector<int> i;
  for (int x = 1; x <= n; ++x) {
    bool excluded = false;
    for (int jj : J.idx)
      if (jj > m && jj - m == x) excluded = true;
    if (!excluded) i.push_back(x);
  }
  for (int x = 1; x <= m; ++x) {
    if (!J.contains(x)) i.push_back(x + n);
  }
  std::sort(i.begin(), i.end());
  return IndexSet{i};
}

Matrix::Matrix(Ring ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0)
    fail(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
  e_.assign(static_cast<std::size_t>(rows) * cols, RingElement::zero(ring_));
}

Matrix Matrix::identity(const Ring& ring, int n) {
  Matrix m(ring, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, RingElement::one(ring));
  return m;
}

const RingElement& Matrix::at(int r, int c) const {
  assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
  return e_[static_cast<std::size_t>(r) * cols_ + c];
}

void Matrix::set(int r, int c, RingElement v) {
  assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
  if (!same_ring(v.ring(), ring_))
    fail(ErrorCode::SpecMismatch, "matrix entry from a different ring");
  e_[static_cast<std::size_t>(r) * cols_ + c] = std::move(v);
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (!(e_[i] == o.e_[i])) return false;
  return true;
}

namespace {

void require_conformable_add(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::DimensionMismatch, "matrix addition shape mismatch");
}

}  // namespace

Matrix mat_add(const Matrix& a, const Matrix& b) {
  require_conformable_add(a, b);
  Matrix r(a.ring(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, add(a.at(i, j), b.at(i, j)));
  return r;
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
  require_conformable_add(a, b);
  Matrix r(a.ring(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, sub(a.at(i, j), b.at(i, j)));
  return r;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Matrix r(a.ring(), a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      RingElement acc = RingElement::zero(a.ring());
      for (int k = 0; k < a.cols(); ++k)
        acc = add(acc, mul(a.at(i, k), b.at(k, j)));
      r.set(i, j, acc);
    }
  return r;
}

Matrix mat_scale(const RingElement& c, const Matrix& a) {
  Matrix r(a.ring(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, mul(c, a.at(i, j)));
  return r;
}

Matrix mat_neg(const Matrix& a) {
  Matrix r(a.ring(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, neg(a.at(i, j)));
  return r;
}

Matrix transpose(const Matrix& a) {
  Matrix r(a.ring(), a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(j, i, a.at(i, j));
  return r;
}

bool mat_is_zero(const Matrix& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!is_zero(a.at(i, j))) return false;
  return true;
}

namespace {

RingElement det_cofactor(const Matrix& m, std::vector<int> rows,
                         std::vector<int> cols) {
  const Ring& ring = m.ring();
  std::size_t n = rows.size();
  if (n == 1) return m.at(rows[0], cols[0]);
  RingElement acc = RingElement::zero(ring);
  std::vector<int> subrows(rows.begin() + 1, rows.end());
  for (std::size_t k = 0; k < n; ++k) {
    const RingElement& pivot = m.at(rows[0], cols[k]);
    if (is_zero(pivot)) continue;
    std::vector<int> subcols;
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) subcols.push_back(cols[j]);
    RingElement minor = det_cofactor(m, subrows, subcols);
    RingElement term = mul(pivot, minor);
    acc = (k % 2 == 0) ? add(acc, term) : sub(acc, term);
  }
  return acc;
}

RingElement det_bareiss(const Matrix& m) {
  const Ring& ring = m.ring();
  int n = m.rows();
  std::vector<std::vector<RingElement>> a(
      n, std::vector<RingElement>(n, RingElement::zero(ring)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);
  RingElement prev = RingElement::one(ring);
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (is_zero(a[k][k])) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (!is_zero(a[i][k])) {
          piv = i;
          break;
        }
      if (piv < 0) return RingElement::zero(ring);
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        RingElement num =
            sub(mul(a[i][j], a[k][k]), mul(a[i][k], a[k][j]));
        auto q = exact_divide(num, prev);
        assert(q.has_value());  // Sylvester identity: division is exact
        a[i][j] = *q;
      }
    prev = a[k][k];
  }
  RingElement d = a[n - 1][n - 1];
  return sign < 0 ? neg(d) : d;
}

}  // namespace

RingElement det(const Matrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::NonSquare, "det of non-square matrix");
  int n = m.rows();
  const Ring& ring = m.ring();
  bool bareiss_ok = ring->kind == RingKind::Integers ||
                    ring->kind == RingKind::Rationals ||
                    ring->kind == RingKind::PolynomialOverRationals;
  if (bareiss_ok) return det_bareiss(m);
  if (n > 6)
    fail(ErrorCode::SizeLimit,
         "cofactor-expansion determinant limited to size 6 in " +
             ring->describe());
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return det_cofactor(m, all, all);
}

Matrix adjugate(const Matrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::NonSquare, "adjugate of non-square");
  int n = m.rows();
  const Ring& ring = m.ring();
  Matrix adj(ring, n, n);
  if (n == 1) {
    adj.set(0, 0, RingElement::one(ring));
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> rows, cols;
      for (int r = 0; r < n; ++r)
        if (r != i) rows.push_back(r);
      for (int c = 0; c < n; ++c)
        if (c != j) cols.push_back(c);
      RingElement minor = det_cofactor(m, rows, cols);
      if ((i + j) % 2 != 0) minor = neg(minor);
      adj.set(j, i, minor);  // transposed cofactor
    }
#ifndef NDEBUG
  Matrix check = mat_mul(m, adj);
  RingElement d = det(m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RingElement expect = (i == j) ? d : RingElement::zero(ring);
      assert(check.at(i, j) == expect);
    }
#endif
  return adj;
}

Matrix delta_matrix(const IndexSet& I, int width, const Ring& ring) {
  int k = static_cast<int>(I.idx.size());
  Matrix d(ring, k, width);
  for (int r = 0; r < k; ++r) {
    int col = I.idx[r];
    if (col < 1 || col > width)
      fail(ErrorCode::DimensionMismatch, "index set out of range");
    d.set(r, col - 1, RingElement::one(ring));
  }
  return d;
}

Matrix select_rows(const Matrix& m, const IndexSet& I) {
  Matrix r(m.ring(), static_cast<int>(I.idx.size()), m.cols());
  for (std::size_t i = 0; i < I.idx.size(); ++i) {
    int row = I.idx[i];
    if (row < 1 || row > m.rows())
      fail(ErrorCode::DimensionMismatch, "index set out of range");
    for (int j = 0; j < m.cols(); ++j) r.set(static_cast<int>(i), j, m.at(row - 1, j));
  }
  return r;
}

std::map<IndexSet, RingElement> full_size_minors(const Matrix& m, int k) {
  if (k != m.cols())
    fail(ErrorCode::DimensionMismatch,
         "full-size minors need index sets matching the column count");
  std::map<IndexSet, RingElement> out;
  for (const auto& I : all_index_sets(k, m.rows()))
    out.emplace(I, det(select_rows(m, I)));
  return out;
}

FracMatrix::FracMatrix(Ring ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0)
    fail(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
  e_.assign(static_cast<std::size_t>(rows) * cols, FractionElement::zero(ring_));
}

FracMatrix FracMatrix::identity(const Ring& ring, int n) {
  FracMatrix m(ring, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, FractionElement::one(ring));
  return m;
}

FracMatrix FracMatrix::from_ring_matrix(const Matrix& m) {
  FracMatrix r(m.ring(), m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      r.set(i, j, FractionElement::from_ring(m.at(i, j)));
  return r;
}

const FractionElement& FracMatrix::at(int r, int c) const {
  assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
  return e_[static_cast<std::size_t>(r) * cols_ + c];
}

void FracMatrix::set(int r, int c, FractionElement v) {
  assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
  e_[static_cast<std::size_t>(r) * cols_ + c] = std::move(v);
}

bool FracMatrix::operator==(const FracMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != o.at(i, j)) return false;
  return true;
}

FracMatrix frac_add(const FracMatrix& a, const FracMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::DimensionMismatch, "matrix addition shape mismatch");
  FracMatrix r(a.ring(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j) + b.at(i, j));
  return r;
}

FracMatrix frac_sub(const FracMatrix& a, const FracMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::DimensionMismatch, "matrix subtraction shape mismatch");
  FracMatrix r(a.ring(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j) - b.at(i, j));
  return r;
}

FracMatrix frac_mul(const FracMatrix& a, const FracMatrix& b) {
  if (a.cols() != b.rows())
    fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  FracMatrix r(a.ring(), a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      FractionElement acc = FractionElement::zero(a.ring());
      for (int k = 0; k < a.cols(); ++k) acc = acc + a.at(i, k) * b.at(k, j);
      r.set(i, j, acc);
    }
  return r;
}

FracMatrix frac_scale(const FractionElement& c, const FracMatrix& a) {
  FracMatrix r(a.ring(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, c * a.at(i, j));
  return r;
}

FracMatrix frac_neg(const FracMatrix& a) {
  FracMatrix r(a.ring(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, -a.at(i, j));
  return r;
}

FracMatrix frac_transpose(const FracMatrix& a) {
  FracMatrix r(a.ring(), a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(j, i, a.at(i, j));
  return r;
}

namespace {

FractionElement frac_det_rec(const FracMatrix& m, std::vector<int> rows,
                             std::vector<int> cols) {
  std::size_t n = rows.size();
  if (n == 1) return m.at(rows[0], cols[0]);
  FractionElement acc = FractionElement::zero(m.ring());
  std::vector<int> subrows(rows.begin() + 1, rows.end());
  for (std::size_t k = 0; k < n; ++k) {
    const FractionElement& pivot = m.at(rows[0], cols[k]);
    if (pivot.is_zero()) continue;
    std::vector<int> subcols;
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) subcols.push_back(cols[j]);
    FractionElement term = pivot * frac_det_rec(m, subrows, subcols);
    acc = (k % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

FractionElement frac_det(const FracMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::NonSquare, "det of non-square matrix");
  if (m.rows() > 6)
    fail(ErrorCode::SizeLimit, "fraction determinant limited to size 6");
  std::vector<int> all(m.rows());
  for (int i = 0; i < m.rows(); ++i) all[i] = i;
  return frac_det_rec(m, all, all);
}

FracMatrix frac_adjugate(const FracMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::NonSquare, "adjugate of non-square");
  int n = m.rows();
  FracMatrix adj(m.ring(), n, n);
  if (n == 1) {
    adj.set(0, 0, FractionElement::one(m.ring()));
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> rows, cols;
      for (int r = 0; r < n; ++r)
        if (r != i) rows.push_back(r);
      for (int c = 0; c < n; ++c)
        if (c != j) cols.push_back(c);
      FractionElement minor = frac_det_rec(m, rows, cols);
      if ((i + j) % 2 != 0) minor = -minor;
      adj.set(j, i, minor);
    }
  return adj;
}

FracMatrix fraction_matrix_inverse(const FracMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::NonSquare, "inverse of non-square");
  int n = m.rows();
  FractionElement d = frac_det(m);
  if (d.is_zero()) fail(ErrorCode::SingularMatrix, "singular matrix");
  FracMatrix inv(m.ring(), n, n);
  if (n == 1) {
    inv.set(0, 0, d.inverse());
    return inv;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> rows, cols;
      for (int r = 0; r < n; ++r)
        if (r != i) rows.push_back(r);
      for (int c = 0; c < n; ++c)
        if (c != j) cols.push_back(c);
      FractionElement minor = frac_det_rec(m, rows, cols);
      if ((i + j) % 2 != 0) minor = -minor;
      inv.set(j, i, minor / d);
    }
  return inv;
}

bool frac_matrix_in_ring(const FracMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!fraction_in_ring(m.at(i, j))) return false;
  return true;
}

Matrix frac_matrix_to_ring(const FracMatrix& m) {
  Matrix r(m.ring(), m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.set(i, j, fraction_to_ring(m.at(i, j)));
  return r;
}

}  // namespace ringstab
