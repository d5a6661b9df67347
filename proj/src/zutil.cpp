#include "ringstab/zutil.hpp"

#include "ringstab/errors.hpp"

namespace ringstab {

ZMat zmat_identity(std::size_t n) {
  ZMat e(n, ZRow(n, 0));
  for (std::size_t i = 0; i < n; ++i) e[i][i] = 1;
  return e;
}

HnfResult zmat_hnf(const ZMat& m) {
  HnfResult r;
  r.h = m;
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  r.u = zmat_identity(rows);
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    // Clear the column below pivot_row with extended-gcd row combinations.
    for (std::size_t i = pivot_row + 1; i < rows; ++i) {
      if (sgn(r.h[i][col]) == 0) continue;
      if (sgn(r.h[pivot_row][col]) == 0) {
        std::swap(r.h[pivot_row], r.h[i]);
        std::swap(r.u[pivot_row], r.u[i]);
        continue;
      }
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                 r.h[pivot_row][col].get_mpz_t(), r.h[i][col].get_mpz_t());
      mpz_class a = r.h[pivot_row][col] / g;
      mpz_class b = r.h[i][col] / g;
      for (std::size_t j = 0; j < cols; ++j) {
        mpz_class top = s * r.h[pivot_row][j] + t * r.h[i][j];
        mpz_class bot = -b * r.h[pivot_row][j] + a * r.h[i][j];
        r.h[pivot_row][j] = top;
        r.h[i][j] = bot;
      }
      for (std::size_t j = 0; j < rows; ++j) {
        mpz_class top = s * r.u[pivot_row][j] + t * r.u[i][j];
        mpz_class bot = -b * r.u[pivot_row][j] + a * r.u[i][j];
        r.u[pivot_row][j] = top;
        r.u[i][j] = bot;
      }
    }
    if (sgn(r.h[pivot_row][col]) == 0) continue;
    if (sgn(r.h[pivot_row][col]) < 0) {
      for (auto& x : r.h[pivot_row]) x = -x;
      for (auto& x : r.u[pivot_row]) x = -x;
    }
    // Reduce the entries above the pivot into [0, pivot).
    for (std::size_t i = 0; i < pivot_row; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), r.h[i][col].get_mpz_t(),
                 r.h[pivot_row][col].get_mpz_t());
      if (sgn(q) == 0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        r.h[i][j] -= q * r.h[pivot_row][j];
      for (std::size_t j = 0; j < rows; ++j)
        r.u[i][j] -= q * r.u[pivot_row][j];
    }
    ++pivot_row;
  }
  r.rank = pivot_row;
  return r;
}

ZMat zmat_left_kernel(const ZMat& m) {
  HnfResult hr = zmat_hnf(m);
  ZMat kernel;
  for (std::size_t i = hr.rank; i < hr.h.size(); ++i) kernel.push_back(hr.u[i]);
  return kernel;
}

bool zlattice_solve(const ZMat& h, const ZRow& v, ZRow& coeffs_out) {
  std::size_t rows = h.size();
  std::size_t cols = rows ? h[0].size() : v.size();
  ZRow rem = v;
  coeffs_out.assign(rows, 0);
  // h is in echelon form: consume pivots left to right.
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols; ++col) {
    bool pivot_here = row < rows && sgn(h[row][col]) != 0;
    if (pivot_here) {
      mpz_class q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem[col].get_mpz_t(),
                  h[row][col].get_mpz_t());
      if (sgn(r) != 0) return false;
      coeffs_out[row] = q;
      for (std::size_t j = col; j < cols; ++j) rem[j] -= q * h[row][j];
      ++row;
    } else if (sgn(rem[col]) != 0) {
      return false;
    }
  }
  for (const auto& x : rem)
    if (sgn(x) != 0) return false;
  return true;
}

}  // namespace ringstab
