#pragma once

#include <gmpxx.h>

#include <vector>

namespace ringstab {

/// Dense integer matrix helpers used by the quadratic-ring lattice code.
/// All matrices are small (rows and columns bounded by a few dozen), so the
/// plain schoolbook algorithms below are entirely adequate.
using ZRow = std::vector<mpz_class>;
using ZMat = std::vector<ZRow>;

ZMat zmat_identity(std::size_t n);

/// Row-style Hermite normal form.
///
/// Returns H together with a unimodular U such that H = U * M. Rows of H are
/// in echelon form with positive pivots; entries above each pivot are reduced
/// into [0, pivot). Zero rows are moved to the bottom. The result is the
/// canonical basis of the row lattice of M.
struct HnfResult {
  ZMat h;
  ZMat u;
  std::size_t rank = 0;
};
HnfResult zmat_hnf(const ZMat& m);

/// Basis of { x : x * M = 0 } (row vectors), via the HNF transform.
ZMat zmat_left_kernel(const ZMat& m);

/// Solves x * H = v for integer x, where H holds the nonzero rows of an HNF
/// basis. Returns false when v is outside the lattice.
bool zlattice_solve(const ZMat& h, const ZRow& v, ZRow& coeffs_out);

}  // namespace ringstab
