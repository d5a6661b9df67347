#pragma once

#include <optional>

#include "ringstab/ideal.hpp"
#include "ringstab/matrix.hpp"

namespace ringstab {

/// Plant with m inputs and n outputs, carried as a right matrix fraction
/// P = N * D^{-1} over A with nonsingular D, an optional left pair
/// (D~, N~) with D~ * N = N~ * D, and an optional causality ideal Z
/// (a proper prime ideal, supplied and trusted, never verified).
class Plant {
 public:
  Plant(Matrix N, Matrix D, std::optional<Ideal> Z = std::nullopt);

  const Ring& ring() const { return N_.ring(); }
  int inputs() const { return m_; }
  int outputs() const { return n_; }
  const Matrix& N() const { return N_; }
  const Matrix& D() const { return D_; }
  bool has_left_fraction() const { return Dt_.has_value(); }
  const Matrix& D_left() const;
  const Matrix& N_left() const;
  const std::optional<Ideal>& causality_ideal() const { return Z_; }

  /// Copy with the common-denominator left pair D~ = det(D)*E,
  /// N~ = N*adj(D) filled in.
  Plant with_left_fraction() const;

 private:
  int m_, n_;
  Matrix N_, D_;
  std::optional<Matrix> Dt_, Nt_;
  std::optional<Ideal> Z_;
};

Plant plant_from_right_fraction(const Matrix& N, const Matrix& D,
                                std::optional<Ideal> Z = std::nullopt);
Plant derive_left_fraction(const Plant& p);

/// Causality per the designated prime ideal Z: causal iff det(D) is outside
/// Z; strictly causal additionally requires every entry of N inside Z
/// (a representative-level test, sufficient for a positive answer).
bool is_causal(const Plant& p);
bool is_strictly_causal(const Plant& p);

/// The transfer matrix N * adj(D) / det(D), entrywise over F.
FracMatrix transfer_matrix(const Plant& p);

/// Soft limit on m, n; raised only through the CLI --max-size flag.
extern int plant_size_limit;

}  // namespace ringstab
