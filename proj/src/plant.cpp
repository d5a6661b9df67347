#include "ringstab/plant.hpp"

#include "ringstab/errors.hpp"

namespace ringstab {

int plant_size_limit = 4;

Plant::Plant(Matrix N, Matrix D, std::optional<Ideal> Z)
    : m_(N.cols()), n_(N.rows()), N_(std::move(N)), D_(std::move(D)),
      Z_(std::move(Z)) {
  if (!same_ring(N_.ring(), D_.ring()))
    fail(ErrorCode::SpecMismatch, "plant fraction across rings");
  if (D_.rows() != m_ || D_.cols() != m_)
    fail(ErrorCode::DimensionMismatch,
         "denominator must be square of size m = " + std::to_string(m_));
  if (m_ > plant_size_limit || n_ > plant_size_limit)
    fail(ErrorCode::SizeLimit,
         "plant size exceeds the supported limit of " +
             std::to_string(plant_size_limit));
  if (is_zero(det(D_)))
    fail(ErrorCode::SingularDenominator, "denominator matrix is singular");
  if (Z_) {
    if (!same_ring(Z_->ring(), N_.ring()))
      fail(ErrorCode::SpecMismatch, "causality ideal over a different ring");
    if (ideal_contains_one(*Z_))
      fail(ErrorCode::ImproperCausalityIdeal,
           "causality ideal must be proper (1 not a member)");
  }
}

const Matrix& Plant::D_left() const {
  if (!Dt_) fail(ErrorCode::Internal, "left fraction not derived");
  return *Dt_;
}

const Matrix& Plant::N_left() const {
  if (!Nt_) fail(ErrorCode::Internal, "left fraction not derived");
  return *Nt_;
}

Plant Plant::with_left_fraction() const {
  Plant p = *this;
  if (p.Dt_) return p;
  RingElement d = det(D_);
  p.Dt_ = mat_scale(d, Matrix::identity(ring(), n_));
  p.Nt_ = mat_mul(N_, adjugate(D_));
  return p;
}

Plant plant_from_right_fraction(const Matrix& N, const Matrix& D,
                                std::optional<Ideal> Z) {
  return Plant(N, D, std::move(Z));
}

Plant derive_left_fraction(const Plant& p) { return p.with_left_fraction(); }

bool is_causal(const Plant& p) {
  if (!p.causality_ideal())
    fail(ErrorCode::CausalityIdealMissing, "no causality ideal configured");
  return !ideal_membership(det(p.D()), *p.causality_ideal());
}

bool is_strictly_causal(const Plant& p) {
  if (!is_causal(p)) return false;
  const Ideal& z = *p.causality_ideal();
  for (int i = 0; i < p.N().rows(); ++i)
    for (int j = 0; j < p.N().cols(); ++j)
      if (!ideal_membership(p.N().at(i, j), z)) return false;
  return true;
}

FracMatrix transfer_matrix(const Plant& p) {
  Matrix num = mat_mul(p.N(), adjugate(p.D()));
  RingElement d = det(p.D());
  FracMatrix t(p.ring(), p.outputs(), p.inputs());
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j)
      t.set(i, j, FractionElement(num.at(i, j), d));
  return t;
}

}  // namespace ringstab
