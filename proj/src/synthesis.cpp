#include "ringstab/synthesis.hpp"

#include <algorithm>
#include <cassert>

#include "ringstab/errors.hpp"

namespace ringstab {

FracMatrix LocalFactorization::N0() const {
  const Ring& ring = num.ring();
  RingElement xq = power(x, static_cast<unsigned>(k));
  FracMatrix m(ring, top_rows, num.cols());
  for (int i = 0; i < top_rows; ++i)
    for (int j = 0; j < num.cols(); ++j)
      m.set(i, j, FractionElement(num.at(i, j), xq));
  return m;
}

FracMatrix LocalFactorization::D0() const {
  const Ring& ring = num.ring();
  RingElement xq = power(x, static_cast<unsigned>(k));
  int bottom = num.rows() - top_rows;
  FracMatrix m(ring, bottom, num.cols());
  for (int i = 0; i < bottom; ++i)
    for (int j = 0; j < num.cols(); ++j)
      m.set(i, j, FractionElement(num.at(top_rows + i, j), xq));
  return m;
}

namespace {

// Core of the extraction, shared by the right (stack = T) and left
// (stack = W^t) sides: T' = stack * adj(sel) has every entry divisible by
// det(sel) over A_x; returns the cleared numerator of T'/det(sel).
struct StackFactorization {
  RingElement t;
  Matrix num;
  int k = 0;
};

StackFactorization factor_stack(const Matrix& stack, const IndexSet& I0,
                                const RingElement& x, const Limits& limits) {
  const Ring& ring = stack.ring();
  Matrix sel = select_rows(stack, I0);
  RingElement t = det(sel);
  if (is_zero(t))
    fail(ErrorCode::ZeroMinor,
         "selected minor " + I0.to_string() + " is zero");
  Matrix tprime = mat_mul(stack, adjugate(sel));
  int rows = tprime.rows(), cols = tprime.cols();
  std::vector<std::vector<RingElement>> cof(rows);
  std::vector<std::vector<int>> kk(rows, std::vector<int>(cols, 0));
  int kmax = 0;
  for (int i = 0; i < rows; ++i) {
    cof[i].assign(cols, RingElement::zero(ring));
    for (int j = 0; j < cols; ++j) {
      RingElement e = tprime.at(i, j);
      bool found = false;
      RingElement scaled = e;
      for (int k = 0; k <= limits.k_div; ++k) {
        auto q = exact_divide(scaled, t);
        if (q) {
          cof[i][j] = *q;
          kk[i][j] = k;
          kmax = std::max(kmax, k);
          found = true;
          break;
        }
        scaled = mul(scaled, x);
      }
      if (!found)
        fail(ErrorCode::DivisibilityBoundExceeded,
             "no k <= " + std::to_string(limits.k_div) + " with x^k * entry in (t_" +
                 I0.to_string() + "); wrong witness or bound too small");
    }
  }
  StackFactorization out{t, Matrix(ring, rows, cols), kmax};
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      out.num.set(i, j,
                  mul(cof[i][j], power(x, static_cast<unsigned>(kmax - kk[i][j]))));
  // num * sel = x^kmax * stack  (T'' * Delta T = T over A_x, cleared).
  Matrix lhs = mat_mul(out.num, sel);
  Matrix rhs = mat_scale(power(x, static_cast<unsigned>(kmax)), stack);
  if (!(lhs == rhs))
    fail(ErrorCode::Internal, "local factorization identity failed");
  return out;
}

}  // namespace

LocalFactorization local_coprime_factorization(const Plant& p,
                                               const IndexSet& I0,
                                               const RingElement& x,
                                               const Limits& limits) {
  const Ring& ring = p.ring();
  int m = p.inputs(), n = p.outputs();
  Matrix t = stacked_T(p);
  StackFactorization sf = factor_stack(t, I0, x, limits);
  LocalFactorization lf;
  lf.I0 = I0;
  lf.x = x;
  lf.t = sf.t;
  lf.num = std::move(sf.num);
  lf.k = sf.k;
  lf.top_rows = n;
  Matrix delta = delta_matrix(I0, m + n, ring);
  lf.Ytilde = Matrix(ring, m, n);
  lf.Xtilde = Matrix(ring, m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) lf.Ytilde.set(i, j, delta.at(i, j));
    for (int j = 0; j < m; ++j) lf.Xtilde.set(i, j, delta.at(i, n + j));
  }
  // Cleared coprimeness: Delta * num = x^k * E.
  Matrix check = mat_mul(delta, lf.num);
  Matrix expect = mat_scale(power(x, static_cast<unsigned>(lf.k)),
                            Matrix::identity(ring, m));
  if (!(check == expect))
    fail(ErrorCode::Internal, "coprimeness identity failed");
  return lf;
}

LeftLocalFactorization local_left_factorization(const Plant& p,
                                                const IndexSet& J0,
                                                const RingElement& x,
                                                const Limits& limits) {
  Plant q = p.with_left_fraction();
  Matrix wt = transpose(stacked_W(q));  // (m+n) x n
  StackFactorization sf = factor_stack(wt, J0, x, limits);
  // W'' = num/x^k with Delta_{J0} W'' = E_n; transpose to read
  // [N~_0 D~_0] = (W'')^t.
  int m = q.inputs(), n = q.outputs();
  RingElement xq = power(x, static_cast<unsigned>(sf.k));
  LeftLocalFactorization out;
  out.J0 = J0;
  out.x = x;
  out.w = sf.t;
  out.k = sf.k;
  out.Nt0 = FracMatrix(q.ring(), n, m);
  out.Dt0 = FracMatrix(q.ring(), n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j)
      out.Nt0.set(i, j, FractionElement(sf.num.at(j, i), xq));
    for (int j = 0; j < n; ++j)
      out.Dt0.set(i, j, FractionElement(sf.num.at(m + j, i), xq));
  }
  return out;
}

Matrix repair_determinant(const Matrix& A, const Matrix& B,
                          const Ideal& avoid) {
  if (A.rows() != A.cols()) fail(ErrorCode::NonSquare, "repair needs square A");
  if (B.cols() != A.cols())
    fail(ErrorCode::DimensionMismatch, "A and B need equal column counts");
  const Ring& ring = A.ring();
  int m = A.rows(), bw = B.rows();
  Matrix R(ring, m, bw);
  if (!ideal_membership(det(A), avoid)) return R;  // zero matrix works

  // Stacked [A; B]; pick a full-size minor outside `avoid` with as few
  // B-rows as possible, ties broken lexicographically (enumeration order).
  Matrix stacked(ring, m + bw, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) stacked.set(i, j, A.at(i, j));
  for (int i = 0; i < bw; ++i)
    for (int j = 0; j < m; ++j) stacked.set(m + i, j, B.at(i, j));

  std::optional<IndexSet> best;
  int best_brows = 0;
  for (const auto& S : all_index_sets(m, m + bw)) {
    int brows = 0;
    for (int i : S.idx)
      if (i > m) ++brows;
    if (best && brows >= best_brows) continue;
    if (ideal_membership(det(select_rows(stacked, S)), avoid)) continue;
    best = S;
    best_brows = brows;
  }
  if (!best)
    fail(ErrorCode::NoValidMinor,
         "every full-size minor of the stacked matrix lies in the ideal");

  std::vector<int> excluded_a, used_b;
  for (int i = 1; i <= m; ++i)
    if (!best->contains(i)) excluded_a.push_back(i);
  for (int i : best->idx)
    if (i > m) used_b.push_back(i - m);
  assert(excluded_a.size() == used_b.size());
  for (std::size_t a = 0; a < excluded_a.size(); ++a)
    R.set(excluded_a[a] - 1, used_b[a] - 1, RingElement::one(ring));

  if (ideal_membership(det(mat_add(A, mat_mul(R, B))), avoid))
    fail(ErrorCode::Internal, "repair postcondition failed");
  return R;
}

FracMatrix h_matrix(const FracMatrix& P, const FracMatrix& C) {
  int n = P.rows(), m = P.cols();
  if (C.rows() != m || C.cols() != n)
    fail(ErrorCode::DimensionMismatch, "controller shape must be m x n");
  const Ring& ring = P.ring();
  FracMatrix pc = frac_mul(P, C);
  FracMatrix loop_n = frac_add(FracMatrix::identity(ring, n), pc);
  if (frac_det(loop_n).is_zero())
    fail(ErrorCode::SingularLoop, "det(E + PC) = 0");
  FracMatrix cp = frac_mul(C, P);
  FracMatrix loop_m = frac_add(FracMatrix::identity(ring, m), cp);
  if (frac_det(loop_m).is_zero())
    fail(ErrorCode::SingularLoop, "det(E + CP) = 0");
  FracMatrix inv_n = fraction_matrix_inverse(loop_n);
  FracMatrix inv_m = fraction_matrix_inverse(loop_m);
  FracMatrix h(ring, m + n, m + n);
  FracMatrix h12 = frac_neg(frac_mul(P, inv_m));
  FracMatrix h21 = frac_mul(C, inv_n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h.set(i, j, inv_n.at(i, j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) h.set(i, n + j, h12.at(i, j));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) h.set(n + i, j, h21.at(i, j));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) h.set(n + i, n + j, inv_m.at(i, j));
  return h;
}

namespace {

struct GlueState {
  std::vector<LocalFactorization> locals;
  std::vector<FracMatrix> Yt, Xt;  // current (possibly repaired) splits
  std::vector<RingElement> r, q;
  std::vector<int> e;
};

// The four blocks of the gluing matrix, assembled over F and converted to A.
struct Blocks {
  Matrix h11, h12, h21, h22;
};

Blocks assemble_blocks(const Plant& p, const GlueState& st) {
  const Ring& ring = p.ring();
  int m = p.inputs(), n = p.outputs();
  FracMatrix s11(ring, n, n), s12(ring, n, m), s21(ring, m, n), s22(ring, m, m);
  for (std::size_t i = 0; i < st.locals.size(); ++i) {
    FractionElement rq = FractionElement::from_ring(mul(st.r[i], st.q[i]));
    FracMatrix n0 = st.locals[i].N0();
    FracMatrix d0 = st.locals[i].D0();
    s11 = frac_add(s11, frac_scale(rq, frac_mul(n0, st.Yt[i])));
    s12 = frac_add(s12, frac_scale(rq, frac_mul(n0, st.Xt[i])));
    s21 = frac_add(s21, frac_scale(rq, frac_mul(d0, st.Yt[i])));
    s22 = frac_add(s22, frac_scale(rq, frac_mul(d0, st.Xt[i])));
  }
  FracMatrix h11 = frac_sub(FracMatrix::identity(ring, n), s11);
  FracMatrix h12 = frac_neg(s12);
  for (const FracMatrix* blk : {&h11, &h12, &s21, &s22})
    if (!frac_matrix_in_ring(*blk))
      fail(ErrorCode::Internal, "gluing block escaped the ring");
  return Blocks{frac_matrix_to_ring(h11), frac_matrix_to_ring(h12),
                frac_matrix_to_ring(s21), frac_matrix_to_ring(s22)};
}

}  // namespace

std::vector<RingElement> partition_of_unity(const Ring& ring,
                                            const std::vector<RingElement>& q,
                                            const Ideal& avoid) {
  auto cof = ideal_contains_one(Ideal(ring, q));
  if (!cof)
    fail(ErrorCode::Internal, "clearing powers fail to generate the ring");
  std::vector<RingElement> r = *cof;
  // Reindexing identity: if r_1*q_1 landed inside the ideal, replace
  // r_1 <- r_1*q_1 + r_1 - 1 and r_i <- r_i*q_1 + r_i; the combination
  // still expresses 1 and the first product moves outside.
  if (ideal_membership(mul(r[0], q[0]), avoid)) {
    std::vector<RingElement> r2 = r;
    r2[0] = sub(add(mul(r[0], q[0]), r[0]), RingElement::one(ring));
    for (std::size_t i = 1; i < r.size(); ++i)
      r2[i] = add(mul(r[i], q[0]), r[i]);
    r = std::move(r2);
    RingElement check = RingElement::zero(ring);
    for (std::size_t i = 0; i < r.size(); ++i)
      check = add(check, mul(r[i], q[i]));
    if (!(check == RingElement::one(ring)) ||
        ideal_membership(mul(r[0], q[0]), avoid))
      fail(ErrorCode::Internal, "partition reindexing failed");
  }
  return r;
}

ControllerCertificate glue_controller(const Plant& p,
                                      const StabilizabilityReport& report,
                                      const Limits& limits) {
  const Ring& ring = p.ring();
  if (!report.verdict || !report.witness)
    fail(ErrorCode::NotStabilizable,
         "the plant is not stabilizable; no controller exists");
  Ideal z_eff = p.causality_ideal() ? *p.causality_ideal() : Ideal(ring, {});

  // Witness localization elements x'_i = r_i * x_i, zeros dropped.
  std::vector<std::pair<IndexSet, RingElement>> witnesses;
  for (const auto& term : *report.witness) {
    RingElement xi = mul(term.r, term.x);
    if (!is_zero(xi)) witnesses.emplace_back(term.I, xi);
  }
  if (witnesses.empty())
    fail(ErrorCode::Internal, "stabilizable plant with empty witness");

  // Distinguished witness: the first with x' outside Z (one always exists,
  // since the x' sum to 1 and Z is proper).
  std::size_t dist = witnesses.size();
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    if (!ideal_membership(witnesses[i].second, z_eff)) {
      dist = i;
      break;
    }
  }
  if (dist == witnesses.size())
    fail(ErrorCode::Internal, "every witness lies in the causality ideal");
  std::rotate(witnesses.begin(), witnesses.begin() + dist,
              witnesses.begin() + dist + 1);

  ControllerCertificate cert;
  GlueState st;
  for (const auto& [I, x] : witnesses) {
    st.locals.push_back(local_coprime_factorization(p, I, x, limits));
    st.Yt.push_back(FracMatrix::from_ring_matrix(st.locals.back().Ytilde));
    st.Xt.push_back(FracMatrix::from_ring_matrix(st.locals.back().Xtilde));
    st.e.push_back(st.locals.back().k + 1);
  }

  auto refresh_partition = [&] {
    st.q.clear();
    for (std::size_t i = 0; i < st.locals.size(); ++i)
      st.q.push_back(
          power(st.locals[i].x, static_cast<unsigned>(st.e[i])));
    st.r = partition_of_unity(ring, st.q, z_eff);
  };
  refresh_partition();
  Blocks blocks = assemble_blocks(p, st);

  if (ideal_membership(det(blocks.h22), z_eff)) {
    // Repair path: left local factors at the distinguished witness, then
    // the determinant repair on the lower block row of the gluing system.
    Plant pl = p.with_left_fraction();
    const RingElement& x1 = st.locals[0].x;
    LeftLocalFactorization left;
    bool have_left = false;
    std::vector<IndexSet> candidates;
    candidates.push_back(tau(st.locals[0].I0, p.inputs(), p.outputs()));
    for (const auto& J :
         all_index_sets(p.outputs(), p.inputs() + p.outputs()))
      if (!(J == candidates[0])) candidates.push_back(J);
    for (const auto& J : candidates) {
      if (is_zero(det(select_rows(transpose(stacked_W(pl)), J)))) continue;
      try {
        left = local_left_factorization(pl, J, x1, limits);
        have_left = true;
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DivisibilityBoundExceeded) throw;
      }
    }
    if (!have_left)
      fail(ErrorCode::RepairFailed,
           "no left local factorization found at the distinguished witness");

    st.e[0] = st.locals[0].k + left.k + 1;
    refresh_partition();
    blocks = assemble_blocks(p, st);

    if (ideal_membership(det(blocks.h22), z_eff)) {
      RingElement rq1 = mul(st.r[0], st.q[0]);
      FractionElement rq1f = FractionElement::from_ring(rq1);
      FracMatrix d0_scaled = frac_scale(rq1f, st.locals[0].D0());
      FractionElement det_d0 = frac_det(d0_scaled);
      // B = -r1 q1 det(r1 q1 D_1) N~_1, over A by the enlarged clearing power.
      FracMatrix b_frac =
          frac_neg(frac_scale(rq1f * det_d0, left.Nt0));
      if (!frac_matrix_in_ring(b_frac))
        fail(ErrorCode::Internal, "repair block escaped the ring");
      Matrix b_ring = frac_matrix_to_ring(b_frac);
      Matrix r_prime = repair_determinant(blocks.h22, b_ring, z_eff);
      // R_1 = r1 q1 adj(r1 q1 D_1) R'; reassign Xtilde, Ytilde.
      FracMatrix r1m = frac_mul(frac_scale(rq1f, frac_adjugate(d0_scaled)),
                                FracMatrix::from_ring_matrix(r_prime));
      st.Xt[0] = frac_sub(st.Xt[0], frac_mul(r1m, left.Nt0));
      st.Yt[0] = frac_add(st.Yt[0], frac_mul(r1m, left.Dt0));
      blocks = assemble_blocks(p, st);
      if (ideal_membership(det(blocks.h22), z_eff))
        fail(ErrorCode::RepairFailed,
             "glued denominator block stayed singular after the repair");
      cert.repair_applied = true;
      cert.notes.push_back("determinant repair applied at witness " +
                           st.locals[0].I0.to_string() + " via selection " +
                           left.J0.to_string());
    }
  }

  for (std::size_t i = 0; i < st.locals.size(); ++i)
    cert.steps.push_back({st.locals[i].I0, st.locals[i].x, st.r[i], st.q[i],
                          st.e[i]});

  // C = H22^{-1} H21 and the glued closed loop.
  int m = p.inputs(), n = p.outputs();
  FracMatrix h22f = FracMatrix::from_ring_matrix(blocks.h22);
  cert.C = frac_mul(fraction_matrix_inverse(h22f),
                    FracMatrix::from_ring_matrix(blocks.h21));

  FracMatrix built(ring, m + n, m + n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      built.set(i, j, FractionElement::from_ring(blocks.h11.at(i, j)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      built.set(i, n + j, FractionElement::from_ring(blocks.h12.at(i, j)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      built.set(n + i, j, FractionElement::from_ring(blocks.h21.at(i, j)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      built.set(n + i, n + j, FractionElement::from_ring(blocks.h22.at(i, j)));

  FracMatrix recomputed = h_matrix(transfer_matrix(p), cert.C);
  if (!(recomputed == built))
    fail(ErrorCode::Internal, "glued matrix disagrees with H(P,C)");
  cert.notes.push_back("glued matrix equals H(P,C) recomputed from (P, C)");
  cert.H = built;
  cert.det_condition = true;
  cert.all_entries_in_ring = frac_matrix_in_ring(recomputed);
  if (!cert.all_entries_in_ring)
    fail(ErrorCode::Internal, "glued closed loop escaped the ring");
  if (p.causality_ideal()) {
    bool causal = true;
    for (int i = 0; i < cert.C.rows() && causal; ++i)
      for (int j = 0; j < cert.C.cols() && causal; ++j)
        causal = fraction_is_causal(cert.C.at(i, j), *p.causality_ideal());
    cert.controller_causal = causal;
  }
  return cert;
}

ControllerCertificate verify_stabilizing(const Plant& p, const FracMatrix& C) {
  ControllerCertificate cert;
  cert.C = C;
  FracMatrix P = transfer_matrix(p);
  try {
    cert.H = h_matrix(P, C);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularLoop) throw;
    cert.det_condition = false;
    cert.notes.push_back("det(E + PC) = 0: loop is singular");
    return cert;
  }
  cert.det_condition = true;
  cert.all_entries_in_ring = frac_matrix_in_ring(cert.H);
  if (!cert.all_entries_in_ring) {
    for (int i = 0; i < cert.H.rows(); ++i)
      for (int j = 0; j < cert.H.cols(); ++j)
        if (!fraction_in_ring(cert.H.at(i, j))) {
          cert.notes.push_back("entry (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ") = " +
                               cert.H.at(i, j).to_string() +
                               " is not in the ring");
        }
  }
  if (p.causality_ideal()) {
    bool causal = true;
    for (int i = 0; i < C.rows() && causal; ++i)
      for (int j = 0; j < C.cols() && causal; ++j)
        causal = fraction_is_causal(C.at(i, j), *p.causality_ideal());
    cert.controller_causal = causal;
  }
  return cert;
}

namespace {

// A common denominator for the entries of a fraction matrix: the lcm of the
// reduced denominators over UFD kinds, the product of the distinct
// denominators otherwise.
RingElement common_denominator(const FracMatrix& m) {
  const Ring& ring = m.ring();
  RingElement acc = RingElement::one(ring);
  std::vector<RingElement> seen;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      RingElement d = m.at(i, j).den();
      if (is_unit(d)) continue;
      if (ring->is_ufd()) {
        RingElement g = gcd(acc, d);
        acc = mul(*exact_divide(acc, g), d);
      } else {
        bool dup = false;
        for (const auto& s : seen)
          if (s == d) dup = true;
        if (!dup) {
          seen.push_back(d);
          acc = mul(acc, d);
        }
      }
    }
  return acc;
}

}  // namespace

ProductCheckReport minor_ideal_product_check(const Plant& p,
                                             const FracMatrix& C) {
  const Ring& ring = p.ring();
  int m = p.inputs(), n = p.outputs();
  if (C.rows() != m || C.cols() != n)
    fail(ErrorCode::DimensionMismatch, "controller shape must be m x n");

  // Scalar right fractions P = N d^{-1} and C = Nc dc^{-1}.
  Plant sp = scalar_denominator_form(p);
  RingElement d = sp.D().at(0, 0);
  RingElement dc = common_denominator(C);
  Matrix nc(ring, m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      FractionElement scaled = C.at(i, j) * FractionElement::from_ring(dc);
      if (!fraction_in_ring(scaled))
        fail(ErrorCode::Internal, "common denominator failed to clear C");
      nc.set(i, j, fraction_to_ring(scaled));
    }

  auto [t_plant, pm] = minor_ideal(sp);
  Plant cp(nc, mat_scale(dc, Matrix::identity(ring, n)));
  auto [t_controller, cm] = minor_ideal(cp);

  // H = S Q^{-1} built from the proof's matrices.
  Matrix q(ring, m + n, m + n);
  Matrix s(ring, m + n, m + n);
  for (int i = 0; i < n; ++i) {
    q.set(i, i, dc);
    s.set(i, i, dc);
    for (int j = 0; j < m; ++j) q.set(i, n + j, sp.N().at(i, j));
  }
  for (int i = 0; i < m; ++i) {
    q.set(n + i, n + i, d);
    s.set(n + i, n + i, d);
    for (int j = 0; j < n; ++j) q.set(n + i, j, neg(nc.at(i, j)));
  }
  if (is_zero(det(q)))
    fail(ErrorCode::SingularLoop, "det(E + PC) = 0: minor ideals undefined");

  Matrix stacked(ring, 2 * (m + n), m + n);
  for (int i = 0; i < m + n; ++i)
    for (int j = 0; j < m + n; ++j) {
      stacked.set(i, j, s.at(i, j));
      stacked.set(m + n + i, j, q.at(i, j));
    }
  std::vector<RingElement> hgens;
  for (const auto& [I, v] : full_size_minors(stacked, m + n))
    hgens.push_back(v);

  ProductCheckReport report{t_plant, t_controller,
                            ideal_product(t_plant, t_controller),
                            Ideal(ring, hgens), IsoCertificate{}};
  report.iso = ideal_iso_certificate(report.product, report.t_closed_loop);
  return report;
}

}  // namespace ringstab
