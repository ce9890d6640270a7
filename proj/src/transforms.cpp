#include "momentforge/transforms.hpp"

#include "momentforge/matkit.hpp"
#include "momentforge/seqkit.hpp"

namespace momentforge {

HerglotzExpr schur_plus(const HerglotzExpr& f, const CMatrix& a, const CMatrix& b) {
  return HerglotzExpr::schur_plus_node(a, b, f);
}

HerglotzExpr schur_minus(const HerglotzExpr& f, const CMatrix& a, const CMatrix& b, bool certified) {
  return HerglotzExpr::schur_minus_node(a, b, f, certified);
}

namespace {

SchurHeads heads_for(const MatrixSeq& seq, Index m, const Tolerances& tol) {
  if (m < 0 || m > seq.kappa()) throw RangeError("resolvent: need 0 <= m <= kappa");
  return schur_heads(seq.truncate(m), tol);
}

}  // namespace

ResolventPoly resolvent_v(const MatrixSeq& seq, Index m, const Tolerances& tol) {
  const SchurHeads h = heads_for(seq, m, tol);
  const Real ref = seq.truncate(m).scale();
  ResolventPoly out{seq.q(), m, {}};
  const Index n = m / 2;
  const Index full = m % 2 == 0 ? n : n + 1;
  for (Index k = 0; k < full; ++k) {
    const auto i = static_cast<size_t>(k);
    out.factors.push_back(make_factor(FactorKind::V, h.s0[i], h.s1[i], ref, tol));
  }
  if (m % 2 == 0) out.factors.push_back(make_factor(FactorKind::v, h.s0[static_cast<size_t>(n)], {}, ref, tol));
  return out;
}

ResolventPoly resolvent_w(const MatrixSeq& seq, Index m, const Tolerances& tol) {
  const SchurHeads h = heads_for(seq, m, tol);
  const Real ref = seq.truncate(m).scale();
  ResolventPoly out{seq.q(), m, {}};
  const Index n = m / 2;
  const Index full = m % 2 == 0 ? n : n + 1;
  if (m % 2 == 0) out.factors.push_back(make_factor(FactorKind::w, h.s0[static_cast<size_t>(n)], {}, ref, tol));
  for (Index k = full - 1; k >= 0; --k) {
    const auto i = static_cast<size_t>(k);
    out.factors.push_back(make_factor(FactorKind::W, h.s0[i], h.s1[i], ref, tol));
  }
  return out;
}

HerglotzExpr sn_chain_forward(const MatrixSeq& seq, const HerglotzExpr& f, Index n, Parity parity,
                              const Tolerances& tol) {
  const Index m = parity == Parity::Even ? 2 * n : 2 * n + 1;
  if (n < 0 || m > seq.kappa()) throw RangeError("sn_chain_forward: chain longer than the sequence");
  const SchurHeads h = schur_heads(seq.truncate(m), tol);
  HerglotzExpr cur = f;
  const Index full = parity == Parity::Even ? n : n + 1;
  for (Index k = 0; k < full; ++k) {
    const auto i = static_cast<size_t>(k);
    cur = schur_plus(cur, h.s0[i], h.s1[i]);
  }
  if (parity == Parity::Even) {
    const CMatrix& a = h.s0[static_cast<size_t>(n)];
    cur = schur_plus(cur, a, zeros(a.rows(), a.cols()));
  }
  return cur;
}

HerglotzExpr sn_chain_backward(const MatrixSeq& seq, const HerglotzExpr& g, Index n, Parity parity,
                               const Tolerances& tol, bool certified) {
  const Index m = parity == Parity::Even ? 2 * n : 2 * n + 1;
  if (n < 0 || m > seq.kappa()) throw RangeError("sn_chain_backward: chain longer than the sequence");
  const MatrixSeq head = seq.truncate(m);
  const SchurHeads h = schur_heads(head, tol);
  const Real ref = head.scale();
  HerglotzExpr cur = g;
  const Index full = parity == Parity::Even ? n : n + 1;
  if (parity == Parity::Even) {
    const CMatrix& a = h.s0[static_cast<size_t>(n)];
    cur = HerglotzExpr::schur_minus_node(a, zeros(a.rows(), a.cols()), cur, certified, ref);
  }
  for (Index k = full - 1; k >= 0; --k) {
    const auto i = static_cast<size_t>(k);
    cur = HerglotzExpr::schur_minus_node(h.s0[i], h.s1[i], cur, certified, ref);
  }
  return cur;
}

}  // namespace momentforge
