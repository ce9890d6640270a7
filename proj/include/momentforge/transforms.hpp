#pragma once

#include "momentforge/herglotz.hpp"
#include "momentforge/matpoly.hpp"
#include "momentforge/sequence.hpp"

namespace momentforge {

enum class Parity { Even, Odd };

inline Parity parity_of(Index kappa) { return kappa % 2 == 0 ? Parity::Even : Parity::Odd; }
inline const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

// -A(zI + F(z)^+ A) + B
HerglotzExpr schur_plus(const HerglotzExpr& f, const CMatrix& a, const CMatrix& b);
// -A(zI + A^+(F(z) - B))^+, or a true inverse when certified
HerglotzExpr schur_minus(const HerglotzExpr& f, const CMatrix& a, const CMatrix& b, bool certified = false);

ResolventPoly resolvent_v(const MatrixSeq& seq, Index m, const Tolerances& tol = {});
ResolventPoly resolvent_w(const MatrixSeq& seq, Index m, const Tolerances& tol = {});

// Even parity builds F^(2n+1), odd parity builds F^(2(n+1)).
HerglotzExpr sn_chain_forward(const MatrixSeq& seq, const HerglotzExpr& f, Index n, Parity parity,
                              const Tolerances& tol = {});
HerglotzExpr sn_chain_backward(const MatrixSeq& seq, const HerglotzExpr& g, Index n, Parity parity,
                               const Tolerances& tol = {}, bool certified = true);

}  // namespace momentforge
