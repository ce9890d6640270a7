#include "momentforge/seqkit.hpp"

#include <random>
#include <string>

#include "momentforge/matkit.hpp"

namespace momentforge {

CMatrix hankel(const MatrixSeq& seq, Index n) {
  if (n < 0 || 2 * n > seq.kappa()) throw RangeError("hankel: need 2n <= kappa, n = " + std::to_string(n));
  const Index q = seq.q();
  CMatrix h((n + 1) * q, (n + 1) * q);
  for (Index j = 0; j <= n; ++j)
    for (Index k = 0; k <= n; ++k) h.block(j * q, k * q, q, q) = seq[j + k];
  return h;
}

CMatrix k_hankel(const MatrixSeq& seq, Index n) {
  if (n < 0 || 2 * n + 1 > seq.kappa()) throw RangeError("k_hankel: need 2n+1 <= kappa, n = " + std::to_string(n));
  const Index q = seq.q();
  CMatrix h((n + 1) * q, (n + 1) * q);
  for (Index j = 0; j <= n; ++j)
    for (Index k = 0; k <= n; ++k) h.block(j * q, k * q, q, q) = seq[j + k + 1];
  return h;
}

MatrixSeq reciprocal(const MatrixSeq& seq, const Tolerances& tol, Real ref_norm) {
  if (ref_norm < 0) ref_norm = seq.scale();
  const CMatrix s0p = pinv(seq[0], tol, ref_norm);
  std::vector<CMatrix> out{s0p};
  for (Index k = 1; k <= seq.kappa(); ++k) {
    CMatrix acc = CMatrix::Zero(seq.q(), seq.q());
    for (Index j = 0; j < k; ++j) acc += seq[k - j] * out[static_cast<size_t>(j)];
    out.push_back(-s0p * acc);
  }
  return MatrixSeq(seq.q(), std::move(out));
}

MatrixSeq first_schur_transform(const MatrixSeq& seq, const Tolerances& tol, Real ref_norm) {
  if (seq.kappa() < 2) throw RangeError("first_schur_transform: need kappa >= 2");
  const MatrixSeq rec = reciprocal(seq, tol, ref_norm);
  std::vector<CMatrix> out;
  for (Index j = 0; j <= seq.kappa() - 2; ++j) out.push_back(-seq[0] * rec[j + 2] * seq[0]);
  return MatrixSeq(seq.q(), std::move(out));
}

MatrixSeq schur_transform(const MatrixSeq& seq, Index k, const Tolerances& tol) {
  if (k < 0 || 2 * k > seq.kappa()) throw RangeError("schur_transform: need 2k <= kappa");
  const Real ref = seq.scale();
  MatrixSeq cur = seq;
  for (Index i = 0; i < k; ++i) cur = first_schur_transform(cur, tol, ref);
  return cur;
}

SchurHeads schur_heads(const MatrixSeq& seq, const Tolerances& tol) {
  SchurHeads heads;
  const Real ref = seq.scale();
  MatrixSeq cur = seq;
  while (true) {
    heads.s0.push_back(cur[0]);
    if (cur.kappa() >= 1) heads.s1.push_back(cur[1]);
    if (cur.kappa() < 2) break;
    cur = first_schur_transform(cur, tol, ref);
  }
  return heads;
}

CMatrix l_block(const MatrixSeq& seq, Index n, const Tolerances& tol) {
  if (n < 0 || 2 * n > seq.kappa()) throw RangeError("l_block: need 2n <= kappa");
  if (n == 0) return seq[0];
  const CMatrix hp = pinv(hankel(seq, n - 1), tol);
  return seq[2 * n] - seq.z_block(n, 2 * n - 1) * hp * seq.y_block(n, 2 * n - 1);
}

CMatrix lambda_block(const MatrixSeq& seq, Index n, const Tolerances& tol) {
  if (n < 0 || 2 * n > seq.kappa()) throw RangeError("lambda_block: need 2n <= kappa");
  if (n == 0) return CMatrix::Zero(seq.q(), seq.q());
  const CMatrix hp = pinv(hankel(seq, n - 1), tol);
  const CMatrix zl = seq.z_block(n, 2 * n - 1);
  const CMatrix yl = seq.y_block(n, 2 * n - 1);
  const CMatrix m = zl * hp * seq.y_block(n + 1, 2 * n);
  const CMatrix nn = seq.z_block(n + 1, 2 * n) * hp * yl;
  const CMatrix sigma = zl * hp * k_hankel(seq, n - 1) * hp * yl;
  return m + nn - sigma;
}

HankelParam canonical_param(const MatrixSeq& seq, const Tolerances& tol) {
  HankelParam p;
  const Index kappa = seq.kappa();
  const Index q = seq.q();
  for (Index n = 0; 2 * n <= kappa; ++n) p.H.push_back(hankel(seq, n));
  for (Index n = 0; 2 * n + 1 <= kappa; ++n) p.K.push_back(k_hankel(seq, n));
  std::vector<CMatrix> hp;
  for (const auto& h : p.H) hp.push_back(pinv(h, tol));

  for (Index n = 0; 2 * n <= kappa; ++n) {
    if (n == 0) {
      p.M.push_back(CMatrix::Zero(q, q));
      p.N.push_back(CMatrix::Zero(q, q));
      p.L.push_back(seq[0]);
      continue;
    }
    const CMatrix& h = hp[static_cast<size_t>(n - 1)];
    const CMatrix zl = seq.z_block(n, 2 * n - 1);
    const CMatrix yl = seq.y_block(n, 2 * n - 1);
    p.M.push_back(zl * h * seq.y_block(n + 1, 2 * n));
    p.N.push_back(seq.z_block(n + 1, 2 * n) * h * yl);
    p.L.push_back(seq[2 * n] - zl * h * yl);
  }
  for (Index n = 0; 2 * n - 1 <= kappa; ++n) {
    if (n == 0) {
      p.Sigma.push_back(CMatrix::Zero(q, q));
      continue;
    }
    const CMatrix& h = hp[static_cast<size_t>(n - 1)];
    p.Sigma.push_back(seq.z_block(n, 2 * n - 1) * h * p.K[static_cast<size_t>(n - 1)] * h *
                      seq.y_block(n, 2 * n - 1));
  }
  for (size_t n = 0; n < p.M.size(); ++n) p.Lambda.push_back(p.M[n] + p.N[n] - p.Sigma[n]);
  for (Index k = 1; 2 * k - 1 <= kappa; ++k) p.C.push_back(seq[2 * k - 1] - p.Lambda[static_cast<size_t>(k - 1)]);
  p.D = p.L;
  return p;
}

bool is_hnnd(const MatrixSeq& seq, const Tolerances& tol) {
  for (Index n = 0; 2 * n <= seq.kappa(); ++n)
    if (!is_psd(hankel(seq, n), tol)) return false;
  return true;
}

bool is_hpd(const MatrixSeq& seq, const Tolerances& tol) {
  for (Index n = 0; 2 * n <= seq.kappa(); ++n)
    if (!is_pd(hankel(seq, n), tol)) return false;
  return true;
}

MatrixSeq canonical_extension(const MatrixSeq& seq, const Tolerances& tol) {
  MatrixSeq ext = seq;
  const Index n = seq.kappa() / 2;
  if (seq.kappa() % 2 == 0) ext = ext.extended(lambda_block(seq, n, tol));
  const CMatrix hp = pinv(hankel(ext, n), tol);
  return ext.extended(ext.z_block(n + 1, 2 * n + 1) * hp * ext.y_block(n + 1, 2 * n + 1));
}

bool is_hnnd_extendable(const MatrixSeq& seq, const Tolerances& tol) {
  const Index kappa = seq.kappa();
  const Index n = kappa / 2;
  const CMatrix h = hankel(seq, n);
  if (!is_psd(h, tol)) return false;
  if (kappa % 2 == 1) {
    if (!is_hermitian(seq[kappa], tol)) return false;
    return range_contained(seq.y_block(n + 1, 2 * n + 1), h, tol);
  }
  return is_psd(hankel(canonical_extension(seq, tol), n + 1), tol);
}

bool is_first_term_dominated(const MatrixSeq& seq, const Tolerances& tol) {
  for (Index j = 0; j <= seq.kappa(); ++j) {
    if (!kernel_contained(seq[0], seq[j], tol)) return false;
    if (!range_contained(seq[j], seq[0], tol)) return false;
  }
  return true;
}

std::pair<MatrixSeq, MolecularMeasure> random_extendable_seq(Index q, Index kappa, Index atom_budget,
                                                              std::uint64_t seed) {
  if (q < 1 || kappa < 0 || atom_budget < 1) throw ContractError("random_extendable_seq: bad arguments");
  std::mt19937_64 rng(seed);
  MeasureDraw draw;
  draw.max_atoms = atom_budget;
  MolecularMeasure sigma = random_molecular(rng, q, draw);
  return {sigma.moments_prefix(kappa), sigma};
}

}  // namespace momentforge
