#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "momentforge/measures.hpp"
#include "momentforge/sequence.hpp"
#include "momentforge/types.hpp"

namespace momentforge {

CMatrix hankel(const MatrixSeq& seq, Index n);
CMatrix k_hankel(const MatrixSeq& seq, Index n);

// ref_norm < 0 means "use seq.scale()"; s_0^+ is taken against that reference.
MatrixSeq reciprocal(const MatrixSeq& seq, const Tolerances& tol = {}, Real ref_norm = -1);
MatrixSeq first_schur_transform(const MatrixSeq& seq, const Tolerances& tol = {}, Real ref_norm = -1);
MatrixSeq schur_transform(const MatrixSeq& seq, Index k, const Tolerances& tol = {});

// Heads s_0^(k) and s_1^(k) of the k-th Schur transform, for all k with 2k <= kappa.
struct SchurHeads {
  std::vector<CMatrix> s0;
  std::vector<CMatrix> s1;  // s1[k] present when 2k + 1 <= kappa
};
SchurHeads schur_heads(const MatrixSeq& seq, const Tolerances& tol = {});

struct HankelParam {
  std::vector<CMatrix> C;  // C[0] is C_1
  std::vector<CMatrix> D;  // D[k] = L_k
  std::vector<CMatrix> H, K, M, N, Sigma, Lambda, L;
};
HankelParam canonical_param(const MatrixSeq& seq, const Tolerances& tol = {});

// Lambda_n and L_n alone.
CMatrix lambda_block(const MatrixSeq& seq, Index n, const Tolerances& tol = {});
CMatrix l_block(const MatrixSeq& seq, Index n, const Tolerances& tol = {});

bool is_hnnd(const MatrixSeq& seq, const Tolerances& tol = {});
bool is_hpd(const MatrixSeq& seq, const Tolerances& tol = {});
bool is_hnnd_extendable(const MatrixSeq& seq, const Tolerances& tol = {});
bool is_first_term_dominated(const MatrixSeq& seq, const Tolerances& tol = {});

// Two-step canonical extension: appends s_{2n+1} (even input only) and s_{2n+2}.
MatrixSeq canonical_extension(const MatrixSeq& seq, const Tolerances& tol = {});

std::pair<MatrixSeq, MolecularMeasure> random_extendable_seq(Index q, Index kappa, Index atom_budget,
                                                              std::uint64_t seed);

}  // namespace momentforge
