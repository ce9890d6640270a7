#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "momentforge/herglotz.hpp"
#include "momentforge/seqkit.hpp"
#include "momentforge/transforms.hpp"

namespace momentforge {

struct ParameterSlot {
  Index r = 0;
  CMatrix U;  // q x r
  std::string required_class;
};

struct Problem {
  MatrixSeq seq;
  Parity parity = Parity::Even;
  Index n = 0;
  CMatrix L;  // L_n
  ParameterSlot slot;
  Tolerances tol;

  Index kappa() const { return seq.kappa(); }
  bool determinate() const { return slot.r == 0; }
};

Real determinacy_threshold(const MatrixSeq& seq, Index n);

// Throws NotExtendableError unless seq is Hankel nonnegative definite extendable.
Problem open_problem(const MatrixSeq& seq, const Tolerances& tol = {});
// Skips the extendability check; for experiments on data outside the solvable class.
Problem open_problem_unchecked(const MatrixSeq& seq, const Tolerances& tol = {});

HerglotzExpr empty_parameter();

HerglotzExpr solve(const Problem& p, const HerglotzExpr& f);
HerglotzExpr determinate_solution(const Problem& p);
HerglotzExpr recover_parameter(const Problem& p, const HerglotzExpr& F);

// Certified parameter gallery: Zero, Const(cI + i dI) (even only), StieltjesOf(molecular).
enum class GalleryKind { Zero, Const, Stieltjes };
HerglotzExpr gallery_parameter(GalleryKind kind, Index r, Parity parity, std::mt19937_64& rng);
HerglotzExpr random_gallery_parameter(Index r, Parity parity, std::mt19937_64& rng);

}  // namespace momentforge
