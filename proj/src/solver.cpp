#include "momentforge/solver.hpp"

#include "momentforge/matkit.hpp"

namespace momentforge {

Real determinacy_threshold(const MatrixSeq& seq, Index n) { return 1e-10L * (1 + op_norm(seq[2 * n])); }

Problem open_problem_unchecked(const MatrixSeq& seq, const Tolerances& tol) {
  tol.validate();
  Problem p;
  p.seq = seq;
  p.tol = tol;
  p.parity = parity_of(seq.kappa());
  p.n = seq.kappa() / 2;
  p.L = l_block(seq, p.n, tol);
  p.slot.required_class = p.parity == Parity::Even ? "R[-2]" : "R_{-1}";
  const Real thr = determinacy_threshold(seq, p.n);
  if (op_norm(p.L) <= thr) {
    p.slot.r = 0;
    p.slot.U = CMatrix(seq.q(), 0);
  } else {
    p.slot.U = orthonormal_range_basis(p.L, tol, thr);
    p.slot.r = p.slot.U.cols();
  }
  return p;
}

Problem open_problem(const MatrixSeq& seq, const Tolerances& tol) {
  if (!is_hnnd_extendable(seq, tol))
    throw NotExtendableError("not Hankel nonnegative definite extendable: the solution set is empty");
  return open_problem_unchecked(seq, tol);
}

HerglotzExpr empty_parameter() { return HerglotzExpr::zero(0); }

HerglotzExpr solve(const Problem& p, const HerglotzExpr& f) {
  if (!f.valid() || f.q() != p.slot.r)
    throw ShapeError("solve: parameter size " + std::to_string(f.valid() ? f.q() : -1) + " does not match r = " +
                     std::to_string(p.slot.r));
  const ResolventPoly v = resolvent_v(p.seq, p.kappa(), p.tol);
  return HerglotzExpr::lft_by_resolvent(v, HerglotzExpr::compressed(p.slot.U, f));
}

HerglotzExpr determinate_solution(const Problem& p) {
  if (!p.determinate()) throw ContractError("determinate_solution: L_n is nonzero, the problem is indeterminate");
  const ResolventPoly v = resolvent_v(p.seq, p.kappa(), p.tol);
  const Index q = p.seq.q();
  for (Complex z : {Complex(0, 1), Complex(1, 1), Complex(-1, 0.5L), Complex(0, 10)}) {
    const CMatrix e = v.eval(z);
    Eigen::PartialPivLU<CMatrix> lu(e.bottomRightCorner(q, q));
    if (!(lu.rcond() > 1e-12L))
      throw SingularDenominatorError("determinate_solution: v22 singular at a sample point", z, 1 / lu.rcond());
  }
  return HerglotzExpr::lft_by_resolvent(v, HerglotzExpr::zero(q));
}

HerglotzExpr recover_parameter(const Problem& p, const HerglotzExpr& F) {
  if (!F.valid() || F.q() != p.seq.q()) throw ShapeError("recover_parameter: solution size mismatch");
  if (p.determinate()) return empty_parameter();
  const HerglotzExpr chain = sn_chain_forward(p.seq, F, p.n, p.parity, p.tol);
  return HerglotzExpr::congruence(p.slot.U, chain);
}

HerglotzExpr gallery_parameter(GalleryKind kind, Index r, Parity parity, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  switch (kind) {
    case GalleryKind::Zero:
      return HerglotzExpr::zero(r);
    case GalleryKind::Const: {
      if (parity == Parity::Odd) throw ContractError("gallery: constants are not admissible for odd problems");
      const Real c = unit(rng);
      const Real d = abs(unit(rng));
      return HerglotzExpr::constant(Complex(c, d) * identity(r));
    }
    case GalleryKind::Stieltjes: {
      MeasureDraw draw;
      draw.max_atoms = 3;
      return HerglotzExpr::stieltjes_of(random_molecular(rng, r, draw));
    }
  }
  throw ContractError("gallery: unknown kind");
}

HerglotzExpr random_gallery_parameter(Index r, Parity parity, std::mt19937_64& rng) {
  const int choices = parity == Parity::Even ? 3 : 2;
  std::uniform_int_distribution<int> pick(0, choices - 1);
  const int c = pick(rng);
  if (parity == Parity::Even) return gallery_parameter(static_cast<GalleryKind>(c), r, parity, rng);
  return gallery_parameter(c == 0 ? GalleryKind::Zero : GalleryKind::Stieltjes, r, parity, rng);
}

}  // namespace momentforge
