#pragma once

#include <optional>
#include <string>
#include <vector>

#include "momentforge/grid.hpp"
#include "momentforge/herglotz.hpp"
#include "momentforge/sequence.hpp"

namespace momentforge {

// z^{k+1} F(z) + sum_{j=0}^{k+1} z^{k+1-j} s_{j-1}, for -1 <= k <= kappa.
CMatrix hn_transform(const HerglotzExpr& f, const MatrixSeq& seq, Index k, Complex z,
                     const CMatrix& s_minus1 = CMatrix());

enum class Verdict { Decaying, Stagnant, Diverging };
const char* verdict_name(Verdict v);

struct ResidualCurve {
  Index k = 0;
  Real theta = 0;
  std::vector<Real> values;
  std::vector<Real> floors;  // rounding-noise estimate per grid point
  Verdict verdict = Verdict::Stagnant;
};

struct MomentEstimate {
  MatrixSeq moments;
  std::vector<Real> residuals;
  std::vector<bool> converged;
  bool complete = true;
  std::vector<Real> y_grid;
};

// Decaying: last <= max(decay_ratio * peak, floor_factor * floor), the last
// monotone_tail points non-increasing (within the floor) and falling at least
// like r^-tail_slope across them. A curve that sits at the floor at both ends
// is decaying (residual zero to rounding).
struct VerdictRule {
  Real decay_ratio = 1e-2L;
  Index monotone_tail = 4;
  Real floor_factor = 10;
  Real tail_slope = 0.5L;
};

struct AsymptoticReport {
  std::vector<Real> rays;
  std::vector<Real> r_grid;
  std::vector<ResidualCurve> curves;  // every k in [-1, kappa] on every ray
  VerdictRule rule;
  std::optional<MomentEstimate> moments;

  // Verdict at k = kappa, decaying only if every ray decays.
  Verdict verdict() const;
  Verdict verdict_at(Index k) const;
};

std::vector<Real> default_rays();
// 13 points 1.5*rho*10^(k/4), rho the moment growth rate of seq. hn_check with an
// empty r_grid starts here and shifts the window outward by 10x (at most 3 times)
// until the k = kappa curves decay, as long as eps*(r/rho)^(kappa+1) stays below 1e-6
// at the window end.
std::vector<Real> default_r_grid(const MatrixSeq& seq);
Real moment_growth_rate(const MatrixSeq& seq);

AsymptoticReport hn_check(const HerglotzExpr& f, const MatrixSeq& seq, const std::vector<Real>& rays = default_rays(),
                          const std::vector<Real>& r_grid = {}, bool with_moments = false,
                          Exec exec = Exec::Parallel);

Verdict classify_curve(const std::vector<Real>& r_grid, const std::vector<Real>& values,
                       const std::vector<Real>& floors, const VerdictRule& rule = {});

// Empty y_grid: geometric grids starting at 2.5*rho*4^i (i < 7) are tried in turn,
// rho from a pilot extraction at y in [1e3, 1e6]. The grid that agrees best with its
// outward neighbour wins and that disagreement is folded into the residuals.
MomentEstimate extract_moments(const HerglotzExpr& f, Index m, const std::vector<Real>& y_grid = {},
                               Exec exec = Exec::Parallel);
std::vector<Real> default_y_grid(const HerglotzExpr& f);
Real laurent_scale(const HerglotzExpr& f);

struct CompareReport {
  Real max_diff = 0;
  Complex worst_z{0, 0};
  Real tol = 0;
  bool pass = true;
};

CompareReport compare(const HerglotzExpr& f, const HerglotzExpr& g, const std::vector<Complex>& z_grid, Real tol,
                      Exec exec = Exec::Parallel);

// 12 points: |z| in [0.5, 50] on the rays pi/6, pi/2, 5pi/6.
std::vector<Complex> standard_z_grid();

}  // namespace momentforge
