#include "momentforge/verify.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "momentforge/extrapolate.hpp"
#include "momentforge/matkit.hpp"

namespace momentforge {

namespace {

// Relative accuracy assumed for evaluated function values.
const Real kEvalEps = 256 * eps();

// Default r-window moves outward by 10x at most this often.
constexpr int kWindowShifts = 3;
constexpr long double kWindowNoise = 1e-6L;
// Adaptive y-grid search: start scales 2.5*rho*4^i.
constexpr int kScaleSteps = 7;

CMatrix hn_from_value(const CMatrix& fz, const MatrixSeq& seq, Index k, Complex z, const CMatrix& s_minus1) {
  const Complex w = Real(1) / z;
  // F + s_{-1} + sum_{j=0}^{k} s_j w^{j+1}, then scaled by z^{k+1}
  CMatrix inner = fz;
  if (s_minus1.size() != 0) inner += s_minus1;
  if (k >= 0) {
    CMatrix p = seq[k];
    for (Index j = k - 1; j >= 0; --j) p = p * w + seq[j];
    inner += p * w;
  }
  return pow(z, static_cast<int>(k + 1)) * inner;
}

Real hn_floor(const CMatrix& fz, const MatrixSeq& seq, Index k, Real r) {
  Real acc = pow(r, static_cast<Real>(k + 1)) * op_norm(fz);
  for (Index j = 0; j <= k; ++j) acc += pow(r, static_cast<Real>(k - j)) * op_norm(seq[j]);
  return kEvalEps * acc;
}

}  // namespace

CMatrix hn_transform(const HerglotzExpr& f, const MatrixSeq& seq, Index k, Complex z, const CMatrix& s_minus1) {
  if (k < -1 || k > seq.kappa()) throw RangeError("hn_transform: need -1 <= k <= kappa");
  if (!(z.imag() > 0)) throw DomainError("hn_transform: Im z must be positive");
  return hn_from_value(f.eval(z), seq, k, z, s_minus1);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Decaying: return "decaying";
    case Verdict::Stagnant: return "stagnant";
    case Verdict::Diverging: return "diverging";
  }
  return "?";
}

Verdict classify_curve(const std::vector<Real>& r_grid, const std::vector<Real>& values,
                       const std::vector<Real>& floors, const VerdictRule& rule) {
  const size_t n = values.size();
  if (n < 2 || r_grid.size() != n || floors.size() != n) return Verdict::Stagnant;
  const Real first = values.front();
  const Real last = values.back();
  const Real ff = rule.floor_factor;
  if (first <= ff * floors.front() && last <= ff * floors.back()) return Verdict::Decaying;
  const size_t tail = std::clamp<size_t>(static_cast<size_t>(rule.monotone_tail), 2, n);
  const size_t t0 = n - tail;
  bool monotone = true;
  for (size_t i = t0 + 1; i < n; ++i)
    if (values[i] > values[i - 1] + ff * (floors[i] + floors[i - 1])) monotone = false;
  const bool at_floor = last <= ff * floors.back();
  const bool falling = at_floor || last <= values[t0] * pow(r_grid[t0] / r_grid.back(), rule.tail_slope);
  const Real peak = *std::max_element(values.begin(), values.end());
  const bool small = last <= std::max(rule.decay_ratio * peak, ff * floors.back());
  if (small && monotone && falling) return Verdict::Decaying;
  if (last > 2 * first) return Verdict::Diverging;
  return Verdict::Stagnant;
}

Verdict AsymptoticReport::verdict_at(Index k) const {
  bool any = false;
  Verdict worst = Verdict::Decaying;
  for (const auto& c : curves) {
    if (c.k != k) continue;
    any = true;
    if (c.verdict == Verdict::Diverging) worst = Verdict::Diverging;
    if (c.verdict == Verdict::Stagnant && worst == Verdict::Decaying) worst = Verdict::Stagnant;
  }
  return any ? worst : Verdict::Stagnant;
}

Verdict AsymptoticReport::verdict() const {
  Index kmax = -1;
  for (const auto& c : curves) kmax = std::max(kmax, c.k);
  return verdict_at(kmax);
}

std::vector<Real> default_rays() { return {M_PI / 6, M_PI / 2, 5 * M_PI / 6}; }

Real moment_growth_rate(const MatrixSeq& seq) {
  const Real s0 = op_norm(seq[0]);
  if (s0 == 0) return 0;
  Real rho = 0;
  for (Index j = 1; j <= seq.kappa(); ++j)
    rho = std::max(rho, pow(op_norm(seq[j]) / s0, Real(1) / static_cast<Real>(j)));
  return rho;
}

namespace {

Real grid_scale(const MatrixSeq& seq) {
  const Real rho = moment_growth_rate(seq);
  return rho < 1e-3L ? Real(1) : rho;
}

}  // namespace

std::vector<Real> default_r_grid(const MatrixSeq& seq) {
  const Real rho = grid_scale(seq);
  return geometric_grid(1.5L * rho, pow(Real(10), Real(0.25L)), 13);
}

namespace {

AsymptoticReport hn_check_on(const HerglotzExpr& f, const MatrixSeq& seq, const std::vector<Real>& rays,
                             const std::vector<Real>& r_grid, Exec exec) {
  AsymptoticReport rep;
  rep.rays = rays;
  rep.r_grid = r_grid;
  for (size_t i = 1; i < rep.r_grid.size(); ++i)
    if (!(rep.r_grid[i] > rep.r_grid[i - 1])) throw ContractError("hn_check: r-grid must be increasing");
  const std::vector<Complex> zs = ray_grid(rep.r_grid, rays);
  const std::vector<CMatrix> values = eval_grid(f, zs, exec);
  const size_t nr = rep.r_grid.size();
  for (size_t a = 0; a < rays.size(); ++a) {
    for (Index k = -1; k <= seq.kappa(); ++k) {
      ResidualCurve c;
      c.k = k;
      c.theta = rays[a];
      for (size_t i = 0; i < nr; ++i) {
        const CMatrix& fz = values[a * nr + i];
        c.values.push_back(op_norm(hn_from_value(fz, seq, k, zs[a * nr + i], CMatrix())));
        c.floors.push_back(hn_floor(fz, seq, k, rep.r_grid[i]));
      }
      c.verdict = classify_curve(rep.r_grid, c.values, c.floors, rep.rule);
      rep.curves.push_back(std::move(c));
    }
  }
  return rep;
}

}  // namespace

AsymptoticReport hn_check(const HerglotzExpr& f, const MatrixSeq& seq, const std::vector<Real>& rays,
                          const std::vector<Real>& r_grid, bool with_moments, Exec exec) {
  if (f.q() != seq.q()) throw ShapeError("hn_check: size mismatch");
  for (Real th : rays)
    if (!(th > 0 && th < M_PI)) throw DomainError("hn_check: rays must lie in (0, pi)");
  AsymptoticReport rep;
  if (!r_grid.empty()) {
    rep = hn_check_on(f, seq, rays, r_grid, exec);
  } else {
    std::vector<Real> grid = default_r_grid(seq);
    const Real rho = grid_scale(seq);
    for (int shift = 0; shift <= kWindowShifts; ++shift) {
      rep = hn_check_on(f, seq, rays, grid, exec);
      if (rep.verdict() == Verdict::Decaying) break;
      for (Real& r : grid) r *= 10;
      if (eps() * pow(grid.back() / rho, static_cast<int>(seq.kappa() + 1)) > kWindowNoise) break;
    }
  }
  if (with_moments) rep.moments = extract_moments(f, seq.kappa(), {}, exec);
  return rep;
}

Real laurent_scale(const HerglotzExpr& f) {
  const std::vector<Real> pilot_grid = geometric_grid(1e3L, sqrt(Real(10)), 7);
  std::vector<CMatrix> vals;
  for (Real y : pilot_grid) vals.push_back(f.eval(Complex(0, y)));
  LaurentExtraction pilot = extract_laurent(pilot_grid, vals, 2, -1, INFINITY);
  const Real s0 = op_norm(pilot.coeffs[0]);
  Real rho = 0;
  if (s0 > 0) rho = std::max(op_norm(pilot.coeffs[1]) / s0, sqrt(op_norm(pilot.coeffs[2]) / s0));
  if (!(rho > 1e-3L) || !isfinite(rho)) rho = 1;
  return rho;
}

namespace {

std::vector<Real> y_grid_at(Real start) { return geometric_grid(start, pow(Real(10), Real(1.5L) / 13), 14); }

// Largest coefficient change between two extractions, relative to rho^k |c_0|.
Real spread(const LaurentExtraction& a, const LaurentExtraction& b, Real rho) {
  const size_t n = std::min(a.coeffs.size(), b.coeffs.size());
  if (n == 0) return INFINITY;
  const Real c0 = std::max(op_norm(a.coeffs[0]), eps());
  Real worst = 0;
  for (size_t k = 0; k < n; ++k)
    worst = std::max(worst, op_norm(a.coeffs[k] - b.coeffs[k]) / (c0 * pow(rho, static_cast<int>(k))));
  return worst;
}

}  // namespace

std::vector<Real> default_y_grid(const HerglotzExpr& f) { return y_grid_at(2.5L * laurent_scale(f)); }

MomentEstimate extract_moments(const HerglotzExpr& f, Index m, const std::vector<Real>& y_grid, Exec exec) {
  if (m < 0) throw RangeError("extract_moments: negative m");
  if (!y_grid.empty() && y_grid.size() < 5) throw ContractError("extract_moments: need at least 5 grid points");
  auto run = [&](const std::vector<Real>& grid) {
    std::vector<Complex> zs;
    for (Real y : grid) zs.emplace_back(0, y);
    return extract_laurent(grid, eval_grid(f, zs, exec), m, -1, 1e-3L);
  };
  auto pack = [&](const LaurentExtraction& ex, const std::vector<Real>& grid) {
    MomentEstimate out;
    out.moments = MatrixSeq(f.q(), ex.coeffs);
    out.residuals = ex.residuals;
    out.converged = ex.converged;
    out.complete = ex.complete;
    out.y_grid = grid;
    return out;
  };
  if (!y_grid.empty()) return pack(run(y_grid), y_grid);

  const Real rho = laurent_scale(f);
  std::vector<Real> prev_grid = y_grid_at(2.5L * rho);
  LaurentExtraction prev = run(prev_grid);
  LaurentExtraction best = prev;
  std::vector<Real> best_grid = prev_grid;
  Real best_spread = INFINITY;
  for (int i = 1; i < kScaleSteps; ++i) {
    std::vector<Real> grid = y_grid_at(2.5L * rho * pow(Real(4), i));
    LaurentExtraction cur = run(grid);
    const Real d = spread(prev, cur, rho);
    if (d < best_spread && prev.coeffs.size() == static_cast<size_t>(m + 1)) {
      best_spread = d;
      best = prev;
      best_grid = prev_grid;
    }
    prev = std::move(cur);
    prev_grid = std::move(grid);
  }
  const Real c0 = std::max(op_norm(best.coeffs[0]), eps());
  for (size_t k = 0; k < best.residuals.size(); ++k) {
    const Real scale = c0 * pow(rho, static_cast<int>(k));
    best.residuals[k] = std::max(best.residuals[k], best_spread * scale);
    best.converged[k] = best.residuals[k] <= 1e-3L * std::max(op_norm(best.coeffs[k]), scale);
    if (!best.converged[k]) best.complete = false;
  }
  return pack(best, best_grid);
}

CompareReport compare(const HerglotzExpr& f, const HerglotzExpr& g, const std::vector<Complex>& z_grid, Real tol,
                      Exec exec) {
  if (f.q() != g.q()) throw ShapeError("compare: size mismatch");
  const auto fv = eval_grid(f, z_grid, exec);
  const auto gv = eval_grid(g, z_grid, exec);
  CompareReport rep;
  rep.tol = tol;
  for (size_t i = 0; i < z_grid.size(); ++i) {
    const Real d = op_norm(fv[i] - gv[i]);
    if (i == 0 || d > rep.max_diff) {
      rep.max_diff = d;
      rep.worst_z = z_grid[i];
    }
  }
  rep.pass = rep.max_diff <= tol;
  return rep;
}

std::vector<Complex> standard_z_grid() {
  return ray_grid(geometric_grid(0.5L, pow(100.0L, 1.0L / 3), 4), default_rays());
}

}  // namespace momentforge
