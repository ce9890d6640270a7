#pragma once

#include <vector>

#include "momentforge/types.hpp"

namespace momentforge {

struct Extrapolated {
  CMatrix value;
  Real residual = 0;
};

// Polynomial extrapolation of samples v_i taken at abscissae h_i to h = 0.
// order >= 0 slides a window of order+1 points and reports the change between
// the last two windows; order < 0 uses every point at once (Neville).
Extrapolated richardson(const std::vector<Real>& h, const std::vector<CMatrix>& v, int order);

std::vector<Real> geometric_grid(Real start, Real ratio, int count);

struct LaurentExtraction {
  std::vector<CMatrix> coeffs;
  std::vector<Real> residuals;
  std::vector<bool> converged;
  bool complete = true;  // false when a coefficient failed and extraction stopped
};

// Given F(iy) on the grid, extracts s_0..s_m from F(z) ~ -sum_j s_j z^{-(j+1)} one
// coefficient at a time; previously extracted heads are subtracted before the next
// limit is taken. Stops after the first coefficient whose residual exceeds
// rel_threshold * (1 + |s_k|).
LaurentExtraction extract_laurent(const std::vector<Real>& y, const std::vector<CMatrix>& f_values, Index m,
                                  int order, Real rel_threshold);

}  // namespace momentforge
