#include "momentforge/extrapolate.hpp"

#include <cmath>

#include "momentforge/matkit.hpp"

namespace momentforge {

namespace {

CMatrix neville_at_zero(const std::vector<Real>& h, const std::vector<CMatrix>& v, size_t lo, size_t hi) {
  std::vector<CMatrix> p(v.begin() + static_cast<long>(lo), v.begin() + static_cast<long>(hi) + 1);
  const size_t n = p.size();
  for (size_t level = 1; level < n; ++level) {
    for (size_t i = 0; i + level < n; ++i) {
      const Real hi_ = h[lo + i];
      const Real hj = h[lo + i + level];
      p[i] = (hi_ * p[i + 1] - hj * p[i]) / (hi_ - hj);
    }
  }
  return p[0];
}

}  // namespace

Extrapolated richardson(const std::vector<Real>& h, const std::vector<CMatrix>& v, int order) {
  if (h.size() != v.size() || h.empty()) throw ShapeError("richardson: sample count mismatch");
  const size_t n = h.size();
  if (n == 1) return {v[0], INFINITY};
  if (order < 0 || static_cast<size_t>(order) + 1 >= n) {
    CMatrix full = neville_at_zero(h, v, 0, n - 1);
    CMatrix lower = neville_at_zero(h, v, 1, n - 1);
    return {full, op_norm(full - lower)};
  }
  const size_t w = static_cast<size_t>(order) + 1;
  CMatrix last = neville_at_zero(h, v, n - w, n - 1);
  CMatrix prev = neville_at_zero(h, v, n - w - 1, n - 2);
  return {last, op_norm(last - prev)};
}

std::vector<Real> geometric_grid(Real start, Real ratio, int count) {
  std::vector<Real> g;
  Real x = start;
  for (int i = 0; i < count; ++i, x *= ratio) g.push_back(x);
  return g;
}

LaurentExtraction extract_laurent(const std::vector<Real>& y, const std::vector<CMatrix>& f_values, Index m,
                                  int order, Real rel_threshold) {
  if (y.size() != f_values.size()) throw ShapeError("extract_laurent: sample count mismatch");
  LaurentExtraction out;
  std::vector<Real> h;
  for (Real yy : y) h.push_back(1 / yy);
  for (Index k = 0; k <= m; ++k) {
    std::vector<CMatrix> g;
    for (size_t i = 0; i < y.size(); ++i) {
      const Complex z(0, y[i]);
      // -(z^{k+1} F + sum_{j<k} z^{k-j} s_j), accumulated Horner-style in z
      CMatrix acc = CMatrix::Zero(f_values[i].rows(), f_values[i].cols());
      for (Index j = 0; j < k; ++j) acc = acc * z + out.coeffs[static_cast<size_t>(j)];
      acc = acc * z + pow(z, static_cast<int>(k + 1)) * f_values[i];
      g.push_back(-acc);
    }
    Extrapolated e = richardson(h, g, order);
    const bool ok = e.residual <= rel_threshold * (1 + op_norm(e.value));
    out.coeffs.push_back(e.value);
    out.residuals.push_back(e.residual);
    out.converged.push_back(ok);
    if (!ok) {
      out.complete = false;
      break;
    }
  }
  return out;
}

}  // namespace momentforge
