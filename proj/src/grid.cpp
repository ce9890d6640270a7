#include "momentforge/grid.hpp"

#include <exception>

#include <omp.h>

namespace momentforge {

void for_each_index(Index n, Exec exec, const std::function<void(Index)>& fn) {
  if (exec == Exec::Serial) {
    for (Index i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<size_t>(std::max<Index>(n, 0)));
#pragma omp parallel for schedule(dynamic)
  for (Index i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      errors[static_cast<size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<CMatrix> eval_grid(const HerglotzExpr& f, const std::vector<Complex>& zs, Exec exec) {
  std::vector<CMatrix> out(zs.size());
  for_each_index(static_cast<Index>(zs.size()), exec, [&](Index i) {
    const auto k = static_cast<size_t>(i);
    out[k] = f.eval(zs[k]);
  });
  return out;
}

std::vector<Complex> ray_grid(const std::vector<Real>& radii, const std::vector<Real>& angles) {
  std::vector<Complex> out;
  for (Real a : angles)
    for (Real r : radii) out.push_back(polar(r, a));
  return out;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace momentforge
