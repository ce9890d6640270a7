#pragma once

#include <functional>
#include <vector>

#include "momentforge/herglotz.hpp"

namespace momentforge {

enum class Exec { Serial, Parallel };

// Runs fn(0..n-1); the parallel path uses OpenMP. The first exception (by index)
// is rethrown after the loop.
void for_each_index(Index n, Exec exec, const std::function<void(Index)>& fn);

std::vector<CMatrix> eval_grid(const HerglotzExpr& f, const std::vector<Complex>& zs, Exec exec = Exec::Parallel);

std::vector<Complex> ray_grid(const std::vector<Real>& radii, const std::vector<Real>& angles);

int max_threads();

}  // namespace momentforge
