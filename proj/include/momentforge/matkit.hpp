#pragma once

#include "momentforge/types.hpp"

namespace momentforge {

// Largest singular value; 0 for empty matrices.
Real op_norm(const CMatrix& m);

bool all_finite(const CMatrix& m);
void require_finite(const CMatrix& m, const char* where);

// Singular values below rank_rtol * max(sigma_max, ref_norm) count as zero.
// The reference norm lets callers snap rounding noise to exact zero when the
// matrix is known to live at a larger scale.
CMatrix pinv(const CMatrix& m, const Tolerances& tol = {});
CMatrix pinv(const CMatrix& m, const Tolerances& tol, Real ref_norm);
Index numerical_rank(const CMatrix& m, const Tolerances& tol = {});

CMatrix re_part(const CMatrix& m);
CMatrix im_part(const CMatrix& m);
Real min_eigenvalue(const CMatrix& hermitian);

bool is_hermitian(const CMatrix& m, const Tolerances& tol = {});
bool is_psd(const CMatrix& m, const Tolerances& tol = {});
bool is_pd(const CMatrix& m, const Tolerances& tol = {});

// N(a) subset of N(b)
bool kernel_contained(const CMatrix& a, const CMatrix& b, const Tolerances& tol = {});
// R(c) subset of R(a)
bool range_contained(const CMatrix& c, const CMatrix& a, const Tolerances& tol = {});
bool is_ep(const CMatrix& m, const Tolerances& tol = {});

// Orthonormal basis of R(a^*); columns = rank.
CMatrix orthonormal_range_basis(const CMatrix& a, const Tolerances& tol = {});
// Same, but singular values at or below abs_floor are also dropped.
CMatrix orthonormal_range_basis(const CMatrix& a, const Tolerances& tol, Real abs_floor);

Real rel_diff(const CMatrix& x, const CMatrix& y);
bool approx_equal(const CMatrix& x, const CMatrix& y, Real atol);

CMatrix identity(Index q);
CMatrix zeros(Index rows, Index cols);

}  // namespace momentforge
