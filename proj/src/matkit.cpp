#include "momentforge/matkit.hpp"

#include <algorithm>
#include <cmath>

namespace momentforge {

void Tolerances::validate() const {
  for (Real v : {rank_rtol, psd_atol, eq_atol}) {
    if (!(v > 0 && v < 1)) throw ContractError("tolerances must lie in (0, 1)");
  }
}

namespace {

// +1 exactly Hermitian, -1 exactly skew-Hermitian, 0 otherwise.
int exact_symmetry(const CMatrix& m) {
  if (m.rows() != m.cols()) return 0;
  bool herm = true, skew = true;
  for (Index j = 0; j < m.cols() && (herm || skew); ++j)
    for (Index i = j; i < m.rows(); ++i) {
      const Complex c = conj(m(j, i));
      herm = herm && m(i, j) == c;
      skew = skew && m(i, j) == -c;
    }
  return herm ? 1 : skew ? -1 : 0;
}

Real max_abs_eigenvalue(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
  return std::max(abs(es.eigenvalues()(0)), abs(es.eigenvalues()(hermitian.rows() - 1)));
}

}  // namespace

Real op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  switch (exact_symmetry(m)) {
    case 1:
      return max_abs_eigenvalue(m);
    case -1:
      return max_abs_eigenvalue(Complex(0, 1) * m);
    default:
      break;
  }
  // the largest singular value keeps full relative accuracy through the Gram matrix
  const CMatrix gram = m.rows() >= m.cols() ? CMatrix(m.adjoint() * m) : CMatrix(m * m.adjoint());
  return sqrt(max_abs_eigenvalue(gram));
}

bool all_finite(const CMatrix& m) {
  for (Index i = 0; i < m.size(); ++i) {
    const Complex& v = m.data()[i];
    if (!isfinite(v.real()) || !isfinite(v.imag())) return false;
  }
  return true;
}

void require_finite(const CMatrix& m, const char* where) {
  if (!all_finite(m)) throw NumericError(std::string(where) + ": non-finite entries");
}

CMatrix pinv(const CMatrix& m, const Tolerances& tol) { return pinv(m, tol, 0); }

CMatrix pinv(const CMatrix& m, const Tolerances& tol, Real ref_norm) {
  require_finite(m, "pinv");
  if (m.size() == 0) return CMatrix::Zero(m.cols(), m.rows());
  if (exact_symmetry(m) == 1) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    if (es.info() != Eigen::Success) throw NumericError("pinv: eigensolver did not converge");
    const auto& ev = es.eigenvalues();
    const Real top = std::max(abs(ev(0)), abs(ev(ev.size() - 1)));
    const Real cutoff = tol.rank_rtol * std::max(top, ref_norm);
    CMatrix out = CMatrix::Zero(m.rows(), m.rows());
    for (Index k = 0; k < ev.size(); ++k) {
      if (abs(ev(k)) <= cutoff || ev(k) == 0) continue;
      out += (es.eigenvectors().col(k) / ev(k)) * es.eigenvectors().col(k).adjoint();
    }
    return out;
  }
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericError("pinv: SVD did not converge");
  const auto& sv = svd.singularValues();
  const Real cutoff = tol.rank_rtol * std::max(sv(0), ref_norm);
  CMatrix out = CMatrix::Zero(m.cols(), m.rows());
  for (Index k = 0; k < sv.size(); ++k) {
    if (sv(k) <= cutoff || sv(k) == 0) break;
    out += (svd.matrixV().col(k) / sv(k)) * svd.matrixU().col(k).adjoint();
  }
  return out;
}

Index numerical_rank(const CMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return 0;
  if (exact_symmetry(m) == 1) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const Real cut = tol.rank_rtol * std::max(abs(ev(0)), abs(ev(ev.size() - 1)));
    Index r = 0;
    for (Index k = 0; k < ev.size(); ++k) r += abs(ev(k)) > cut ? 1 : 0;
    return r;
  }
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  Index r = 0;
  while (r < sv.size() && sv(r) > tol.rank_rtol * sv(0)) ++r;
  return r;
}

CMatrix re_part(const CMatrix& m) { return (m + m.adjoint()) / Real(2); }

CMatrix im_part(const CMatrix& m) { return (m - m.adjoint()) / Complex(0, 2); }

Real min_eigenvalue(const CMatrix& hermitian) {
  if (hermitian.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(re_part(hermitian), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
  return es.eigenvalues()(0);
}

static void require_square(const CMatrix& m, const char* where) {
  if (m.rows() != m.cols()) throw ShapeError(std::string(where) + ": matrix not square");
}

bool is_hermitian(const CMatrix& m, const Tolerances& tol) {
  require_square(m, "is_hermitian");
  return op_norm(m - m.adjoint()) <= tol.eq_atol * (1 + op_norm(m));
}

bool is_psd(const CMatrix& m, const Tolerances& tol) {
  if (!is_hermitian(m, tol)) return false;
  return min_eigenvalue(m) >= -tol.psd_atol * (1 + op_norm(m));
}

bool is_pd(const CMatrix& m, const Tolerances& tol) {
  if (!is_hermitian(m, tol)) return false;
  if (m.size() == 0) return true;
  return min_eigenvalue(m) > tol.psd_atol * (1 + op_norm(m));
}

bool kernel_contained(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
  if (a.cols() != b.cols()) throw ShapeError("kernel_contained: column counts differ");
  CMatrix proj = pinv(a, tol) * a;
  return op_norm(b * proj - b) <= tol.eq_atol * (1 + op_norm(b));
}

bool range_contained(const CMatrix& c, const CMatrix& a, const Tolerances& tol) {
  if (a.rows() != c.rows()) throw ShapeError("range_contained: row counts differ");
  CMatrix proj = a * pinv(a, tol);
  return op_norm(proj * c - c) <= tol.eq_atol * (1 + op_norm(c));
}

bool is_ep(const CMatrix& m, const Tolerances& tol) {
  require_square(m, "is_ep");
  CMatrix mp = pinv(m, tol);
  return op_norm(m * mp - mp * m) <= tol.eq_atol;
}

CMatrix orthonormal_range_basis(const CMatrix& a, const Tolerances& tol) {
  return orthonormal_range_basis(a, tol, 0);
}

CMatrix orthonormal_range_basis(const CMatrix& a, const Tolerances& tol, Real abs_floor) {
  require_finite(a, "orthonormal_range_basis");
  if (a.size() == 0) throw EmptyBasisError("orthonormal_range_basis: empty matrix");
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Real cutoff = std::max(tol.rank_rtol * sv(0), abs_floor);
  Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  if (r == 0) throw EmptyBasisError("orthonormal_range_basis: matrix is zero");
  return svd.matrixV().leftCols(r);
}

Real rel_diff(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw ShapeError("rel_diff: shape mismatch");
  return op_norm(x - y) / (1 + std::max(op_norm(x), op_norm(y)));
}

bool approx_equal(const CMatrix& x, const CMatrix& y, Real atol) {
  return rel_diff(x, y) <= atol;
}

CMatrix identity(Index q) { return CMatrix::Identity(q, q); }

CMatrix zeros(Index rows, Index cols) { return CMatrix::Zero(rows, cols); }

}  // namespace momentforge
