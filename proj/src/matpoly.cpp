#include "momentforge/matpoly.hpp"

#include <cmath>
#include <sstream>

#include "momentforge/matkit.hpp"

namespace momentforge {

CMatrix lft(const LftMatrix& e, const CMatrix& x, const LftOptions& opt, Complex z) {
  const Index q = e.q();
  if (e.E.rows() != 2 * q || e.E.cols() != 2 * q) throw ShapeError("lft: E must be 2q x 2q");
  if (x.rows() != q || x.cols() != q) throw ShapeError("lft: X must be q x q");
  const CMatrix num = e.E.topLeftCorner(q, q) * x + e.E.topRightCorner(q, q);
  const CMatrix den = e.E.bottomLeftCorner(q, q) * x + e.E.bottomRightCorner(q, q);
  require_finite(den, "lft");
  Eigen::PartialPivLU<CMatrix> lu(den);
  const Real rcond = lu.rcond();
  const Real det = abs(lu.determinant());
  if (!(rcond > 0) || 1 / rcond > opt.max_cond || det < opt.min_abs_det) {
    std::ostringstream os;
    os << "lft: singular denominator at z = (" << static_cast<double>(z.real()) << ", "
       << static_cast<double>(z.imag()) << "), cond ~ " << static_cast<double>(rcond > 0 ? 1 / rcond : INFINITY);
    throw SingularDenominatorError(os.str(), z, rcond > 0 ? 1 / rcond : INFINITY);
  }
  // X den = num  <=>  den^* X^* = num^*
  return den.adjoint().partialPivLu().solve(num.adjoint()).adjoint();
}

CMatrix w_poly(const CMatrix& a, const CMatrix& b, Complex z) { return w_poly(a, pinv(a), b, z); }

CMatrix v_poly(const CMatrix& a, const CMatrix& b, Complex z) { return v_poly(a, pinv(a), b, z); }

CMatrix w_poly(const CMatrix& a, const CMatrix& ap, const CMatrix& b, Complex z) {
  const Index q = a.rows();
  CMatrix out(2 * q, 2 * q);
  CMatrix top_left = z * identity(q);
  if (b.size() != 0) top_left -= b * ap;
  out << top_left, a, -ap, identity(q) - ap * a;
  return out;
}

CMatrix v_poly(const CMatrix& a, const CMatrix& ap, const CMatrix& b, Complex z) {
  const Index q = a.rows();
  CMatrix out(2 * q, 2 * q);
  CMatrix bottom_right = z * identity(q);
  if (b.size() != 0) bottom_right -= ap * b;
  out << zeros(q, q), -a, ap, bottom_right;
  return out;
}

PolyFactor make_factor(FactorKind kind, const CMatrix& a, const CMatrix& b, Real ref_norm,
                       const Tolerances& tol) {
  if (a.rows() != a.cols()) throw ShapeError("make_factor: A not square");
  if (b.size() != 0 && (b.rows() != a.rows() || b.cols() != a.cols())) throw ShapeError("make_factor: B shape");
  return PolyFactor{kind, a, b, pinv(a, tol, ref_norm), ref_norm};
}

CMatrix PolyFactor::eval(Complex z) const {
  if (kind == FactorKind::V || kind == FactorKind::v) return v_poly(A, Ap, B, z);
  return w_poly(A, Ap, B, z);
}

CMatrix ResolventPoly::eval(Complex z) const {
  CMatrix acc = identity(2 * q);
  for (const auto& f : factors) acc = acc * f.eval(z);
  return acc;
}

const char* factor_kind_name(FactorKind k) {
  switch (k) {
    case FactorKind::V: return "V";
    case FactorKind::v: return "v";
    case FactorKind::W: return "W";
    case FactorKind::w: return "w";
  }
  return "?";
}

FactorKind factor_kind_from_name(const std::string& s) {
  if (s == "V") return FactorKind::V;
  if (s == "v") return FactorKind::v;
  if (s == "W") return FactorKind::W;
  if (s == "w") return FactorKind::w;
  throw ContractError("unknown factor kind: " + s);
}

}  // namespace momentforge
