#pragma once

#include <string>
#include <vector>

#include "momentforge/types.hpp"

namespace momentforge {

struct LftMatrix {
  CMatrix E;  // [[a, b], [c, d]], square blocks of size q
  Index q() const { return E.rows() / 2; }
};

struct LftOptions {
  Real max_cond = 1e12L;
  Real min_abs_det = 1e-300L;
};

// (aX + b)(cX + d)^{-1}; z only labels the error.
CMatrix lft(const LftMatrix& e, const CMatrix& x, const LftOptions& opt = {}, Complex z = Complex(0, 0));

// W_{A,B}(z) and V_{A,B}(z); pass an empty B for B = 0.
CMatrix w_poly(const CMatrix& a, const CMatrix& b, Complex z);
CMatrix v_poly(const CMatrix& a, const CMatrix& b, Complex z);
CMatrix w_poly(const CMatrix& a, const CMatrix& ap, const CMatrix& b, Complex z);
CMatrix v_poly(const CMatrix& a, const CMatrix& ap, const CMatrix& b, Complex z);

enum class FactorKind { V, v, W, w };

struct PolyFactor {
  FactorKind kind;
  CMatrix A;
  CMatrix B;  // empty for v and w
  CMatrix Ap;  // A^+, cached
  Real ref = 0;  // reference norm used for Ap

  CMatrix eval(Complex z) const;
};

// ref_norm feeds the rank cutoff of A^+ (see pinv).
PolyFactor make_factor(FactorKind kind, const CMatrix& a, const CMatrix& b, Real ref_norm = 0,
                       const Tolerances& tol = {});

struct ResolventPoly {
  Index q = 0;
  Index m = 0;
  std::vector<PolyFactor> factors;

  // Product of the factors at z, multiplied left to right.
  CMatrix eval(Complex z) const;
};

const char* factor_kind_name(FactorKind k);
FactorKind factor_kind_from_name(const std::string& s);

}  // namespace momentforge
