#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "momentforge/matpoly.hpp"
#include "momentforge/measures.hpp"
#include "momentforge/types.hpp"

namespace momentforge {

struct Node;

class HerglotzExpr {
 public:
  HerglotzExpr() = default;
  explicit HerglotzExpr(std::shared_ptr<const Node> node);

  static HerglotzExpr zero(Index q);
  static HerglotzExpr constant(const CMatrix& a);
  static HerglotzExpr linear(const CMatrix& beta);
  static HerglotzExpr nev_triple(const CMatrix& alpha, const CMatrix& beta, const MolecularMeasure& nu);
  static HerglotzExpr stieltjes_of(const MolecularMeasure& sigma);
  static HerglotzExpr gamma_mu(const CMatrix& gamma, const MolecularMeasure& mu);
  static HerglotzExpr sum(const std::vector<HerglotzExpr>& terms);
  // A^* F A
  static HerglotzExpr congruence(const CMatrix& a, const HerglotzExpr& f);
  static HerglotzExpr neg_pinv(const HerglotzExpr& f);
  static HerglotzExpr schur_plus_node(const CMatrix& a, const CMatrix& b, const HerglotzExpr& f);
  // ref_norm feeds the rank cutoff of A^+ (see pinv).
  static HerglotzExpr schur_minus_node(const CMatrix& a, const CMatrix& b, const HerglotzExpr& f,
                                       bool certified, Real ref_norm = 0);
  static HerglotzExpr lft_by_resolvent(const ResolventPoly& v, const HerglotzExpr& f);
  // U f U^*
  static HerglotzExpr compressed(const CMatrix& u, const HerglotzExpr& f);

  bool valid() const { return static_cast<bool>(node_); }
  Index q() const;
  const Node& node() const;
  const std::shared_ptr<const Node>& ptr() const { return node_; }
  std::string kind() const;

  CMatrix eval(Complex z) const;

 private:
  std::shared_ptr<const Node> node_;
};

struct ZeroNode {
  Index q;
};
struct ConstNode {
  CMatrix value;
};
struct LinearNode {
  CMatrix beta;
};
struct NevTripleNode {
  CMatrix alpha, beta;
  MolecularMeasure nu;
};
struct StieltjesNode {
  MolecularMeasure sigma;
};
struct GammaMuNode {
  CMatrix gamma;
  MolecularMeasure mu;
};
struct SumNode {
  std::vector<HerglotzExpr> terms;
};
struct CongruenceNode {
  CMatrix a;
  HerglotzExpr f;
};
struct NegPinvNode {
  HerglotzExpr f;
};
struct SchurPlusNode {
  CMatrix a, b;
  HerglotzExpr f;
};
struct SchurMinusNode {
  CMatrix a, b, ap;
  HerglotzExpr f;
  bool certified;
  Real ref;
};
struct LftNode {
  ResolventPoly v;
  HerglotzExpr f;
};
struct CompressedNode {
  CMatrix u;
  HerglotzExpr f;
};

using NodeData = std::variant<ZeroNode, ConstNode, LinearNode, NevTripleNode, StieltjesNode, GammaMuNode, SumNode,
                              CongruenceNode, NegPinvNode, SchurPlusNode, SchurMinusNode, LftNode, CompressedNode>;

struct Node {
  Index q;
  NodeData data;
};

class EvalCache {
 public:
  CMatrix eval(const HerglotzExpr& f, Complex z);

 private:
  std::unordered_map<const Node*, CMatrix> memo_;
  Complex z_{0, 0};
};

struct AlphaBeta {
  CMatrix alpha;
  CMatrix beta;
  Real residual = 0;
};

struct LimitEstimate {
  CMatrix value;
  Real residual = 0;
  bool converged = true;
};

std::vector<Real> default_limit_grid();
std::vector<Real> default_class_grid();

AlphaBeta nevanlinna_alpha_beta(const HerglotzExpr& f, const std::vector<Real>& y_grid = default_limit_grid());
LimitEstimate gamma_limit(const HerglotzExpr& f, const std::vector<Real>& y_grid = default_limit_grid(),
                          Real rel_threshold = 1e-6L);

struct ClassTag {
  enum class Kind { R, Rm2, Rm1, Rk, Rm1Zero, RkZero, PEven, POdd, RTilde0 };
  Kind kind = Kind::R;
  Index kappa = 0;
  CMatrix A;

  std::string name() const;
};

struct DiagnosticCheck {
  std::string name;
  bool pass = false;
  bool conclusive = true;
  Real value = 0;
  Real threshold = 0;
  std::string detail;
};

struct DiagnosticsReport {
  ClassTag tag;
  std::vector<DiagnosticCheck> checks;

  bool pass() const;
  Real score() const;  // fraction of checks passed
  const DiagnosticCheck* find(const std::string& name) const;
};

DiagnosticsReport class_diagnostics(const HerglotzExpr& f, const ClassTag& tag,
                                    const std::vector<Real>& grid = default_class_grid(),
                                    const Tolerances& tol = {});

}  // namespace momentforge
