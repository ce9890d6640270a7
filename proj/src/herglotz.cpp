#include "momentforge/herglotz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "momentforge/extrapolate.hpp"
#include "momentforge/matkit.hpp"

namespace momentforge {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

HerglotzExpr make(Index q, NodeData data) {
  return HerglotzExpr(std::make_shared<const Node>(Node{q, std::move(data)}));
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw ShapeError(std::string(what) + ": matrix not square");
  require_finite(m, what);
}

void require_size(const HerglotzExpr& f, Index q, const char* what) {
  if (!f.valid()) throw ContractError(std::string(what) + ": missing child expression");
  if (f.q() != q) throw ShapeError(std::string(what) + ": child size mismatch");
}

CMatrix solve_right(const CMatrix& num, const CMatrix& den, Complex z, const char* what) {
  Eigen::PartialPivLU<CMatrix> lu(den);
  const Real rcond = den.size() == 0 ? 1 : lu.rcond();
  if (!(rcond > 0) || 1 / rcond > 1e12L) {
    std::ostringstream os;
    os << what << ": singular matrix at z = (" << static_cast<double>(z.real()) << ", "
       << static_cast<double>(z.imag()) << ")";
    throw SingularDenominatorError(os.str(), z, rcond > 0 ? 1 / rcond : INFINITY);
  }
  if (den.size() == 0) return num;
  return den.adjoint().partialPivLu().solve(num.adjoint()).adjoint();
}

}  // namespace

HerglotzExpr::HerglotzExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

HerglotzExpr HerglotzExpr::zero(Index q) {
  if (q < 0) throw ShapeError("zero: negative size");
  return make(q, ZeroNode{q});
}

HerglotzExpr HerglotzExpr::constant(const CMatrix& a) {
  require_square(a, "constant");
  if (!is_psd(im_part(a))) throw ContractError("constant: Im A must be PSD");
  return make(a.rows(), ConstNode{a});
}

HerglotzExpr HerglotzExpr::linear(const CMatrix& beta) {
  require_square(beta, "linear");
  if (!is_psd(beta)) throw ContractError("linear: beta must be PSD");
  return make(beta.rows(), LinearNode{beta});
}

HerglotzExpr HerglotzExpr::nev_triple(const CMatrix& alpha, const CMatrix& beta, const MolecularMeasure& nu) {
  require_square(alpha, "nev_triple");
  require_square(beta, "nev_triple");
  if (alpha.rows() != beta.rows() || nu.q() != alpha.rows()) throw ShapeError("nev_triple: size mismatch");
  if (!is_hermitian(alpha)) throw ContractError("nev_triple: alpha must be Hermitian");
  if (!is_psd(beta)) throw ContractError("nev_triple: beta must be PSD");
  return make(alpha.rows(), NevTripleNode{alpha, beta, nu});
}

HerglotzExpr HerglotzExpr::stieltjes_of(const MolecularMeasure& sigma) {
  return make(sigma.q(), StieltjesNode{sigma});
}

HerglotzExpr HerglotzExpr::gamma_mu(const CMatrix& gamma, const MolecularMeasure& mu) {
  require_square(gamma, "gamma_mu");
  if (mu.q() != gamma.rows()) throw ShapeError("gamma_mu: size mismatch");
  if (!is_hermitian(gamma)) throw ContractError("gamma_mu: gamma must be Hermitian");
  return make(gamma.rows(), GammaMuNode{gamma, mu});
}

HerglotzExpr HerglotzExpr::sum(const std::vector<HerglotzExpr>& terms) {
  if (terms.empty()) throw ContractError("sum: no terms");
  for (const auto& t : terms) require_size(t, terms.front().q(), "sum");
  return make(terms.front().q(), SumNode{terms});
}

HerglotzExpr HerglotzExpr::congruence(const CMatrix& a, const HerglotzExpr& f) {
  require_finite(a, "congruence");
  require_size(f, a.rows(), "congruence");
  return make(a.cols(), CongruenceNode{a, f});
}

HerglotzExpr HerglotzExpr::neg_pinv(const HerglotzExpr& f) {
  if (!f.valid()) throw ContractError("neg_pinv: missing child");
  return make(f.q(), NegPinvNode{f});
}

HerglotzExpr HerglotzExpr::schur_plus_node(const CMatrix& a, const CMatrix& b, const HerglotzExpr& f) {
  require_square(a, "schur_plus");
  require_square(b, "schur_plus");
  if (a.rows() != b.rows()) throw ShapeError("schur_plus: A and B differ in size");
  require_size(f, a.rows(), "schur_plus");
  return make(a.rows(), SchurPlusNode{a, b, f});
}

HerglotzExpr HerglotzExpr::schur_minus_node(const CMatrix& a, const CMatrix& b, const HerglotzExpr& f,
                                            bool certified, Real ref_norm) {
  require_square(a, "schur_minus");
  require_square(b, "schur_minus");
  if (a.rows() != b.rows()) throw ShapeError("schur_minus: A and B differ in size");
  require_size(f, a.rows(), "schur_minus");
  return make(a.rows(), SchurMinusNode{a, b, pinv(a, Tolerances{}, ref_norm), f, certified, ref_norm});
}

HerglotzExpr HerglotzExpr::lft_by_resolvent(const ResolventPoly& v, const HerglotzExpr& f) {
  require_size(f, v.q, "lft_by_resolvent");
  return make(v.q, LftNode{v, f});
}

HerglotzExpr HerglotzExpr::compressed(const CMatrix& u, const HerglotzExpr& f) {
  require_finite(u, "compressed");
  require_size(f, u.cols(), "compressed");
  if (u.cols() > 0 && !approx_equal(u.adjoint() * u, identity(u.cols()), 1e-9L))
    throw ContractError("compressed: U is not an isometry");
  return make(u.rows(), CompressedNode{u, f});
}

Index HerglotzExpr::q() const { return node().q; }

const Node& HerglotzExpr::node() const {
  if (!node_) throw ContractError("HerglotzExpr: empty expression");
  return *node_;
}

std::string HerglotzExpr::kind() const {
  return std::visit(overloaded{
                        [](const ZeroNode&) { return "Zero"; },
                        [](const ConstNode&) { return "Const"; },
                        [](const LinearNode&) { return "Linear"; },
                        [](const NevTripleNode&) { return "NevTriple"; },
                        [](const StieltjesNode&) { return "StieltjesOf"; },
                        [](const GammaMuNode&) { return "GammaMu"; },
                        [](const SumNode&) { return "Sum"; },
                        [](const CongruenceNode&) { return "Congruence"; },
                        [](const NegPinvNode&) { return "NegPinv"; },
                        [](const SchurPlusNode&) { return "SchurPlus"; },
                        [](const SchurMinusNode&) { return "SchurMinus"; },
                        [](const LftNode&) { return "LFTByResolvent"; },
                        [](const CompressedNode&) { return "Compressed"; },
                    },
                    node().data);
}

CMatrix HerglotzExpr::eval(Complex z) const {
  EvalCache cache;
  return cache.eval(*this, z);
}

CMatrix EvalCache::eval(const HerglotzExpr& f, Complex z) {
  if (!(z.imag() > 0)) throw DomainError("eval: Im z must be positive");
  if (z != z_) {
    memo_.clear();
    z_ = z;
  }
  const Node& n = f.node();
  if (auto it = memo_.find(&n); it != memo_.end()) return it->second;
  const Index q = n.q;
  CMatrix out = std::visit(
      overloaded{
          [&](const ZeroNode&) -> CMatrix { return zeros(q, q); },
          [&](const ConstNode& c) -> CMatrix { return c.value; },
          [&](const LinearNode& c) -> CMatrix { return z * c.beta; },
          [&](const NevTripleNode& c) -> CMatrix {
            CMatrix acc = c.alpha + z * c.beta;
            for (const auto& a : c.nu.atoms()) acc += ((Real(1) + a.t * z) / (a.t - z)) * a.mass;
            return acc;
          },
          [&](const StieltjesNode& c) -> CMatrix { return c.sigma.stieltjes_eval(z); },
          [&](const GammaMuNode& c) -> CMatrix {
            CMatrix acc = c.gamma;
            for (const auto& a : c.mu.atoms()) acc += ((abs(a.t) + 1) / (a.t - z)) * a.mass;
            return acc;
          },
          [&](const SumNode& c) -> CMatrix {
            CMatrix acc = zeros(q, q);
            for (const auto& t : c.terms) acc += eval(t, z);
            return acc;
          },
          [&](const CongruenceNode& c) -> CMatrix { return c.a.adjoint() * eval(c.f, z) * c.a; },
          [&](const NegPinvNode& c) -> CMatrix { return -pinv(eval(c.f, z)); },
          [&](const SchurPlusNode& c) -> CMatrix {
            const CMatrix fz = eval(c.f, z);
            return -c.a * (z * identity(q) + pinv(fz) * c.a) + c.b;
          },
          [&](const SchurMinusNode& c) -> CMatrix {
            const CMatrix inner = z * identity(q) + c.ap * (eval(c.f, z) - c.b);
            if (c.certified) return -solve_right(c.a, inner, z, "schur_minus");
            return -c.a * pinv(inner);
          },
          [&](const LftNode& c) -> CMatrix { return lft(LftMatrix{c.v.eval(z)}, eval(c.f, z), {}, z); },
          [&](const CompressedNode& c) -> CMatrix { return c.u * eval(c.f, z) * c.u.adjoint(); },
      },
      n.data);
  require_finite(out, "eval");
  memo_.emplace(&n, out);
  return out;
}

std::vector<Real> default_limit_grid() { return geometric_grid(1e2L, sqrt(10.0L), 9); }

std::vector<Real> default_class_grid() { return geometric_grid(1.0L, pow(10.0L, 0.25L), 17); }

AlphaBeta nevanlinna_alpha_beta(const HerglotzExpr& f, const std::vector<Real>& y_grid) {
  if (y_grid.size() < 3) throw ContractError("nevanlinna_alpha_beta: need at least 3 grid points");
  AlphaBeta out;
  out.alpha = re_part(f.eval(kI));
  std::vector<Real> h;
  std::vector<CMatrix> v;
  for (Real y : y_grid) {
    const Complex z(0, y);
    h.push_back(1 / y);
    v.push_back(f.eval(z) / z);
  }
  Extrapolated e = richardson(h, v, 2);
  out.beta = e.value;
  out.residual = e.residual;
  return out;
}

LimitEstimate gamma_limit(const HerglotzExpr& f, const std::vector<Real>& y_grid, Real rel_threshold) {
  if (y_grid.size() < 3) throw ContractError("gamma_limit: need at least 3 grid points");
  std::vector<Real> h;
  std::vector<CMatrix> v;
  Real scale = 0;
  for (Real y : y_grid) {
    h.push_back(1 / y);
    v.push_back(f.eval(Complex(0, y)));
    scale = std::max(scale, op_norm(v.back()));
  }
  Extrapolated e = richardson(h, v, 2);
  LimitEstimate out{e.value, e.residual, true};
  out.converged = e.residual <= rel_threshold * (1 + scale);
  return out;
}

std::string ClassTag::name() const {
  switch (kind) {
    case Kind::R: return "R";
    case Kind::Rm2: return "R[-2]";
    case Kind::Rm1: return "R[-1]";
    case Kind::Rk: return "R[" + std::to_string(kappa) + "]";
    case Kind::Rm1Zero: return "R_{-1,q}";
    case Kind::RkZero: return "R_{" + std::to_string(kappa) + ",q}";
    case Kind::PEven: return "P_even(A)";
    case Kind::POdd: return "P_odd(A)";
    case Kind::RTilde0: return "R~0";
  }
  return "?";
}

bool DiagnosticsReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const DiagnosticCheck& c) { return c.pass; });
}

Real DiagnosticsReport::score() const {
  if (checks.empty()) return 1;
  auto n = std::count_if(checks.begin(), checks.end(), [](const DiagnosticCheck& c) { return c.pass; });
  return static_cast<Real>(n) / static_cast<Real>(checks.size());
}

const DiagnosticCheck* DiagnosticsReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

DiagnosticCheck positivity_check(const HerglotzExpr& f, const std::vector<Real>& grid, const Tolerances& tol) {
  DiagnosticCheck c;
  c.name = "herglotz_positivity";
  Real worst = INFINITY;
  for (Real theta : {M_PI / 6, M_PI / 2, 5 * M_PI / 6}) {
    for (Real r : grid) {
      const CMatrix fz = f.eval(polar(r, static_cast<Real>(theta)));
      const Real floor = tol.psd_atol * (1 + op_norm(fz));
      worst = std::min(worst, min_eigenvalue(im_part(fz)) / floor);
    }
  }
  c.value = worst;
  c.threshold = -1;
  c.pass = worst >= -1;
  c.detail = "min eigenvalue of Im F(z) in units of the PSD floor";
  return c;
}

DiagnosticCheck beta_zero_check(const HerglotzExpr& f, const std::vector<Real>& grid) {
  DiagnosticCheck c;
  c.name = "decay_over_y";
  std::vector<Real> tail(grid.end() - std::min<long>(5, static_cast<long>(grid.size())), grid.end());
  AlphaBeta ab = nevanlinna_alpha_beta(f, tail);
  c.value = op_norm(ab.beta);
  c.threshold = 1e-6L * (1 + op_norm(f.eval(kI)));
  c.pass = c.value <= c.threshold;
  c.detail = "extrapolated |F(iy)/(iy)| at y -> infinity";
  return c;
}

DiagnosticCheck im_integral_check(const HerglotzExpr& f, const std::vector<Real>& grid) {
  DiagnosticCheck c;
  c.name = "im_integrability";
  std::vector<Real> g;
  for (Real y : grid) g.push_back(op_norm(im_part(f.eval(Complex(0, y)))));
  Real integral = 0;
  for (size_t i = 1; i < grid.size(); ++i)
    integral += (g[i] + g[i - 1]) / 2 * log(grid[i] / grid[i - 1]);
  const size_t n = grid.size();
  Real tail = 0;
  const Real head = std::max(g.front(), std::numeric_limits<Real>::min());
  if (g[n - 1] > 1e-14L * head) {
    const Real slope = log(g[n - 1] / g[n - 2]) / log(grid[n - 1] / grid[n - 2]);
    tail = slope < -0.5L ? g[n - 1] / (-slope) : INFINITY;
  }
  c.value = integral + tail;
  c.threshold = isfinite(tail) ? std::max(tail, integral) : 0;
  c.pass = isfinite(tail) && tail <= 0.1L * (integral + 1e-300L) + 1e-12L;
  std::ostringstream os;
  os << "trapezoid of |Im F(iy)|/y on the grid = " << static_cast<double>(integral)
     << ", power-law tail bound = " << static_cast<double>(tail);
  c.detail = os.str();
  return c;
}

DiagnosticCheck gamma_zero_check(const HerglotzExpr& f, const std::vector<Real>& grid) {
  DiagnosticCheck c;
  c.name = "gamma_zero";
  std::vector<Real> tail(grid.end() - std::min<long>(5, static_cast<long>(grid.size())), grid.end());
  LimitEstimate g = gamma_limit(f, tail);
  c.value = op_norm(g.value);
  c.threshold = 1e-6L * (1 + op_norm(f.eval(kI)));
  c.pass = c.value <= c.threshold;
  c.conclusive = g.converged;
  c.detail = "extrapolated F(iy) at y -> infinity";
  return c;
}

DiagnosticCheck bounded_check(const HerglotzExpr& f, const std::vector<Real>& grid, bool imaginary_only) {
  DiagnosticCheck c;
  c.name = imaginary_only ? "y_im_bounded" : "y_norm_bounded";
  std::vector<Real> v;
  for (Real y : grid) {
    CMatrix fz = f.eval(Complex(0, y));
    v.push_back(y * op_norm(imaginary_only ? CMatrix(im_part(fz)) : fz));
  }
  const size_t n = v.size();
  const Real change = abs(v[n - 1] - v[n - 2]);
  c.value = change;
  c.threshold = 1e-2L * (1 + v[n - 1]);
  c.pass = change <= c.threshold;
  c.detail = imaginary_only ? "change of y|Im F(iy)| over the last grid step" : "change of y|F(iy)| over the last grid step";
  return c;
}

DiagnosticCheck kernel_check(const HerglotzExpr& f, const CMatrix& a, const std::vector<Real>& grid,
                             const Tolerances& tol) {
  DiagnosticCheck c;
  c.name = "kernel_condition";
  if (a.cols() != f.q()) throw ShapeError("class_diagnostics: reference matrix has wrong column count");
  int bad = 0;
  std::vector<Complex> pts{kI};
  for (Real r : {grid.front(), grid[grid.size() / 2], grid.back()})
    for (Real theta : {M_PI / 6, 5 * M_PI / 6}) pts.push_back(polar(r, static_cast<Real>(theta)));
  for (Complex z : pts)
    if (!kernel_contained(a, f.eval(z), tol)) ++bad;
  c.value = bad;
  c.threshold = 0;
  c.pass = bad == 0;
  c.detail = "sample points where N(A) is not inside N(F(z))";
  return c;
}

}  // namespace

DiagnosticsReport class_diagnostics(const HerglotzExpr& f, const ClassTag& tag, const std::vector<Real>& grid,
                                    const Tolerances& tol) {
  if (grid.size() < 5) throw ContractError("class_diagnostics: grid needs at least 5 points");
  using K = ClassTag::Kind;
  DiagnosticsReport rep{tag, {}};
  rep.checks.push_back(positivity_check(f, grid, tol));
  switch (tag.kind) {
    case K::R:
      break;
    case K::Rm2:
      rep.checks.push_back(beta_zero_check(f, grid));
      break;
    case K::Rm1:
      rep.checks.push_back(beta_zero_check(f, grid));
      rep.checks.push_back(im_integral_check(f, grid));
      break;
    case K::Rm1Zero:
      rep.checks.push_back(im_integral_check(f, grid));
      rep.checks.push_back(gamma_zero_check(f, grid));
      break;
    case K::Rk:
      rep.checks.push_back(bounded_check(f, grid, true));
      break;
    case K::RkZero:
      rep.checks.push_back(bounded_check(f, grid, false));
      rep.checks.push_back(gamma_zero_check(f, grid));
      break;
    case K::PEven:
      rep.checks.push_back(beta_zero_check(f, grid));
      rep.checks.push_back(kernel_check(f, tag.A, grid, tol));
      break;
    case K::POdd:
      rep.checks.push_back(im_integral_check(f, grid));
      rep.checks.push_back(gamma_zero_check(f, grid));
      rep.checks.push_back(kernel_check(f, tag.A, grid, tol));
      break;
    case K::RTilde0:
      rep.checks.push_back(bounded_check(f, grid, false));
      break;
  }
  return rep;
}

}  // namespace momentforge
