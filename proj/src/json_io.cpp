#include "momentforge/json_io.hpp"

#include <fstream>
#include <variant>

namespace momentforge {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double d(Real x) { return static_cast<double>(x); }

json complex_json(Complex z) { return json::array({d(z.real()), d(z.imag())}); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ContractError(std::string("json: missing field \"") + key + "\"");
  return j.at(key);
}

json real_array(const std::vector<Real>& v) {
  json a = json::array();
  for (Real x : v) a.push_back(d(x));
  return a;
}

}  // namespace

json to_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k) {
      re.push_back(d(m(i, k).real()));
      im.push_back(d(m(i, k).imag()));
    }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const json& j) {
  const Index rows = field(j, "rows").get<Index>();
  const Index cols = field(j, "cols").get<Index>();
  const auto re = field(j, "re").get<std::vector<double>>();
  const auto im = field(j, "im").get<std::vector<double>>();
  if (rows < 0 || cols < 0) throw ShapeError("json matrix: negative dimension");
  if (re.size() != static_cast<size_t>(rows * cols) || im.size() != re.size())
    throw ShapeError("json matrix: entry count does not match rows*cols");
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k) {
      const auto idx = static_cast<size_t>(i * cols + k);
      m(i, k) = Complex(re[idx], im[idx]);
    }
  return m;
}

json to_json(const MatrixSeq& s) {
  json items = json::array();
  for (const auto& x : s.items()) items.push_back(to_json(x));
  return json{{"q", s.q()}, {"items", items}};
}

MatrixSeq seq_from_json(const json& j) {
  std::vector<CMatrix> items;
  for (const auto& x : field(j, "items")) items.push_back(matrix_from_json(x));
  return MatrixSeq(field(j, "q").get<Index>(), std::move(items));
}

json to_json(const MolecularMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back(json{{"t", d(a.t)}, {"mass", to_json(a.mass)}});
  return json{{"q", m.q()}, {"atoms", atoms}};
}

MolecularMeasure measure_from_json(const json& j) {
  std::vector<Atom> atoms;
  for (const auto& a : field(j, "atoms"))
    atoms.push_back(Atom{field(a, "t").get<double>(), matrix_from_json(field(a, "mass"))});
  return MolecularMeasure(field(j, "q").get<Index>(), std::move(atoms));
}

json to_json(const ResolventPoly& v) {
  json factors = json::array();
  for (const auto& f : v.factors) {
    json e{{"kind", factor_kind_name(f.kind)}, {"A", to_json(f.A)}};
    if (f.B.size() != 0) e["B"] = to_json(f.B);
    if (f.ref != 0) e["ref"] = d(f.ref);
    factors.push_back(e);
  }
  return json{{"m", v.m}, {"q", v.q}, {"factors", factors}};
}

ResolventPoly resolvent_from_json(const json& j) {
  ResolventPoly v;
  v.m = field(j, "m").get<Index>();
  v.q = field(j, "q").get<Index>();
  for (const auto& f : field(j, "factors")) {
    const CMatrix a = matrix_from_json(field(f, "A"));
    const CMatrix b = f.contains("B") ? matrix_from_json(f.at("B")) : CMatrix();
    const Real ref = f.contains("ref") ? f.at("ref").get<double>() : 0.0;
    if (a.rows() != v.q) throw ShapeError("json resolvent: factor size mismatch");
    v.factors.push_back(make_factor(factor_kind_from_name(field(f, "kind").get<std::string>()), a, b, ref));
  }
  return v;
}

json to_json(const HerglotzExpr& f) {
  json out{{"kind", f.kind()}};
  std::visit(overloaded{
                 [&](const ZeroNode& n) { out["q"] = n.q; },
                 [&](const ConstNode& n) { out["A"] = to_json(n.value); },
                 [&](const LinearNode& n) { out["beta"] = to_json(n.beta); },
                 [&](const NevTripleNode& n) {
                   out["alpha"] = to_json(n.alpha);
                   out["beta"] = to_json(n.beta);
                   out["nu"] = to_json(n.nu);
                 },
                 [&](const StieltjesNode& n) { out["sigma"] = to_json(n.sigma); },
                 [&](const GammaMuNode& n) {
                   out["gamma"] = to_json(n.gamma);
                   out["mu"] = to_json(n.mu);
                 },
                 [&](const SumNode& n) {
                   json terms = json::array();
                   for (const auto& t : n.terms) terms.push_back(to_json(t));
                   out["terms"] = terms;
                 },
                 [&](const CongruenceNode& n) {
                   out["A"] = to_json(n.a);
                   out["F"] = to_json(n.f);
                 },
                 [&](const NegPinvNode& n) { out["F"] = to_json(n.f); },
                 [&](const SchurPlusNode& n) {
                   out["A"] = to_json(n.a);
                   out["B"] = to_json(n.b);
                   out["F"] = to_json(n.f);
                 },
                 [&](const SchurMinusNode& n) {
                   out["A"] = to_json(n.a);
                   out["B"] = to_json(n.b);
                   out["F"] = to_json(n.f);
                   out["certified"] = n.certified;
                   if (n.ref != 0) out["ref"] = d(n.ref);
                 },
                 [&](const LftNode& n) {
                   out["V"] = to_json(n.v);
                   out["F"] = to_json(n.f);
                 },
                 [&](const CompressedNode& n) {
                   out["U"] = to_json(n.u);
                   out["f"] = to_json(n.f);
                 },
             },
             f.node().data);
  return out;
}

HerglotzExpr expr_from_json(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  auto mat = [&](const char* k) { return matrix_from_json(field(j, k)); };
  auto sub = [&](const char* k) { return expr_from_json(field(j, k)); };
  if (kind == "Zero") return HerglotzExpr::zero(field(j, "q").get<Index>());
  if (kind == "Const") return HerglotzExpr::constant(mat("A"));
  if (kind == "Linear") return HerglotzExpr::linear(mat("beta"));
  if (kind == "NevTriple")
    return HerglotzExpr::nev_triple(mat("alpha"), mat("beta"), measure_from_json(field(j, "nu")));
  if (kind == "StieltjesOf") return HerglotzExpr::stieltjes_of(measure_from_json(field(j, "sigma")));
  if (kind == "GammaMu") return HerglotzExpr::gamma_mu(mat("gamma"), measure_from_json(field(j, "mu")));
  if (kind == "Sum") {
    std::vector<HerglotzExpr> terms;
    for (const auto& t : field(j, "terms")) terms.push_back(expr_from_json(t));
    return HerglotzExpr::sum(terms);
  }
  if (kind == "Congruence") return HerglotzExpr::congruence(mat("A"), sub("F"));
  if (kind == "NegPinv") return HerglotzExpr::neg_pinv(sub("F"));
  if (kind == "SchurPlus") return HerglotzExpr::schur_plus_node(mat("A"), mat("B"), sub("F"));
  if (kind == "SchurMinus")
    return HerglotzExpr::schur_minus_node(mat("A"), mat("B"), sub("F"), j.value("certified", false),
                                          j.value("ref", 0.0));
  if (kind == "LFTByResolvent") return HerglotzExpr::lft_by_resolvent(resolvent_from_json(field(j, "V")), sub("F"));
  if (kind == "Compressed") return HerglotzExpr::compressed(mat("U"), sub("f"));
  throw ContractError("json: unknown expression kind \"" + kind + "\"");
}

json to_json(const MomentEstimate& m) {
  json conv = json::array();
  for (bool c : m.converged) conv.push_back(c);
  return json{{"moments", to_json(m.moments)},
              {"residuals", real_array(m.residuals)},
              {"converged", conv},
              {"complete", m.complete},
              {"y_grid", real_array(m.y_grid)}};
}

json to_json(const AsymptoticReport& r) {
  json curves = json::array();
  for (const auto& c : r.curves)
    curves.push_back(json{{"k", c.k},
                          {"theta", d(c.theta)},
                          {"values", real_array(c.values)},
                          {"floors", real_array(c.floors)},
                          {"verdict", verdict_name(c.verdict)}});
  json out{{"rays", real_array(r.rays)},
           {"r_grid", real_array(r.r_grid)},
           {"thresholds", {{"decay_ratio", d(r.rule.decay_ratio)},
                           {"monotone_tail", r.rule.monotone_tail},
                           {"floor_factor", d(r.rule.floor_factor)},
                           {"tail_slope", d(r.rule.tail_slope)}}},
           {"curves", curves},
           {"verdict", verdict_name(r.verdict())}};
  if (r.moments) out["moments"] = to_json(*r.moments);
  return out;
}

json to_json(const DiagnosticsReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(json{{"name", c.name},
                          {"pass", c.pass},
                          {"conclusive", c.conclusive},
                          {"value", d(c.value)},
                          {"threshold", d(c.threshold)},
                          {"detail", c.detail}});
  return json{{"tag", r.tag.name()}, {"checks", checks}, {"pass", r.pass()}, {"score", d(r.score())}};
}

json to_json(const CompareReport& r) {
  return json{{"max_diff", d(r.max_diff)}, {"worst_z", complex_json(r.worst_z)}, {"tol", d(r.tol)}, {"pass", r.pass}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ContractError("cannot parse " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ContractError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace momentforge
