#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "momentforge/json_io.hpp"
#include "momentforge/solver.hpp"
#include "support.hpp"

using namespace mf_test;

namespace {

// Values survive a trip through JSON to double precision.
constexpr long double kDouble = 1e-15L;

}  // namespace

TEST_CASE("matrix schema") {
  const CMatrix m = mat({{1, Complex(2, -3)}, {0.5L, Complex(0, 4)}, {7, 8}});
  const json j = to_json(m);
  CHECK(j["rows"] == 3);
  CHECK(j["cols"] == 2);
  CHECK(j["re"] == json::array({1.0, 2.0, 0.5, 0.0, 7.0, 8.0}));
  CHECK(j["im"] == json::array({0.0, -3.0, 0.0, 4.0, 0.0, 0.0}));
  CHECK(close(matrix_from_json(j), m, 0));
  CHECK_THROWS_AS(matrix_from_json(json{{"rows", 2}, {"cols", 2}, {"re", {1, 2}}, {"im", {0, 0}}}), ShapeError);
  CHECK_THROWS_AS(matrix_from_json(json{{"rows", 1}}), ContractError);
}

TEST_CASE("sequence and measure round trips") {
  std::mt19937_64 rng(263);
  MeasureDraw draw;
  for (int trial = 0; trial < 10; ++trial) {
    const MolecularMeasure sigma = random_molecular(rng, 1 + trial % 3, draw);
    const MatrixSeq s = sigma.moments_prefix(4);
    const json js = to_json(s);
    CHECK(js["q"] == s.q());
    CHECK(to_json(seq_from_json(js)) == js);
    const MatrixSeq back = seq_from_json(js);
    for (Index j = 0; j <= 4; ++j) CHECK(close(back[j], s[j], kDouble * (1 + op_norm(s[j]))));

    const json jm = to_json(sigma);
    CHECK(to_json(measure_from_json(jm)) == jm);
    CHECK(measure_from_json(jm).atoms().size() == sigma.atoms().size());
  }
}

TEST_CASE("expression round trips for every node kind") {
  std::mt19937_64 rng(269);
  MeasureDraw draw;
  const Index q = 2;
  const CMatrix h = random_complex(rng, q, q);
  const MolecularMeasure mu = random_molecular(rng, q, draw);
  const MatrixSeq s = mu.moments_prefix(3);
  const Problem p = open_problem(s);
  std::vector<HerglotzExpr> fs{
      HerglotzExpr::zero(q),
      HerglotzExpr::constant(re_part(h) + kI * identity(q)),
      HerglotzExpr::linear(identity(q)),
      HerglotzExpr::nev_triple(re_part(h), zeros(q, q), mu),
      HerglotzExpr::stieltjes_of(mu),
      HerglotzExpr::gamma_mu(re_part(h), mu),
  };
  fs.push_back(HerglotzExpr::sum({fs[1], fs[4]}));
  fs.push_back(HerglotzExpr::congruence(h, fs[4]));
  fs.push_back(HerglotzExpr::neg_pinv(fs[4]));
  fs.push_back(HerglotzExpr::schur_plus_node(s[0], s[1], fs[4]));
  fs.push_back(HerglotzExpr::schur_minus_node(s[0], s[1], fs[0], true, 2));
  fs.push_back(p.determinate() ? determinate_solution(p) : solve(p, HerglotzExpr::zero(p.slot.r)));
  fs.push_back(HerglotzExpr::compressed(mat({{1}, {0}}), HerglotzExpr::stieltjes_of(atoms1({{0.5, 1}}))));
  for (const auto& f : fs) {
    const json j = to_json(f);
    CHECK(j["kind"] == f.kind());
    const HerglotzExpr g = expr_from_json(j);
    CHECK(to_json(g) == j);
    const Complex z(0.3L, 1.1L);
    CHECK(close(g.eval(z), f.eval(z), 1e-12L * (1 + op_norm(f.eval(z)))));
  }
  CHECK_THROWS_AS(expr_from_json(json{{"kind", "Bogus"}}), ContractError);
}

TEST_CASE("resolvent schema") {
  const MatrixSeq s = atoms1({{-1, 0.5}, {0.5, 1}}).moments_prefix(3);
  const ResolventPoly v = resolvent_v(s, 3);
  const json j = to_json(v);
  CHECK(j["m"] == 3);
  CHECK(j["q"] == 1);
  REQUIRE(j["factors"].size() == 2);
  CHECK(j["factors"][0]["kind"] == "V");
  CHECK(j["factors"][0].contains("B"));
  CHECK(to_json(resolvent_from_json(j)) == j);
  const Complex z(0, 2);
  CHECK(close(resolvent_from_json(j).eval(z), v.eval(z), 1e-12L));
  CHECK(to_json(resolvent_v(s, 2))["factors"][1]["kind"] == "v");
}

TEST_CASE("report schemas") {
  const HerglotzExpr f = HerglotzExpr::stieltjes_of(atoms1({{0.5, 1}}));
  const MatrixSeq s = sseq({1, 0.5});
  const json r = to_json(hn_check(f, s, default_rays(), {}, true));
  CHECK(r["verdict"] == "decaying");
  CHECK(r["curves"].size() == 9);
  CHECK(r["thresholds"]["decay_ratio"] == 0.01);
  CHECK(r["thresholds"]["monotone_tail"] == 4);
  CHECK(r.contains("moments"));
  CHECK(r == json::parse(r.dump()));

  const json c = to_json(compare(f, f, standard_z_grid(), 1e-9L));
  CHECK(c["pass"] == true);
  CHECK(c["max_diff"] == 0.0);

  const json d = to_json(class_diagnostics(f, {ClassTag::Kind::RTilde0, 0, {}}));
  CHECK(d["tag"] == "R~0");
  CHECK(d["pass"] == true);
}
