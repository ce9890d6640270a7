#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "momentforge/herglotz.hpp"
#include "support.hpp"

using namespace mf_test;

namespace {

std::vector<Complex> sample_points(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> re(-4, 4), im(0.05, 5);
  std::vector<Complex> out;
  for (int i = 0; i < count; ++i) out.emplace_back(re(rng), im(rng));
  return out;
}

HerglotzExpr random_herglotz(std::mt19937_64& rng, Index q) {
  MeasureDraw draw;
  draw.max_atoms = 4;
  const CMatrix h = random_complex(rng, q, q);
  return HerglotzExpr::sum({HerglotzExpr::nev_triple(re_part(h), random_psd(rng, q, 1), random_molecular(rng, q, draw)),
                            HerglotzExpr::stieltjes_of(random_molecular(rng, q, draw))});
}

bool im_nonneg(const CMatrix& v) { return min_eigenvalue(im_part(v)) >= -1e-9L * (1 + op_norm(v)); }

}  // namespace

TEST_CASE("evaluation examples") {
  CHECK(close(HerglotzExpr::zero(3).eval(Complex(1, 1)), zeros(3, 3), 0));
  const HerglotzExpr nev = HerglotzExpr::nev_triple(c1(0), c1(0), atoms1({{0, 1}}));
  CHECK(close(nev.eval(kI)(0, 0), kI, 1e-30L));
  const HerglotzExpr np = HerglotzExpr::neg_pinv(HerglotzExpr::stieltjes_of(atoms1({{0, 1}})));
  for (Complex z : {Complex(0, 1), Complex(2, 0.5L), Complex(-1, 3)}) CHECK(close(np.eval(z)(0, 0), z, 1e-30L));
  CHECK_THROWS_AS(HerglotzExpr::zero(1).eval(Complex(1, 0)), DomainError);
  CHECK_THROWS_AS(HerglotzExpr::zero(1).eval(Complex(1, -2)), DomainError);
}

TEST_CASE("constructor invariants") {
  CHECK_THROWS_AS(HerglotzExpr::constant(c1(Complex(0, -1))), ContractError);
  CHECK_THROWS_AS(HerglotzExpr::linear(c1(-1)), ContractError);
  CHECK_THROWS_AS(HerglotzExpr::nev_triple(mat({{0, 1}, {0, 0}}), zeros(2, 2), MolecularMeasure(2)), ContractError);
  CHECK_THROWS_AS(HerglotzExpr::gamma_mu(c1(kI), MolecularMeasure(1)), ContractError);
  CHECK_THROWS_AS(HerglotzExpr::compressed(mat({{1}, {1}}), HerglotzExpr::zero(1)), ContractError);
  CHECK_THROWS_AS(HerglotzExpr::sum({}), ContractError);
  CHECK_THROWS_AS(HerglotzExpr::sum({HerglotzExpr::zero(1), HerglotzExpr::zero(2)}), ShapeError);
  CHECK_NOTHROW(HerglotzExpr::compressed(mat({{1}, {0}}), HerglotzExpr::zero(1)));
}

TEST_CASE("Nevanlinna alpha and beta") {
  const AlphaBeta lin = nevanlinna_alpha_beta(HerglotzExpr::linear(diag({2, 0.5L})));
  CHECK(close(lin.alpha, zeros(2, 2), 1e-30L));
  CHECK(close(lin.beta, diag({2, 0.5L}), 1e-25L));
  const AlphaBeta cst = nevanlinna_alpha_beta(HerglotzExpr::constant(mat({{1, 2}, {2, -1}})));
  CHECK(close(cst.alpha, mat({{1, 2}, {2, -1}}), 1e-30L));
  CHECK(close(cst.beta, zeros(2, 2), 1e-20L));
  const AlphaBeta st = nevanlinna_alpha_beta(HerglotzExpr::stieltjes_of(atoms1({{0, 1}})));
  CHECK(close(st.alpha, c1(0), 1e-30L));
  CHECK(close(st.beta, c1(0), 1e-8L));
}

TEST_CASE("gamma limits") {
  CHECK(close(gamma_limit(HerglotzExpr::zero(2)).value, zeros(2, 2), 0));
  const LimitEstimate s = gamma_limit(HerglotzExpr::stieltjes_of(atoms1({{1, 1}})));
  CHECK(close(s.value, c1(0), 1e-8L));
  CHECK(s.converged);
  const CMatrix gamma = mat({{1, Complex(0, 2)}, {Complex(0, -2), -3}});
  const MolecularMeasure mu = MolecularMeasure::dirac(0.5L, diag({1, 2}));
  CHECK(close(gamma_limit(HerglotzExpr::gamma_mu(gamma, mu)).value, gamma, 1e-8L));
}

TEST_CASE("class diagnostics examples") {
  const ClassTag podd{ClassTag::Kind::POdd, 0, diag({1, 0})};
  CHECK(class_diagnostics(HerglotzExpr::zero(2), podd).pass());

  const DiagnosticsReport ci = class_diagnostics(HerglotzExpr::constant(c1(kI)), {ClassTag::Kind::Rm1, 0, {}});
  REQUIRE(ci.find("im_integrability") != nullptr);
  CHECK_FALSE(ci.find("im_integrability")->pass);
  CHECK_FALSE(ci.pass());

  MeasureDraw draw;
  std::mt19937_64 rng(73);
  const HerglotzExpr st = HerglotzExpr::stieltjes_of(random_molecular(rng, 2, draw));
  const DiagnosticsReport rt = class_diagnostics(st, {ClassTag::Kind::RTilde0, 0, {}});
  REQUIRE(rt.find("y_norm_bounded") != nullptr);
  CHECK(rt.find("y_norm_bounded")->pass);
  CHECK(rt.score() == 1);
}

TEST_CASE("Herglotz positivity of every constructor") {
  std::mt19937_64 rng(79);
  MeasureDraw draw;
  for (int trial = 0; trial < 30; ++trial) {
    const Index q = 1 + trial % 3;
    const CMatrix h = random_complex(rng, q, q);
    const CMatrix a = random_complex(rng, q, q);
    std::vector<HerglotzExpr> fs{
        HerglotzExpr::zero(q),
        HerglotzExpr::constant(re_part(h) + kI * random_psd(rng, q, 1)),
        HerglotzExpr::linear(random_psd(rng, q, q)),
        HerglotzExpr::nev_triple(re_part(h), random_psd(rng, q, 1), random_molecular(rng, q, draw)),
        HerglotzExpr::stieltjes_of(random_molecular(rng, q, draw)),
        HerglotzExpr::gamma_mu(re_part(a), random_molecular(rng, q, draw)),
    };
    fs.push_back(HerglotzExpr::sum(fs));
    fs.push_back(HerglotzExpr::congruence(a, fs[3]));
    fs.push_back(HerglotzExpr::neg_pinv(fs[4]));
    fs.push_back(HerglotzExpr::neg_pinv(random_herglotz(rng, q)));
    for (const auto& f : fs)
      for (Complex z : sample_points(rng, 6)) CHECK(im_nonneg(f.eval(z)));
  }
}

TEST_CASE("compression keeps diagnostics of the compressed function") {
  std::mt19937_64 rng(83);
  MeasureDraw draw;
  for (int trial = 0; trial < 10; ++trial) {
    const Index q = 2 + trial % 2;
    const HerglotzExpr f = HerglotzExpr::stieltjes_of(random_molecular(rng, 1, draw));
    Eigen::HouseholderQR<CMatrix> qr(random_complex(rng, q, 1));
    const CMatrix u = qr.householderQ() * CMatrix::Identity(q, 1);
    const HerglotzExpr g = HerglotzExpr::compressed(u, f);
    const ClassTag tag{ClassTag::Kind::RkZero, 2, {}};
    CHECK(class_diagnostics(f, tag).pass() == class_diagnostics(g, tag).pass());
    CHECK(class_diagnostics(g, tag).pass());
    for (Complex z : sample_points(rng, 4)) CHECK(im_nonneg(g.eval(z)));
  }
}

TEST_CASE("Herglotz values are EP with constant rank") {
  std::mt19937_64 rng(89);
  MeasureDraw draw;
  for (int trial = 0; trial < 20; ++trial) {
    const Index q = 2 + trial % 2;
    const HerglotzExpr f = HerglotzExpr::stieltjes_of(random_molecular(rng, q, draw));
    Index rank = -1;
    for (Complex z : sample_points(rng, 6)) {
      const CMatrix v = f.eval(z);
      CHECK(is_ep(v));
      const Index r = numerical_rank(v);
      if (rank < 0) rank = r;
      CHECK(r == rank);
    }
  }
}

TEST_CASE("kernel of NevTriple(alpha, 0, nu) at i is N(alpha) meet N(nu(R))") {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 20; ++trial) {
    const Index q = 3;
    const CMatrix b = random_complex(rng, q, 1);
    const CMatrix alpha = re_part(b * b.adjoint()) * Real(trial % 2 == 0 ? 1 : -1);
    const CMatrix mass = random_psd(rng, q, 1);
    const HerglotzExpr f = HerglotzExpr::nev_triple(alpha, zeros(q, q), MolecularMeasure::dirac(0.5L, mass));
    const CMatrix fi = f.eval(kI);
    CMatrix stacked(2 * q, q);
    stacked << alpha, mass;
    CHECK(kernel_contained(stacked, fi));
    CHECK(kernel_contained(fi, stacked));
  }
}
