#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "momentforge/solver.hpp"
#include "momentforge/verify.hpp"
#include "support.hpp"

using namespace mf_test;

namespace {

const std::vector<Complex> kZ = standard_z_grid();

Real max_diff(const HerglotzExpr& f, const HerglotzExpr& g) { return compare(f, g, kZ, 0, Exec::Serial).max_diff; }

HerglotzExpr stieltjes(std::initializer_list<std::pair<double, double>> a) {
  return HerglotzExpr::stieltjes_of(atoms1(a));
}

}  // namespace

TEST_CASE("open_problem examples") {
  const Problem a = open_problem(sseq({1, 0, 1}));
  CHECK(a.parity == Parity::Even);
  CHECK(a.n == 1);
  CHECK(close(a.L, c1(1), 1e-30L));
  CHECK(a.slot.r == 1);
  CHECK(a.slot.required_class == "R[-2]");

  const Problem b = open_problem(sseq({1, 0, 0}));
  CHECK(b.determinate());
  CHECK(b.slot.U.cols() == 0);

  CHECK_THROWS_AS(open_problem(sseq({0, 1})), NotExtendableError);
  CHECK(open_problem(sseq({1, 0.5})).slot.required_class == "R_{-1}");
}

TEST_CASE("solve examples") {
  CHECK(max_diff(solve(open_problem(sseq({1})), HerglotzExpr::zero(1)), stieltjes({{0, 1}})) < 1e-30L);
  CHECK(max_diff(solve(open_problem(sseq({1, -0.4})), HerglotzExpr::zero(1)), stieltjes({{-0.4, 1}})) < 1e-30L);
  CHECK(max_diff(solve(open_problem(sseq({1})), HerglotzExpr::constant(c1(0.625L))), stieltjes({{-0.625, 1}})) < 1e-30L);
  CHECK_THROWS_AS(solve(open_problem(sseq({1})), HerglotzExpr::zero(2)), ShapeError);
}

TEST_CASE("odd scalar problem with the zero parameter matches the Gauss-rule oracle") {
  // atoms {(-1.5, 0.3), (0.2, 0.5), (1.1, 0.7)}; values frozen from tests/oracles/derive.py
  const MatrixSeq s = sseq({Complex(Real(1.5Q)), Complex(Real(0.42Q)), Complex(Real(1.542Q)), Complex(Real(-0.0768Q))});
  const HerglotzExpr f = solve(open_problem(s), HerglotzExpr::zero(1));
  CHECK(close(f.eval(kI)(0, 0), Complex(0.3217183809099615387092603Q, 0.7588757471909583515202441Q), 1e-24L));
  CHECK(close(f.eval(Complex(1, 2))(0, 0), Complex(-0.1339780250505835916841253Q, 0.6280718846824142566904913Q),
              1e-24L));
  CHECK(close(f.eval(Complex(-3, 0.5L))(0, 0), Complex(0.49799175250545926184751Q, 0.09999732229708699436769727Q),
              1e-24L));
}

TEST_CASE("determinate solutions") {
  CHECK(max_diff(determinate_solution(open_problem(sseq({1, 0, 0}))), stieltjes({{0, 1}})) < 1e-30L);
  const HerglotzExpr d1 = determinate_solution(open_problem(sseq({1, 1, 1})));
  CHECK(close(d1.eval(Complex(2, 1))(0, 0), Complex(-0.5L, 0.5L), 1e-30L));
  CHECK(max_diff(d1, stieltjes({{1, 1}})) < 1e-30L);
  CHECK_THROWS_AS(determinate_solution(open_problem(sseq({2, 0, 2, 0}))), ContractError);
}

TEST_CASE("recover_parameter examples") {
  const Problem p0 = open_problem(sseq({1}));
  CHECK(max_diff(recover_parameter(p0, stieltjes({{0, 1}})), HerglotzExpr::zero(1)) < 1e-30L);
  const Problem pb = open_problem(sseq({1, 0.9}));
  CHECK(max_diff(recover_parameter(pb, stieltjes({{0.9, 1}})), HerglotzExpr::zero(1)) < 1e-30L);

  const Problem p = open_problem(sseq({1, 0, 1, 0}));
  REQUIRE(p.slot.r == 1);
  const HerglotzExpr sol = stieltjes({{-1, 0.5}, {1, 0.5}});
  const HerglotzExpr f = recover_parameter(p, sol);
  CHECK(max_diff(solve(p, f), sol) < 1e-25L);
  CHECK(max_diff(f, HerglotzExpr::zero(1)) < 1e-25L);
}

TEST_CASE("solve and recover are inverse on the gallery") {
  std::mt19937_64 rng(151);
  int indeterminate = 0;
  for (const auto& inst : corpus(157, 60, 3, 7, 1, 5)) {
    const Problem p = open_problem(inst.seq);
    if (p.determinate()) continue;
    ++indeterminate;
    const HerglotzExpr f = random_gallery_parameter(p.slot.r, p.parity, rng);
    CHECK(max_diff(recover_parameter(p, solve(p, f)), f) <= 1e-8L);
  }
  CHECK(indeterminate > 20);
}

TEST_CASE("distinct parameters give distinct solutions") {
  std::mt19937_64 rng(163);
  for (const auto& inst : corpus(167, 30, 3, 6, 1, 5)) {
    const Problem p = open_problem(inst.seq);
    if (p.determinate()) continue;
    const HerglotzExpr a = HerglotzExpr::zero(p.slot.r);
    const HerglotzExpr b = gallery_parameter(GalleryKind::Stieltjes, p.slot.r, p.parity, rng);
    CHECK(max_diff(solve(p, a), solve(p, b)) >= 1e-4L);
  }
}

TEST_CASE("solutions encode the moments") {
  std::mt19937_64 rng(173);
  for (const auto& inst : corpus(179, 12, 2, 5, 1, 4)) {
    const Problem p = open_problem(inst.seq);
    const HerglotzExpr f =
        p.determinate() ? determinate_solution(p) : solve(p, random_gallery_parameter(p.slot.r, p.parity, rng));
    CHECK(hn_check(f, inst.seq).verdict() == Verdict::Decaying);
    const MomentEstimate est = extract_moments(f, inst.seq.kappa());
    for (Index j = 0; j <= inst.seq.kappa(); ++j)
      CHECK(op_norm(est.moments[j] - inst.seq[j]) <= 1e-3L * (1 + op_norm(inst.seq[j])));
  }
}

TEST_CASE("solution values share kernel and range with s0") {
  std::mt19937_64 rng(181);
  const Tolerances loose{1e-7L, 1e-7L, 1e-7L};
  for (const auto& inst : corpus(191, 40, 3, 6, 1, 3)) {
    const Problem p = open_problem(inst.seq);
    const HerglotzExpr f =
        p.determinate() ? determinate_solution(p) : solve(p, random_gallery_parameter(p.slot.r, p.parity, rng));
    const CMatrix& s0 = inst.seq[0];
    for (Complex z : {kZ[0], kZ[5], kZ[11]}) {
      const CMatrix v = f.eval(z);
      CHECK(kernel_contained(v, s0, loose));
      CHECK(kernel_contained(s0, v, loose));
      CHECK(range_contained(v, s0, loose));
      CHECK(range_contained(s0, v, loose));
    }
  }
}

TEST_CASE("even chain images of a solution satisfy the kernel diagnostics") {
  std::mt19937_64 rng(193);
  for (const auto& inst : corpus(197, 20, 2, 6, 1, 3)) {
    const MatrixSeq& s = inst.seq;
    const HerglotzExpr f = HerglotzExpr::stieltjes_of(inst.sigma);
    const SchurHeads h = schur_heads(s);
    for (Index k = 1; 2 * k - 1 <= s.kappa(); ++k) {
      const HerglotzExpr img = sn_chain_forward(s, f, k - 1, Parity::Odd);
      const ClassTag tag{ClassTag::Kind::POdd, 0, h.s0[static_cast<size_t>(k - 1)]};
      const DiagnosticsReport rep = class_diagnostics(img, tag);
      REQUIRE(rep.find("kernel_condition") != nullptr);
      CHECK(rep.find("kernel_condition")->pass);
    }
  }
}

TEST_CASE("determinacy matches the number of solutions") {
  std::mt19937_64 rng(199);
  for (const auto& inst : corpus(211, 30, 3, 6, 1, 4)) {
    const Problem p = open_problem(inst.seq);
    if (p.determinate()) {
      CHECK_THROWS_AS(solve(p, HerglotzExpr::zero(1)), ShapeError);
      CHECK(max_diff(solve(p, empty_parameter()), determinate_solution(p)) < 1e-20L);
      CHECK(max_diff(determinate_solution(p), HerglotzExpr::stieltjes_of(inst.sigma)) < 1e-9L);
    } else {
      CHECK_THROWS_AS(determinate_solution(p), ContractError);
      const HerglotzExpr a = solve(p, HerglotzExpr::zero(p.slot.r));
      const HerglotzExpr b = solve(p, gallery_parameter(GalleryKind::Stieltjes, p.slot.r, p.parity, rng));
      CHECK(max_diff(a, b) > 1e-6L);
    }
  }
}

TEST_CASE("gallery respects parity") {
  std::mt19937_64 rng(223);
  CHECK_THROWS_AS(gallery_parameter(GalleryKind::Const, 1, Parity::Odd, rng), ContractError);
  for (int i = 0; i < 40; ++i) {
    const HerglotzExpr f = random_gallery_parameter(2, Parity::Odd, rng);
    CHECK(f.kind() != "Const");
    CHECK(f.q() == 2);
  }
}
