#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "momentforge/seqkit.hpp"
#include "support.hpp"

using namespace mf_test;

TEST_CASE("block Hankel assembly") {
  CHECK(close(hankel(sseq({1, 0, 1}), 1), identity(2), 0));
  CHECK(close(k_hankel(sseq({1, 0}), 0), c1(0), 0));
  CHECK(close(hankel(sseq({2, 0, 2, 0}), 1), diag({2, 2}), 0));
  CHECK_THROWS_AS(hankel(sseq({1, 0}), 1), RangeError);
  CHECK_THROWS_AS(k_hankel(sseq({1, 0, 1}), 1), RangeError);

  const MatrixSeq s(2, {identity(2), 2 * identity(2), 3 * identity(2)});
  const CMatrix h = hankel(s, 1);
  CHECK(h.rows() == 4);
  CHECK(close(h.block(2, 0, 2, 2), 2 * identity(2), 0));
  CHECK(close(h.block(2, 2, 2, 2), 3 * identity(2), 0));
}

TEST_CASE("reciprocal sequence examples") {
  CHECK(close(reciprocal(sseq({1, 0, 1}))[2], c1(-1), 1e-30L));
  const MatrixSeq r = reciprocal(sseq({2, 0, 2, 0}));
  CHECK(close(r[0], c1(0.5L), 1e-30L));
  CHECK(close(r[1], c1(0), 1e-30L));
  CHECK(close(r[2], c1(-0.5L), 1e-30L));
  CHECK(close(r[3], c1(0), 1e-30L));
  const MatrixSeq id(3, {identity(3), zeros(3, 3), zeros(3, 3)});
  const MatrixSeq ri = reciprocal(id);
  CHECK(close(ri[0], identity(3), 0));
  CHECK(close(ri[1], zeros(3, 3), 0));
  CHECK(close(ri[2], zeros(3, 3), 0));
}

TEST_CASE("Schur transform examples") {
  const MatrixSeq a = schur_transform(sseq({1, 0, 1}), 1);
  REQUIRE(a.size() == 1);
  CHECK(close(a[0], c1(1), 1e-30L));
  CHECK(close(schur_transform(sseq({1, 0, 0}), 1)[0], c1(0), 1e-30L));
  const MatrixSeq s = sseq({1, 2, 5, 14, 42});
  const MatrixSeq same = schur_transform(s, 0);
  for (Index j = 0; j <= 4; ++j) CHECK(close(same[j], s[j], 0));
  CHECK_THROWS_AS(schur_transform(sseq({1, 0, 1}), 2), RangeError);
}

TEST_CASE("canonical parametrization examples") {
  const HankelParam p = canonical_param(sseq({1, 0, 1}));
  REQUIRE(p.C.size() == 1);
  REQUIRE(p.D.size() == 2);
  CHECK(close(p.C[0], c1(0), 1e-30L));
  CHECK(close(p.D[0], c1(1), 1e-30L));
  CHECK(close(p.D[1], c1(1), 1e-30L));

  const HankelParam z = canonical_param(sseq({1, 0, 0}));
  CHECK(close(z.C[0], c1(0), 1e-30L));
  CHECK(close(z.D[1], c1(0), 1e-30L));

  const HankelParam one = canonical_param(sseq({3}));
  CHECK(one.C.empty());
  REQUIRE(one.D.size() == 1);
  CHECK(close(one.D[0], c1(3), 0));
}

TEST_CASE("Hankel class predicates") {
  CHECK(is_hnnd(sseq({1, 0, 1})));
  CHECK(is_hpd(sseq({1, 0, 1})));
  CHECK_FALSE(is_hnnd(sseq({1, 2, 1})));
  CHECK(is_hnnd(sseq({0, 0, 0})));
  CHECK_FALSE(is_hpd(sseq({0, 0, 0})));

  CHECK(is_hnnd_extendable(sseq({1, 0, 1})));
  CHECK_FALSE(is_hnnd_extendable(sseq({0, 1})));
  CHECK(is_hnnd_extendable(sseq({2})));
  CHECK(is_hnnd_extendable(sseq({0})));
  CHECK_FALSE(is_hnnd_extendable(sseq({-1})));
  // H_2 PSD but s_4 sits on N(H_1)
  CHECK(is_hnnd(sseq({1, 0, 0, 0, 1})));
  CHECK_FALSE(is_hnnd_extendable(sseq({1, 0, 0, 0, 1})));

  const MatrixSeq ext = canonical_extension(sseq({1, 0, 1}));
  REQUIRE(ext.size() == 5);
  CHECK(close(ext[3], c1(0), 1e-30L));
  CHECK(close(ext[4], c1(1), 1e-30L));
}

TEST_CASE("first-term domination") {
  CHECK_FALSE(is_first_term_dominated(MatrixSeq(2, {zeros(2, 2), identity(2)})));
  CHECK(is_first_term_dominated(MatrixSeq(2, {diag({1, 0}), diag({1, 0})})));
  for (const auto& inst : corpus(21, 30, 3, 7, 1, 4)) CHECK(is_first_term_dominated(inst.seq));
}

TEST_CASE("generator examples") {
  CHECK(close(atoms1({{0, 1}}).moments_prefix(3)[2], c1(0), 0));
  const MatrixSeq s = atoms1({{-1, 0.5}, {1, 0.5}}).moments_prefix(3);
  CHECK(close(s[0], c1(1), 1e-30L));
  CHECK(close(s[1], c1(0), 1e-30L));
  CHECK(close(s[2], c1(1), 1e-30L));
  CHECK(close(s[3], c1(0), 1e-30L));
  const MatrixSeq d = MolecularMeasure::dirac(0, diag({1, 0})).moments_prefix(2);
  CHECK(close(d[0], diag({1, 0}), 0));
  CHECK(close(d[1], zeros(2, 2), 0));

  const auto [a, sa] = random_extendable_seq(2, 5, 3, 99);
  const auto [b, sb] = random_extendable_seq(2, 5, 3, 99);
  CHECK(sa.atoms().size() <= 3);
  for (Index j = 0; j <= 5; ++j) CHECK(close(a[j], b[j], 0));
  CHECK(is_hnnd_extendable(a));
}

TEST_CASE("Schur algorithm reproduces the canonical parametrization") {
  for (const auto& inst : corpus(31, 120, 3, 9, 1, 4)) {
    const MatrixSeq& s = inst.seq;
    const Real tol = 1e-9L * (1 + s.scale());
    const HankelParam p = canonical_param(s);
    const SchurHeads h = schur_heads(s);
    for (size_t k = 1; k <= p.C.size(); ++k) CHECK(close(p.C[k - 1], h.s1[k - 1], tol));
    for (size_t k = 0; k < p.D.size(); ++k) CHECK(close(p.D[k], h.s0[k], tol));
  }
}

TEST_CASE("Schur transforms preserve extendability") {
  for (const auto& inst : corpus(37, 80, 3, 9, 1, 4))
    for (Index k = 0; 2 * k <= inst.seq.kappa(); ++k) CHECK(is_hnnd_extendable(schur_transform(inst.seq, k)));
}

TEST_CASE("Schur transform commutes with truncation") {
  for (const auto& inst : corpus(41, 60, 3, 9, 1, 4)) {
    const MatrixSeq& s = inst.seq;
    if (s.kappa() < 2) continue;
    const MatrixSeq full = schur_transform(s, 1);
    for (Index m = 2; m <= s.kappa(); ++m) {
      const MatrixSeq part = schur_transform(s.truncate(m), 1);
      for (Index j = 0; j <= m - 2; ++j) CHECK(close(part[j], full[j], 1e-12L * (1 + s.scale())));
    }
  }
}

TEST_CASE("structure of extendable sequences") {
  const Tolerances tol;
  for (const auto& inst : corpus(43, 90, 3, 9, 1, 4)) {
    const MatrixSeq& s = inst.seq;
    for (Index j = 0; j <= s.kappa(); ++j) {
      CHECK(is_hermitian(s[j]));
      if (j % 2 == 0) CHECK(is_psd(s[j]));
      CHECK(kernel_contained(s[0], s[j]));
    }
    for (const auto& d : canonical_param(s).D) CHECK(min_eigenvalue(d) >= -tol.psd_atol * (1 + s.scale()));
  }
}

TEST_CASE("reciprocal is a Cauchy-product inverse for invertible heads") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const Index q = 1 + trial % 3;
    std::vector<CMatrix> items;
    items.push_back(random_complex(rng, q, q) + 3 * identity(q));
    for (int j = 0; j < 5; ++j) items.push_back(random_complex(rng, q, q));
    const MatrixSeq s(q, items);
    const MatrixSeq r = reciprocal(s);
    for (Index k = 0; k <= s.kappa(); ++k) {
      CMatrix acc = zeros(q, q);
      for (Index j = 0; j <= k; ++j) acc += s[k - j] * r[j];
      CHECK(close(acc, k == 0 ? identity(q) : zeros(q, q), 1e-9L));
    }
  }
}

TEST_CASE("strict extendability of odd sequences matches H^> and Hermitian tail") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const Index q = 1 + trial % 2;
    MeasureDraw draw;
    draw.min_atoms = 4;
    draw.max_atoms = 5;
    draw.allow_rank_deficient = false;
    const MatrixSeq even = random_molecular(rng, q, draw).moments_prefix(2);
    CMatrix tail = random_complex(rng, q, q);
    if (trial % 2 == 0) tail = (tail + tail.adjoint()).eval();
    const MatrixSeq odd = even.extended(tail);
    const bool herm = is_hermitian(tail);
    CHECK(is_hpd(even));
    CHECK(is_hnnd_extendable(odd) == herm);
  }
}
