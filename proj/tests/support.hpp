#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "momentforge/matkit.hpp"
#include "momentforge/measures.hpp"
#include "momentforge/sequence.hpp"

namespace mf_test {

using namespace momentforge;

inline CMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = static_cast<Index>(rows.begin()->size());
  CMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index k = 0;
    for (const auto& v : row) m(i, k++) = v;
    ++i;
  }
  return m;
}

inline CMatrix diag(std::initializer_list<Complex> d) {
  CMatrix m = CMatrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  Index i = 0;
  for (const auto& v : d) m(i, i) = v, ++i;
  return m;
}

inline CMatrix c1(Complex v) { return CMatrix::Constant(1, 1, v); }

inline MatrixSeq sseq(std::initializer_list<Complex> v) { return MatrixSeq::scalar(std::vector<Complex>(v)); }

inline MolecularMeasure atoms1(std::initializer_list<std::pair<double, double>> a) {
  std::vector<Atom> out;
  for (const auto& [t, w] : a) out.push_back(Atom{t, c1(w)});
  return MolecularMeasure(1, out);
}

inline bool close(const CMatrix& a, const CMatrix& b, Real tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && op_norm(a - b) <= tol;
}

inline bool close(Complex a, Complex b, Real tol) { return abs(a - b) <= tol; }

struct Instance {
  MatrixSeq seq;
  MolecularMeasure sigma;
};

// Moments of random molecular measures; atom counts in [min_atoms, max_atoms].
inline std::vector<Instance> corpus(std::uint64_t seed, int count, Index q_max, Index kappa_max, Index min_atoms,
                                    Index max_atoms) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) {
    const Index q = 1 + i % q_max;
    const Index kappa = i % (kappa_max + 1);
    MeasureDraw draw;
    draw.min_atoms = min_atoms;
    draw.max_atoms = max_atoms;
    MolecularMeasure sigma = random_molecular(rng, q, draw);
    out.push_back({sigma.moments_prefix(kappa), sigma});
  }
  return out;
}

}  // namespace mf_test
