#include "momentforge/measures.hpp"

#include <algorithm>
#include <cmath>

#include "momentforge/matkit.hpp"

namespace momentforge {

MolecularMeasure::MolecularMeasure(Index q, std::vector<Atom> atoms) : q_(q) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.t < b.t; });
  for (auto& a : atoms) {
    if (!isfinite(a.t)) throw DomainError("MolecularMeasure: non-finite atom position");
    if (a.mass.rows() != q || a.mass.cols() != q) throw ShapeError("MolecularMeasure: mass is not q x q");
    if (!is_psd(a.mass)) throw ContractError("MolecularMeasure: mass is not Hermitian PSD");
    if (!atoms_.empty() && abs(a.t - atoms_.back().t) <= kMergeDistance) {
      atoms_.back().mass += a.mass;
    } else {
      atoms_.push_back(std::move(a));
    }
  }
}

MolecularMeasure MolecularMeasure::dirac(Real t, const CMatrix& mass) {
  return MolecularMeasure(mass.rows(), {Atom{t, mass}});
}

CMatrix MolecularMeasure::total_mass() const { return moment(0); }

CMatrix MolecularMeasure::moment(Index j) const {
  if (j < 0) throw RangeError("moment: negative index");
  CMatrix out = CMatrix::Zero(q_, q_);
  for (const auto& a : atoms_) out += pow(a.t, static_cast<int>(j)) * a.mass;
  return out;
}

MatrixSeq MolecularMeasure::moments_prefix(Index kappa) const {
  if (kappa < 0) throw RangeError("moments_prefix: negative kappa");
  std::vector<CMatrix> items;
  for (Index j = 0; j <= kappa; ++j) items.push_back(moment(j));
  return MatrixSeq(q_, std::move(items));
}

CMatrix MolecularMeasure::stieltjes_eval(Complex z) const {
  if (!(z.imag() > 0)) throw DomainError("stieltjes_eval: Im z must be positive");
  CMatrix out = CMatrix::Zero(q_, q_);
  for (const auto& a : atoms_) out += (Real(1) / (a.t - z)) * a.mass;
  return out;
}

Real MolecularMeasure::support_radius() const {
  Real r = 0;
  for (const auto& a : atoms_) r = std::max(r, abs(a.t));
  return r;
}

MolecularMeasure operator+(const MolecularMeasure& a, const MolecularMeasure& b) {
  if (a.q() != b.q()) throw ShapeError("measure sum: size mismatch");
  auto atoms = a.atoms();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  return MolecularMeasure(a.q(), std::move(atoms));
}

CMatrix random_complex(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> nd;
  CMatrix g(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) g(i, j) = Complex(nd(rng), nd(rng));
  return g;
}

CMatrix random_psd(std::mt19937_64& rng, Index q, Index rank) {
  if (rank == 0) return CMatrix::Zero(q, q);
  CMatrix g = random_complex(rng, q, rank);
  CMatrix m = g * g.adjoint();
  m = re_part(m);
  return m / op_norm(m);
}

MolecularMeasure random_molecular(std::mt19937_64& rng, Index q, const MeasureDraw& draw) {
  std::uniform_int_distribution<Index> count(draw.min_atoms, std::max(draw.min_atoms, draw.max_atoms));
  std::uniform_real_distribution<double> pos(static_cast<double>(draw.t_min), static_cast<double>(draw.t_max));
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  std::uniform_int_distribution<Index> rank(draw.allow_rank_deficient ? 1 : q, q);
  const Index k = count(rng);
  std::vector<Atom> atoms;
  Index guard = 0;
  while (static_cast<Index>(atoms.size()) < k && guard++ < 10000) {
    Real t = static_cast<Real>(pos(rng));
    bool close = std::any_of(atoms.begin(), atoms.end(),
                             [&](const Atom& a) { return abs(a.t - t) < draw.min_separation; });
    if (close) continue;
    atoms.push_back(Atom{t, static_cast<Real>(weight(rng)) * random_psd(rng, q, rank(rng))});
  }
  return MolecularMeasure(q, std::move(atoms));
}

}  // namespace momentforge
