#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "momentforge/sequence.hpp"
#include "momentforge/types.hpp"

namespace momentforge {

struct Atom {
  Real t;
  CMatrix mass;
};

class MolecularMeasure {
 public:
  static constexpr Real kMergeDistance = 1e-12L;

  MolecularMeasure() = default;
  explicit MolecularMeasure(Index q) : q_(q) {}
  // Masses must be Hermitian PSD; atoms closer than kMergeDistance are merged.
  MolecularMeasure(Index q, std::vector<Atom> atoms);

  static MolecularMeasure dirac(Real t, const CMatrix& mass);

  Index q() const { return q_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  CMatrix total_mass() const;
  CMatrix moment(Index j) const;
  MatrixSeq moments_prefix(Index kappa) const;
  CMatrix stieltjes_eval(Complex z) const;
  Real support_radius() const;

 private:
  Index q_ = 0;
  std::vector<Atom> atoms_;
};

MolecularMeasure operator+(const MolecularMeasure& a, const MolecularMeasure& b);

struct MeasureDraw {
  Real t_min = -2;
  Real t_max = 2;
  Real min_separation = 0.2L;
  Index min_atoms = 1;
  Index max_atoms = 3;
  bool allow_rank_deficient = true;
};

CMatrix random_psd(std::mt19937_64& rng, Index q, Index rank);
CMatrix random_complex(std::mt19937_64& rng, Index rows, Index cols);
MolecularMeasure random_molecular(std::mt19937_64& rng, Index q, const MeasureDraw& draw);

}  // namespace momentforge
