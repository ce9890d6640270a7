#pragma once

#include <vector>

#include "momentforge/types.hpp"

namespace momentforge {

class MatrixSeq {
 public:
  MatrixSeq() = default;
  MatrixSeq(Index q, std::vector<CMatrix> items);

  static MatrixSeq scalar(const std::vector<Complex>& values);

  Index q() const { return q_; }
  Index kappa() const { return static_cast<Index>(items_.size()) - 1; }
  Index size() const { return static_cast<Index>(items_.size()); }
  bool empty() const { return items_.empty(); }
  const CMatrix& operator[](Index j) const;
  const std::vector<CMatrix>& items() const { return items_; }

  // s_0..s_m
  MatrixSeq truncate(Index m) const;
  MatrixSeq extended(const CMatrix& next) const;
  // Largest operator norm among the items.
  Real scale() const;

  // Column stack of s_l..s_m (y_{l,m}) and row of s_l..s_m (z_{l,m}).
  CMatrix y_block(Index l, Index m) const;
  CMatrix z_block(Index l, Index m) const;

 private:
  Index q_ = 0;
  std::vector<CMatrix> items_;
};

}  // namespace momentforge
