#include "momentforge/sequence.hpp"

#include <algorithm>
#include <string>

#include "momentforge/matkit.hpp"

namespace momentforge {

MatrixSeq::MatrixSeq(Index q, std::vector<CMatrix> items) : q_(q), items_(std::move(items)) {
  if (q < 0) throw ShapeError("MatrixSeq: negative size");
  if (items_.empty()) throw ShapeError("MatrixSeq: needs at least s_0");
  for (const auto& s : items_) {
    if (s.rows() != q || s.cols() != q) throw ShapeError("MatrixSeq: item is not q x q");
    require_finite(s, "MatrixSeq");
  }
}

MatrixSeq MatrixSeq::scalar(const std::vector<Complex>& values) {
  std::vector<CMatrix> items;
  for (const auto& v : values) items.push_back(CMatrix::Constant(1, 1, v));
  return MatrixSeq(1, std::move(items));
}

const CMatrix& MatrixSeq::operator[](Index j) const {
  if (j < 0 || j > kappa()) throw RangeError("MatrixSeq: index " + std::to_string(j) + " out of range");
  return items_[static_cast<size_t>(j)];
}

MatrixSeq MatrixSeq::truncate(Index m) const {
  if (m < 0 || m > kappa()) throw RangeError("truncate: length out of range");
  return MatrixSeq(q_, std::vector<CMatrix>(items_.begin(), items_.begin() + m + 1));
}

MatrixSeq MatrixSeq::extended(const CMatrix& next) const {
  auto items = items_;
  items.push_back(next);
  return MatrixSeq(q_, std::move(items));
}

Real MatrixSeq::scale() const {
  Real s = 0;
  for (const auto& x : items_) s = std::max(s, op_norm(x));
  return s;
}

CMatrix MatrixSeq::y_block(Index l, Index m) const {
  if (l > m) return CMatrix(0, q_);
  CMatrix out(q_ * (m - l + 1), q_);
  for (Index j = l; j <= m; ++j) out.block((j - l) * q_, 0, q_, q_) = (*this)[j];
  return out;
}

CMatrix MatrixSeq::z_block(Index l, Index m) const {
  if (l > m) return CMatrix(q_, 0);
  CMatrix out(q_, q_ * (m - l + 1));
  for (Index j = l; j <= m; ++j) out.block(0, (j - l) * q_, q_, q_) = (*this)[j];
  return out;
}

}  // namespace momentforge
