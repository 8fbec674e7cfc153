#include "k3/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace k3 {

void FpMatrix::append_row(std::span<const Fp> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw std::invalid_argument("FpMatrix: row length mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

FpMatrix FpMatrix::from_rows(const std::vector<std::vector<Fp>>& rows, std::size_t cols) {
  FpMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

std::vector<Fp> FpMatrix::apply(const PrimeField& f, std::span<const Fp> v) const {
  if (v.size() != cols_) throw std::invalid_argument("FpMatrix: vector length mismatch");
  std::vector<Fp> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc += static_cast<std::uint64_t>((*this)(r, c)) * v[c];
      if ((c & 15) == 15) acc %= f.p();
    }
    out[r] = static_cast<Fp>(acc % f.p());
  }
  return out;
}

RowEchelon::RowEchelon(const PrimeField& f, std::size_t cols) : field_(&f), cols_(cols), row_of_pivot_(cols, -1) {
  const std::uint64_t p1 = f.p() - 1;
  const std::uint64_t step = p1 * p1;
  flush_every_ = std::max<std::uint64_t>(1, (UINT64_MAX - p1) / step - 1);
  flush_every_ = std::min<std::size_t>(flush_every_, 1u << 20);
}

std::vector<std::uint64_t> RowEchelon::reduce(std::span<const Fp> row) const {
  if (row.size() != cols_) throw std::invalid_argument("RowEchelon: row length mismatch");
  const std::uint64_t p = field_->p();
  std::vector<std::uint64_t> acc(row.begin(), row.end());
  std::size_t pending = 0;
  for (std::size_t c = 0; c < cols_; ++c) {
    long idx = row_of_pivot_[c];
    if (idx < 0) continue;
    if (pending >= flush_every_) {
      for (std::size_t j = c; j < cols_; ++j) acc[j] %= p;
      pending = 0;
    }
    const std::uint64_t coef = acc[c] % p;
    acc[c] = 0;
    if (coef == 0) continue;
    const std::uint64_t m = p - coef;
    const auto& b = basis_[static_cast<std::size_t>(idx)];
    for (std::size_t j = c + 1; j < cols_; ++j) acc[j] += m * b[j];
    ++pending;
  }
  for (auto& x : acc) x %= p;
  return acc;
}

std::vector<Fp> RowEchelon::remainder(std::span<const Fp> row) const {
  auto acc = reduce(row);
  return {acc.begin(), acc.end()};
}

bool RowEchelon::contains(std::span<const Fp> row) const {
  auto acc = reduce(row);
  return std::all_of(acc.begin(), acc.end(), [](std::uint64_t x) { return x == 0; });
}

bool RowEchelon::add_row(std::span<const Fp> row) {
  if (full()) {
    if (row.size() != cols_) throw std::invalid_argument("RowEchelon: row length mismatch");
    return false;
  }
  auto acc = reduce(row);
  std::size_t piv = 0;
  while (piv < cols_ && acc[piv] == 0) ++piv;
  if (piv == cols_) return false;
  const Fp inv = field_->inv(static_cast<Fp>(acc[piv]));
  std::vector<Fp> r(cols_, 0);
  for (std::size_t j = piv; j < cols_; ++j) r[j] = field_->mul(static_cast<Fp>(acc[j]), inv);
  row_of_pivot_[piv] = static_cast<long>(basis_.size());
  basis_.push_back(std::move(r));
  pivots_.push_back(piv);
  return true;
}

std::vector<std::size_t> RowEchelon::pivot_columns() const {
  std::vector<std::size_t> out = pivots_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Fp>> RowEchelon::reduced_rows() const {
  const PrimeField& f = *field_;
  std::vector<std::size_t> order(basis_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
  std::vector<std::vector<Fp>> rows;
  std::vector<std::size_t> piv;
  for (auto i : order) rows.push_back(basis_[i]), piv.push_back(pivots_[i]);
  // back substitution, bottom-up
  for (std::size_t i = rows.size(); i-- > 0;) {
    for (std::size_t r = 0; r < i; ++r) {
      Fp c = rows[r][piv[i]];
      if (c == 0) continue;
      for (std::size_t j = piv[i]; j < cols_; ++j) rows[r][j] = f.sub(rows[r][j], f.mul(c, rows[i][j]));
    }
  }
  return rows;
}

std::vector<std::vector<Fp>> RowEchelon::kernel() const {
  const PrimeField& f = *field_;
  auto rows = reduced_rows();
  std::vector<long> pivot_row(cols_, -1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t c = 0;
    while (rows[i][c] == 0) ++c;
    pivot_row[c] = static_cast<long>(i);
  }
  std::vector<std::vector<Fp>> out;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (pivot_row[free] >= 0) continue;
    std::vector<Fp> v(cols_, 0);
    v[free] = 1;
    for (std::size_t c = 0; c < cols_; ++c)
      if (pivot_row[c] >= 0) v[c] = f.neg(rows[static_cast<std::size_t>(pivot_row[c])][free]);
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t rank(const PrimeField& f, const FpMatrix& m) { return rank_capped(f, m, m.cols()); }

std::size_t rank_capped(const PrimeField& f, const FpMatrix& m, std::size_t cap) {
  RowEchelon e(f, m.cols());
  for (std::size_t r = 0; r < m.rows() && e.rank() < cap; ++r) e.add_row(m.row(r));
  return e.rank();
}

std::vector<std::vector<Fp>> rref(const PrimeField& f, const FpMatrix& m) {
  RowEchelon e(f, m.cols());
  for (std::size_t r = 0; r < m.rows() && !e.full(); ++r) e.add_row(m.row(r));
  return e.reduced_rows();
}

std::vector<std::vector<Fp>> kernel_basis(const PrimeField& f, const FpMatrix& m) {
  RowEchelon e(f, m.cols());
  for (std::size_t r = 0; r < m.rows() && !e.full(); ++r) e.add_row(m.row(r));
  return e.kernel();
}

}  // namespace k3
