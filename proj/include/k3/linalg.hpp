#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "k3/field.hpp"

namespace k3 {

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Fp& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Fp operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Fp> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Fp> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Fp> r);
  static FpMatrix from_rows(const std::vector<std::vector<Fp>>& rows, std::size_t cols);

  std::vector<Fp> apply(const PrimeField& f, std::span<const Fp> v) const;  // M v

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Fp> data_;
};

/// Incremental row echelon basis. Rows are reduced left to right with
/// deferred modular reduction, so a long stream of rows can be fed with an
/// early stop once the target rank is reached.
class RowEchelon {
 public:
  RowEchelon(const PrimeField& f, std::size_t cols);

  /// Returns true when the row was independent of the rows seen so far.
  bool add_row(std::span<const Fp> row);
  /// Reduced remainder of a row against the current basis (all zero iff in the span).
  std::vector<Fp> remainder(std::span<const Fp> row) const;
  bool contains(std::span<const Fp> row) const;

  std::size_t rank() const { return basis_.size(); }
  std::size_t cols() const { return cols_; }
  bool full() const { return basis_.size() == cols_; }

  /// Reduced row echelon form of the accumulated span, sorted by pivot.
  std::vector<std::vector<Fp>> reduced_rows() const;
  std::vector<std::size_t> pivot_columns() const;
  /// Basis of the right kernel of the accumulated rows.
  std::vector<std::vector<Fp>> kernel() const;

 private:
  std::vector<std::uint64_t> reduce(std::span<const Fp> row) const;

  const PrimeField* field_;
  std::size_t cols_;
  std::size_t flush_every_;
  std::vector<std::vector<Fp>> basis_;  // each normalised to pivot 1
  std::vector<std::size_t> pivots_;
  std::vector<long> row_of_pivot_;
};

std::size_t rank(const PrimeField& f, const FpMatrix& m);
/// Rank with early exit once `cap` is reached.
std::size_t rank_capped(const PrimeField& f, const FpMatrix& m, std::size_t cap);
std::vector<std::vector<Fp>> rref(const PrimeField& f, const FpMatrix& m);
std::vector<std::vector<Fp>> kernel_basis(const PrimeField& f, const FpMatrix& m);

}  // namespace k3
