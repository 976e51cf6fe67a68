#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spinlab/scalar.hpp"

namespace spinlab {

class DegenerateForm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SparseEntry {
  std::uint32_t index;
  Scalar value;
};

/// Sorted list of nonzero coordinates. Never stores an explicit zero.
class SparseVec {
 public:
  SparseVec() = default;

  static SparseVec unit(std::uint32_t i, FieldSpec f) { return single(i, Scalar::one(f)); }
  static SparseVec single(std::uint32_t i, Scalar c);
  static SparseVec from_dense(std::span<const Scalar> dense);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<SparseEntry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const SparseEntry& front() const { return entries_.front(); }

  /// Coefficient at i, or nullopt when it is zero.
  std::optional<Scalar> get(std::uint32_t i) const;
  Scalar at(std::uint32_t i, FieldSpec f) const;

  /// Appends an entry with an index larger than every stored one.
  void push_back(std::uint32_t i, Scalar c);

  /// this += c * other
  void add_scaled(const SparseVec& other, const Scalar& c);
  SparseVec scaled(const Scalar& c) const;
  SparseVec operator-() const;
  std::vector<Scalar> to_dense(std::size_t n, FieldSpec f) const;

  /// Maps every stored coefficient into another field (rational to GF(p) reduction).
  SparseVec reduce_mod(FieldSpec target) const;

  friend SparseVec operator+(SparseVec a, const SparseVec& b) {
    if (!b.empty()) a.add_scaled(b, Scalar::one(b.front().value.field()));
    return a;
  }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) {
    if (!b.empty()) a.add_scaled(b, -Scalar::one(b.front().value.field()));
    return a;
  }
  friend bool operator==(const SparseVec& a, const SparseVec& b);

 private:
  std::vector<SparseEntry> entries_;
};

/// Dense scratch vector that remembers which slots were touched, for
/// accumulating many sparse contributions and extracting them sorted.
class Accumulator {
 public:
  Accumulator(FieldSpec f, std::size_t n);

  void add(std::uint32_t i, const Scalar& c);
  void add_product(std::uint32_t i, const Scalar& a, const Scalar& b);
  void add_scaled(const SparseVec& v, const Scalar& c);
  SparseVec take();
  void clear();
  FieldSpec field() const { return field_; }
  std::size_t dim() const { return values_.size(); }

 private:
  FieldSpec field_;
  std::vector<Scalar> values_;
  std::vector<char> touched_flag_;
  std::vector<std::uint32_t> touched_;
};

/// Dense row-major matrix over one field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldSpec f, std::size_t rows, std::size_t cols);
  static Matrix identity(FieldSpec f, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldSpec field() const { return field_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& c) const;
  Matrix transpose() const;
  bool is_zero() const;

  SparseVec column(std::size_t c) const;
  SparseVec row(std::size_t r) const;
  /// Row-major flattening, used to treat matrices as vectors of length rows*cols.
  SparseVec flatten() const;
  static Matrix unflatten(const SparseVec& v, FieldSpec f, std::size_t rows, std::size_t cols);

  std::vector<Scalar> apply(std::span<const Scalar> x) const;
  SparseVec apply(const SparseVec& x) const;

  Matrix reduce_mod(FieldSpec target) const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  FieldSpec field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix commutator(const Matrix& a, const Matrix& b);

/// Incremental sparse row echelon form.
///
/// Rows are stored with a leading 1 at their pivot column. Reduction walks
/// the nonzero columns of the candidate in increasing order, so a row only
/// ever touches columns to the right of the one being eliminated. The
/// scratch buffer makes const methods non-reentrant: share one instance
/// across threads only behind a lock.
class RowEchelon {
 public:
  RowEchelon(FieldSpec f, std::size_t ncols);

  /// Returns true when v was independent of the stored rows.
  bool insert(const SparseVec& v);
  SparseVec reduce(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  std::size_t rank() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }
  FieldSpec field() const { return field_; }
  bool is_pivot(std::uint32_t col) const { return pivot_row_[col] >= 0; }

  /// Fully reduced basis, ordered by pivot column.
  std::vector<SparseVec> reduced_basis() const;
  /// Basis of the solution space {x : r . x = 0 for all rows r}.
  std::vector<SparseVec> nullspace() const;

 private:
  SparseVec reduce_from(const SparseVec& v, std::int64_t skip_col) const;

  FieldSpec field_;
  std::size_t ncols_;
  std::vector<std::int32_t> pivot_row_;
  std::vector<SparseVec> rows_;
  std::vector<std::uint32_t> pivots_;
  mutable std::vector<Scalar> work_;
  mutable std::vector<char> queued_;
};

/// Expresses vectors in the span of a fixed independent family.
class CoordinateSolver {
 public:
  CoordinateSolver(FieldSpec f, std::size_t ncols, const std::vector<SparseVec>& basis);

  /// Coordinates of v relative to the family, or nullopt when v is outside the span.
  std::optional<SparseVec> coordinates(const SparseVec& v) const;
  std::size_t size() const { return count_; }
  std::size_t ncols() const { return ncols_; }

 private:
  std::size_t ncols_;
  std::size_t count_;
  RowEchelon echelon_;
};

std::size_t rank(const Matrix& m);
std::size_t rank(const std::vector<SparseVec>& rows, FieldSpec f, std::size_t ncols);
std::optional<Matrix> inverse(const Matrix& m);
/// Column-vector basis of {x : m x = 0}.
std::vector<SparseVec> kernel(const Matrix& m);

}  // namespace spinlab
