#include "spinlab/linalg.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace spinlab {

// ---------------------------------------------------------------- SparseVec

SparseVec SparseVec::single(std::uint32_t i, Scalar c) {
  SparseVec v;
  if (!c.is_zero()) v.entries_.push_back({i, std::move(c)});
  return v;
}

SparseVec SparseVec::from_dense(std::span<const Scalar> dense) {
  SparseVec v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!dense[i].is_zero()) v.entries_.push_back({static_cast<std::uint32_t>(i), dense[i]});
  return v;
}

std::optional<Scalar> SparseVec::get(std::uint32_t i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const SparseEntry& e, std::uint32_t k) { return e.index < k; });
  if (it != entries_.end() && it->index == i) return it->value;
  return std::nullopt;
}

Scalar SparseVec::at(std::uint32_t i, FieldSpec f) const {
  auto v = get(i);
  return v ? *v : Scalar::zero(f);
}

void SparseVec::push_back(std::uint32_t i, Scalar c) {
  if (!entries_.empty() && entries_.back().index >= i)
    throw std::logic_error("SparseVec::push_back out of order");
  if (!c.is_zero()) entries_.push_back({i, std::move(c)});
}

void SparseVec::add_scaled(const SparseVec& other, const Scalar& c) {
  if (other.empty() || c.is_zero()) return;
  std::vector<SparseEntry> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->index < b->index)) {
      out.push_back(std::move(*a));
      ++a;
    } else if (a == entries_.end() || b->index < a->index) {
      out.push_back({b->index, b->value * c});
      ++b;
    } else {
      Scalar s = a->value;
      s.add_product(b->value, c);
      if (!s.is_zero()) out.push_back({a->index, std::move(s)});
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

SparseVec SparseVec::scaled(const Scalar& c) const {
  SparseVec r;
  if (c.is_zero()) return r;
  r.entries_.reserve(entries_.size());
  for (const auto& e : entries_) r.entries_.push_back({e.index, e.value * c});
  return r;
}

SparseVec SparseVec::operator-() const {
  SparseVec r;
  r.entries_.reserve(entries_.size());
  for (const auto& e : entries_) r.entries_.push_back({e.index, -e.value});
  return r;
}

std::vector<Scalar> SparseVec::to_dense(std::size_t n, FieldSpec f) const {
  std::vector<Scalar> d(n, Scalar::zero(f));
  for (const auto& e : entries_) d.at(e.index) = e.value;
  return d;
}

SparseVec SparseVec::reduce_mod(FieldSpec target) const {
  SparseVec r;
  for (const auto& e : entries_) {
    Scalar s = e.value.reduce_mod(target);
    if (!s.is_zero()) r.entries_.push_back({e.index, std::move(s)});
  }
  return r;
}

bool operator==(const SparseVec& a, const SparseVec& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (a.entries_[i].index != b.entries_[i].index) return false;
    if (a.entries_[i].value != b.entries_[i].value) return false;
  }
  return true;
}

// -------------------------------------------------------------- Accumulator

Accumulator::Accumulator(FieldSpec f, std::size_t n)
    : field_(f), values_(n, Scalar::zero(f)), touched_flag_(n, 0) {}

void Accumulator::add(std::uint32_t i, const Scalar& c) {
  if (!touched_flag_[i]) {
    touched_flag_[i] = 1;
    touched_.push_back(i);
  }
  values_[i] += c;
}

void Accumulator::add_product(std::uint32_t i, const Scalar& a, const Scalar& b) {
  if (!touched_flag_[i]) {
    touched_flag_[i] = 1;
    touched_.push_back(i);
  }
  values_[i].add_product(a, b);
}

void Accumulator::add_scaled(const SparseVec& v, const Scalar& c) {
  for (const auto& e : v) add_product(e.index, e.value, c);
}

SparseVec Accumulator::take() {
  std::sort(touched_.begin(), touched_.end());
  SparseVec out;
  for (auto i : touched_) {
    if (!values_[i].is_zero()) out.push_back(i, values_[i]);
    values_[i] = Scalar::zero(field_);
    touched_flag_[i] = 0;
  }
  touched_.clear();
  return out;
}

void Accumulator::clear() {
  for (auto i : touched_) {
    values_[i] = Scalar::zero(field_);
    touched_flag_[i] = 0;
  }
  touched_.clear();
}

// ------------------------------------------------------------------- Matrix

Matrix::Matrix(FieldSpec f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(FieldSpec f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix dimension mismatch in product");
  Matrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o(k, j);
        if (!b.is_zero()) r(i, j).add_product(a, b);
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix dimension mismatch in sum");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix dimension mismatch in difference");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix r = *this;
  for (auto& x : r.data_) x *= c;
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

SparseVec Matrix::column(std::size_t c) const {
  SparseVec v;
  for (std::size_t r = 0; r < rows_; ++r) v.push_back(static_cast<std::uint32_t>(r), (*this)(r, c));
  return v;
}

SparseVec Matrix::row(std::size_t r) const {
  return SparseVec::from_dense(std::span<const Scalar>(data_.data() + r * cols_, cols_));
}

SparseVec Matrix::flatten() const { return SparseVec::from_dense(data_); }

Matrix Matrix::unflatten(const SparseVec& v, FieldSpec f, std::size_t rows, std::size_t cols) {
  Matrix m(f, rows, cols);
  for (const auto& e : v) m.data_.at(e.index) = e.value;
  return m;
}

std::vector<Scalar> Matrix::apply(std::span<const Scalar> x) const {
  if (x.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
  std::vector<Scalar> y(rows_, Scalar::zero(field_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!x[j].is_zero()) y[i].add_product((*this)(i, j), x[j]);
  return y;
}

SparseVec Matrix::apply(const SparseVec& x) const {
  Accumulator acc(field_, rows_);
  for (const auto& e : x)
    for (std::size_t i = 0; i < rows_; ++i) {
      const Scalar& a = (*this)(i, e.index);
      if (!a.is_zero()) acc.add_product(static_cast<std::uint32_t>(i), a, e.value);
    }
  return acc.take();
}

Matrix Matrix::reduce_mod(FieldSpec target) const {
  Matrix r(target, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i].reduce_mod(target);
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    if (a.data_[i] != b.data_[i]) return false;
  return true;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// --------------------------------------------------------------- RowEchelon

RowEchelon::RowEchelon(FieldSpec f, std::size_t ncols)
    : field_(f), ncols_(ncols), pivot_row_(ncols, -1), work_(ncols, Scalar::zero(f)), queued_(ncols, 0) {}

SparseVec RowEchelon::reduce_from(const SparseVec& v, std::int64_t skip_col) const {
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
  for (const auto& e : v) {
    if (e.index >= ncols_) throw std::out_of_range("RowEchelon: column index out of range");
    work_[e.index] = e.value;
    queued_[e.index] = 1;
    heap.push(e.index);
  }
  SparseVec out;
  while (!heap.empty()) {
    std::uint32_t c = heap.top();
    heap.pop();
    queued_[c] = 0;
    if (work_[c].is_zero()) continue;
    std::int32_t r = pivot_row_[c];
    if (r < 0 || static_cast<std::int64_t>(c) == skip_col) {
      out.push_back(c, work_[c]);
      work_[c] = Scalar::zero(field_);
      continue;
    }
    Scalar coef = -work_[c];
    for (const auto& e : rows_[r]) {
      if (!queued_[e.index]) {
        queued_[e.index] = 1;
        heap.push(e.index);
      }
      work_[e.index].add_product(e.value, coef);
    }
    work_[c] = Scalar::zero(field_);
  }
  return out;
}

SparseVec RowEchelon::reduce(const SparseVec& v) const { return reduce_from(v, -1); }

bool RowEchelon::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  Scalar inv = r.front().value.inverse();
  r = r.scaled(inv);
  std::uint32_t pivot = r.front().index;
  pivot_row_[pivot] = static_cast<std::int32_t>(rows_.size());
  pivots_.push_back(pivot);
  rows_.push_back(std::move(r));
  return true;
}

std::vector<SparseVec> RowEchelon::reduced_basis() const {
  std::vector<std::uint32_t> order = pivots_;
  std::sort(order.begin(), order.end());
  std::vector<SparseVec> reduced(rows_.size());
  // Back-substitute from the rightmost pivot; every row used for elimination is already reduced.
  RowEchelon back(field_, ncols_);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const SparseVec& row = rows_[pivot_row_[*it]];
    SparseVec r = back.reduce_from(row, *it);
    back.pivot_row_[*it] = static_cast<std::int32_t>(back.rows_.size());
    back.pivots_.push_back(*it);
    back.rows_.push_back(r);
  }
  std::vector<SparseVec> out;
  out.reserve(order.size());
  for (auto p : order) out.push_back(back.rows_[back.pivot_row_[p]]);
  return out;
}

std::vector<SparseVec> RowEchelon::nullspace() const {
  auto basis = reduced_basis();
  std::vector<std::vector<SparseEntry>> cols(ncols_);
  for (const auto& row : basis) {
    std::uint32_t p = row.front().index;
    for (const auto& e : row)
      if (e.index != p) cols[e.index].push_back({p, -e.value});
  }
  std::vector<SparseVec> out;
  for (std::uint32_t f = 0; f < ncols_; ++f) {
    if (pivot_row_[f] >= 0) continue;
    auto& entries = cols[f];
    entries.push_back({f, Scalar::one(field_)});
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    SparseVec v;
    for (auto& e : entries) v.push_back(e.index, e.value);
    out.push_back(std::move(v));
  }
  return out;
}

// --------------------------------------------------------- CoordinateSolver

CoordinateSolver::CoordinateSolver(FieldSpec f, std::size_t ncols, const std::vector<SparseVec>& basis)
    : ncols_(ncols), count_(basis.size()), echelon_(f, ncols + basis.size()) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!basis[i].empty() && basis[i].entries().back().index >= ncols)
      throw std::out_of_range("CoordinateSolver: basis vector exceeds ambient dimension");
    SparseVec aug = basis[i];
    aug.push_back(static_cast<std::uint32_t>(ncols + i), Scalar::one(f));
    echelon_.insert(aug);
  }
  for (std::size_t c = ncols; c < ncols + basis.size(); ++c)
    if (echelon_.is_pivot(static_cast<std::uint32_t>(c)))
      throw std::invalid_argument("CoordinateSolver: basis vectors are linearly dependent");
}

std::optional<SparseVec> CoordinateSolver::coordinates(const SparseVec& v) const {
  SparseVec r = echelon_.reduce(v);
  SparseVec coords;
  for (const auto& e : r) {
    if (e.index < ncols_) return std::nullopt;
    coords.push_back(static_cast<std::uint32_t>(e.index - ncols_), -e.value);
  }
  return coords;
}

// ---------------------------------------------------------------- helpers

std::size_t rank(const std::vector<SparseVec>& rows, FieldSpec f, std::size_t ncols) {
  RowEchelon e(f, ncols);
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

std::size_t rank(const Matrix& m) {
  RowEchelon e(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  return e.rank();
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  std::size_t n = m.rows();
  RowEchelon e(m.field(), 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    SparseVec row = m.row(r);
    row.push_back(static_cast<std::uint32_t>(n + r), Scalar::one(m.field()));
    e.insert(row);
  }
  auto basis = e.reduced_basis();
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].front().index != i) return std::nullopt;
    for (const auto& x : basis[i])
      if (x.index >= n) inv(i, x.index - n) = x.value;
  }
  if (basis.size() < n) return std::nullopt;
  return inv;
}

std::vector<SparseVec> kernel(const Matrix& m) {
  RowEchelon e(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  return e.nullspace();
}

}  // namespace spinlab
