#include "spinlab/clifford.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace spinlab {

std::string kind_name(Kind k) { return k == Kind::B ? "B" : "D"; }

namespace {

void add_term(std::vector<IntTerm>& terms, std::uint32_t index, std::int32_t c) {
  if (c == 0) return;
  for (auto& t : terms)
    if (t.index == index) {
      t.coeff += c;
      return;
    }
  terms.push_back({index, c});
}

std::vector<IntTerm> finish(std::vector<IntTerm> terms) {
  std::erase_if(terms, [](const IntTerm& t) { return t.coeff == 0; });
  std::sort(terms.begin(), terms.end(), [](const IntTerm& a, const IntTerm& b) { return a.index < b.index; });
  return terms;
}

int parity_sign(Mask below) { return std::popcount(below) & 1 ? -1 : 1; }

}  // namespace

OrthogonalSpace::OrthogonalSpace(int l, Kind kind)
    : l_(l), kind_(kind), offset_(kind == Kind::B ? 1 : 0), dim_(2 * l + (kind == Kind::B ? 1 : 0)) {
  if (l < 1 || (kind == Kind::D && l < 2) || l > 16) throw std::invalid_argument("unsupported rank for so");
  pair_index_.assign(dim_ * dim_, static_cast<std::size_t>(-1));
  for (std::size_t a = 0; a < dim_; ++a)
    for (std::size_t b = a + 1; b < dim_; ++b) {
      pair_index_[a * dim_ + b] = pairs_.size();
      pairs_.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
}

int OrthogonalSpace::u() const {
  if (kind_ != Kind::B) throw std::logic_error("kind D has no vector u");
  return 0;
}

std::string OrthogonalSpace::vector_label(int a) const {
  if (a < offset_) return "u";
  int i = a - offset_;
  return i < l_ ? "v" + std::to_string(i + 1) : "f" + std::to_string(i - l_ + 1);
}

int OrthogonalSpace::polar(int a, int b) const {
  if (a < offset_ || b < offset_) return (a < offset_ && b < offset_) ? -2 : 0;
  int i = a - offset_, j = b - offset_;
  return (i < l_) != (j < l_) && i % l_ == j % l_ ? 1 : 0;
}

std::string OrthogonalSpace::pair_label(std::size_t k) const {
  return "[" + vector_label(pairs_[k].first) + "," + vector_label(pairs_[k].second) + "]";
}

bool OrthogonalSpace::is_cartan(std::size_t k) const {
  auto [a, b] = pairs_[k];
  return a >= offset_ && a - offset_ < l_ && b == a + l_;
}

std::vector<std::size_t> OrthogonalSpace::cartan_indices() const {
  std::vector<std::size_t> out;
  for (int i = 1; i <= l_; ++i) out.push_back(pair_index(v(i), f(i)));
  return out;
}

std::vector<IntTerm> OrthogonalSpace::natural_action(std::size_t k, int w) const {
  auto [a, b] = pairs_[k];
  std::vector<IntTerm> out;
  add_term(out, a, 2 * polar(b, w));
  add_term(out, b, -2 * polar(a, w));
  return finish(std::move(out));
}

std::vector<IntTerm> OrthogonalSpace::so_bracket(std::size_t a, std::size_t b) const {
  auto [w3, w4] = pairs_[b];
  std::vector<IntTerm> out;
  auto accumulate = [&](const std::vector<IntTerm>& image, int other, bool image_first) {
    for (const auto& t : image) {
      int x = static_cast<int>(t.index), y = other;
      int c = t.coeff;
      if (!image_first) std::swap(x, y);
      if (x == y) continue;
      if (x > y) {
        std::swap(x, y);
        c = -c;
      }
      add_term(out, static_cast<std::uint32_t>(pair_index(x, y)), c);
    }
  };
  accumulate(natural_action(a, w3), w4, true);
  accumulate(natural_action(a, w4), w3, false);
  return finish(std::move(out));
}

std::vector<IntTerm> OrthogonalSpace::wedge_pair(std::span<const int> x, std::span<const int> y) const {
  std::vector<IntTerm> out;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      add_term(out, static_cast<std::uint32_t>(pair_index(i, j)), x[i] * y[j] - x[j] * y[i]);
  return finish(std::move(out));
}

SoBasis so_basis(int l, Kind kind) {
  OrthogonalSpace space(l, kind);
  SoBasis b;
  for (std::size_t k = 0; k < space.pair_count(); ++k) {
    b.labels.push_back(space.pair_label(k));
    b.cartan.push_back(space.is_cartan(k));
  }
  return b;
}

Matrix natural_matrix(const OrthogonalSpace& space, const SparseVec& x, FieldSpec f) {
  Matrix m(f, space.dim(), space.dim());
  for (const auto& e : x)
    for (std::size_t w = 0; w < space.dim(); ++w)
      for (const auto& t : space.natural_action(e.index, static_cast<int>(w)))
        m(t.index, w).add_product(e.value, embed_integer(t.coeff, f));
  return m;
}

Scalar trace_form(const OrthogonalSpace& space, const SparseVec& x, const SparseVec& y, FieldSpec f) {
  auto prod = natural_matrix(space, x, f) * natural_matrix(space, y, f);
  Scalar tr = Scalar::zero(f);
  for (std::size_t i = 0; i < space.dim(); ++i) tr += prod(i, i);
  return tr / embed_integer(2, f);
}

int trace_form_closed(const OrthogonalSpace& space, std::size_t a, std::size_t b) {
  auto [w1, w2] = space.pair(a);
  auto [w3, w4] = space.pair(b);
  return 4 * (space.polar(w1, w4) * space.polar(w2, w3) - space.polar(w1, w3) * space.polar(w2, w4));
}

Matrix gram_matrix(const OrthogonalSpace& space, FieldSpec f) {
  std::size_t n = space.pair_count(), d = space.dim();
  // Natural matrices are sparse with integer entries: tabulate them once as (row, col, coeff).
  std::vector<std::vector<std::map<int, int>>> cols(n, std::vector<std::map<int, int>>(d));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t w = 0; w < d; ++w)
      for (const auto& t : space.natural_action(k, static_cast<int>(w))) cols[k][w][t.index] = t.coeff;
  Matrix g(f, n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      long tr = 0;
      for (std::size_t j = 0; j < d; ++j)
        for (auto [i, c] : cols[b][j]) {
          auto it = cols[a][i].find(static_cast<int>(j));
          if (it != cols[a][i].end()) tr += static_cast<long>(it->second) * c;
        }
      if (tr % 2 != 0) throw std::logic_error("odd trace of integral so matrices");
      g(a, b) = embed_integer(tr / 2, f);
    }
  if (rank(g) != n) throw DegenerateForm("trace form is degenerate over " + f.name());
  return g;
}

SparseVec so_bracket(const OrthogonalSpace& space, const SparseVec& x, const SparseVec& y, FieldSpec f) {
  Accumulator acc(f, space.pair_count());
  for (const auto& a : x)
    for (const auto& b : y) {
      Scalar c = a.value * b.value;
      for (const auto& t : space.so_bracket(a.index, b.index)) acc.add_product(t.index, c, embed_integer(t.coeff, f));
    }
  return acc.take();
}

bool lambda_basis(const OrthogonalSpace& space, int w, Mask m, Mask& out, int& sign) {
  int l = space.l();
  int offset = space.kind() == Kind::B ? 1 : 0;
  int i = w - offset;
  if (i < 0) throw std::invalid_argument("Λ is defined on V ⊕ V* only");
  bool is_v = i < l;
  Mask bit = Mask{1} << (i % l);
  if (is_v == static_cast<bool>(m & bit)) return false;
  sign = parity_sign(m & (bit - 1));
  out = m ^ bit;
  return true;
}

Matrix lambda_op(int l, std::span<const Scalar> v_coeffs, std::span<const Scalar> f_coeffs) {
  if (v_coeffs.size() != static_cast<std::size_t>(l) || f_coeffs.size() != static_cast<std::size_t>(l))
    throw std::invalid_argument("lambda_op expects l coordinates for V and for V*");
  FieldSpec f = v_coeffs.empty() ? kRationals : v_coeffs[0].field();
  OrthogonalSpace space(l, Kind::D);
  std::size_t n = std::size_t{1} << l;
  Matrix m(f, n, n);
  for (int i = 1; i <= l; ++i)
    for (Mask s = 0; s < n; ++s) {
      Mask out;
      int sign;
      if (lambda_basis(space, space.v(i), s, out, sign)) m(out, s) += sign > 0 ? v_coeffs[i - 1] : -v_coeffs[i - 1];
      if (lambda_basis(space, space.f(i), s, out, sign)) m(out, s) += sign > 0 ? f_coeffs[i - 1] : -f_coeffs[i - 1];
    }
  return m;
}

std::vector<IntTerm> rho_on_mask(const OrthogonalSpace& space, std::size_t k, Mask m) {
  auto [a, b] = space.pair(k);
  std::vector<IntTerm> out;
  Mask r1, r2;
  int s1, s2;
  if (space.kind() == Kind::B && a == space.u()) {
    if (lambda_basis(space, b, m, r1, s1)) add_term(out, r1, 2 * s1);
    return finish(std::move(out));
  }
  if (lambda_basis(space, b, m, r1, s1) && lambda_basis(space, a, r1, r2, s2)) add_term(out, r2, s1 * s2);
  if (lambda_basis(space, a, m, r1, s1) && lambda_basis(space, b, r1, r2, s2)) add_term(out, r2, -s1 * s2);
  return finish(std::move(out));
}

SpinModule::SpinModule(const OrthogonalSpace& space) : space_(space) {
  Mask n = Mask{1} << space.l();
  index_.assign(n, -1);
  for (Mask m = 0; m < n; ++m)
    if (space.kind() == Kind::B || degree(m) % 2 == 0) {
      index_[m] = static_cast<std::int64_t>(masks_.size());
      masks_.push_back(m);
    }
  offsets_.push_back(0);
  for (std::size_t k = 0; k < space.pair_count(); ++k)
    for (Mask m : masks_) {
      for (auto t : rho_on_mask(space, k, m)) {
        if (index_[t.index] < 0) throw std::logic_error("ρ does not preserve the half-spin module");
        terms_.push_back({static_cast<std::uint32_t>(index_[t.index]), t.coeff});
      }
      offsets_.push_back(static_cast<std::uint32_t>(terms_.size()));
    }
}

std::int64_t SpinModule::index(Mask m) const { return m < index_.size() ? index_[m] : -1; }

std::span<const IntTerm> SpinModule::action(std::size_t k, std::size_t i) const {
  std::size_t slot = k * masks_.size() + i;
  return {terms_.data() + offsets_[slot], terms_.data() + offsets_[slot + 1]};
}

Matrix SpinModule::matrix(std::size_t k, FieldSpec f) const {
  Matrix m(f, dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (auto t : action(k, i)) m(t.index, i) = embed_integer(t.coeff, f);
  return m;
}

Matrix SpinModule::matrix(const SparseVec& x, FieldSpec f) const {
  Matrix m(f, dim(), dim());
  for (const auto& e : x)
    for (std::size_t i = 0; i < dim(); ++i)
      for (auto t : action(e.index, i)) m(t.index, i).add_product(e.value, embed_integer(t.coeff, f));
  return m;
}

}  // namespace spinlab
