#include "spinlab/exterior.hpp"

#include <stdexcept>

namespace spinlab {

int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (Mask rest = b; rest; rest &= rest - 1) {
    Mask low = rest & (~rest + 1);
    inversions += std::popcount(a & ~((low << 1) - 1));
  }
  return (inversions & 1) ? -1 : 1;
}

std::string monomial_string(Mask m) {
  std::string s = "[";
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if (!(m >> i & 1)) continue;
    if (!first) s += ",";
    s += std::to_string(i + 1);
    first = false;
  }
  return s + "]";
}

std::string monomial_label(Mask m) {
  if (m == 0) return "1";
  std::string s;
  for (int i = 0; i < 32; ++i)
    if (m >> i & 1) s += "v" + std::to_string(i + 1);
  return s;
}

Multivector::Multivector(int l, FieldSpec f) : l_(l), field_(f) {
  if (l < 0 || l > 30) throw std::invalid_argument("exterior algebra rank out of range");
}

Multivector Multivector::monomial(int l, Mask m, Scalar c) {
  if (m & ~top_mask(l)) throw std::invalid_argument("monomial outside the generator range");
  FieldSpec f = c.field();
  return Multivector(l, f, SparseVec::single(m, std::move(c)));
}

void Multivector::check_compatible(const Multivector& o) const {
  if (l_ != o.l_) throw std::invalid_argument("multivectors over different exterior algebras");
  if (!(field_ == o.field_)) throw FieldMismatch("multivectors over different fields");
}

Multivector Multivector::even_part() const {
  SparseVec out;
  for (const auto& e : coeffs_)
    if (degree(e.index) % 2 == 0) out.push_back(e.index, e.value);
  return Multivector(l_, field_, std::move(out));
}

Multivector Multivector::odd_part() const {
  SparseVec out;
  for (const auto& e : coeffs_)
    if (degree(e.index) % 2 == 1) out.push_back(e.index, e.value);
  return Multivector(l_, field_, std::move(out));
}

Multivector Multivector::operator+(const Multivector& o) const {
  check_compatible(o);
  return Multivector(l_, field_, coeffs_ + o.coeffs_);
}

Multivector Multivector::operator-(const Multivector& o) const {
  check_compatible(o);
  return Multivector(l_, field_, coeffs_ - o.coeffs_);
}

Multivector Multivector::scaled(const Scalar& c) const { return Multivector(l_, field_, coeffs_.scaled(c)); }

bool operator==(const Multivector& a, const Multivector& b) {
  a.check_compatible(b);
  return a.coeffs_ == b.coeffs_;
}

std::string Multivector::to_string() const {
  std::string s = "[";
  bool first = true;
  for (const auto& e : coeffs_) {
    if (!first) s += ",";
    s += "[" + monomial_string(e.index) + ",\"" + e.value.to_string() + "\"]";
    first = false;
  }
  return s + "]";
}

Multivector wedge(const Multivector& s, const Multivector& t) {
  s.check_compatible(t);
  Accumulator acc(s.field_, std::size_t{1} << s.l_);
  auto one = Scalar::one(s.field_);
  for (const auto& a : s.coeffs_)
    for (const auto& b : t.coeffs_) {
      int sign = wedge_sign(a.index, b.index);
      if (sign == 0) continue;
      acc.add_product(a.index | b.index, a.value, sign > 0 ? b.value : -b.value);
    }
  return Multivector(s.l_, s.field_, acc.take());
}

namespace {

template <int (*Sign)(int)>
SparseVec apply_degree_sign(const SparseVec& c) {
  SparseVec out;
  for (const auto& e : c) out.push_back(e.index, Sign(degree(e.index)) > 0 ? e.value : -e.value);
  return out;
}

int bar_fn(int r) { return bar_sign(r); }
int hat_fn(int r) { return hat_sign(r); }

}  // namespace

Multivector bar_involution(const Multivector& s) {
  return Multivector(s.l_, s.field_, apply_degree_sign<bar_fn>(s.coeffs_));
}

Multivector hat_involution(const Multivector& s) {
  return Multivector(s.l_, s.field_, apply_degree_sign<hat_fn>(s.coeffs_));
}

Scalar phi_functional(const Multivector& s) { return s.coefficient(top_mask(s.l())); }

Scalar form_b(const Multivector& s, const Multivector& t) { return phi_functional(wedge(bar_involution(s), t)); }

Scalar form_bhat(const Multivector& s, const Multivector& t) { return phi_functional(wedge(hat_involution(s), t)); }

int form_on_monomials(int l, Mask s, Mask t, bool hat) {
  if ((s | t) != top_mask(l) || (s & t)) return 0;
  int r = degree(s);
  return (hat ? hat_sign(r) : bar_sign(r)) * wedge_sign(s, t);
}

Matrix form_gram(int l, FieldSpec f, bool hat) {
  std::size_t n = std::size_t{1} << l;
  Matrix g(f, n, n);
  for (Mask s = 0; s < n; ++s) {
    Mask t = top_mask(l) & ~s;
    g(s, t) = embed_integer(form_on_monomials(l, s, t, hat), f);
  }
  return g;
}

}  // namespace spinlab
