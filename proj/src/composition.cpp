#include "spinlab/composition.hpp"

#include <functional>
#include <optional>
#include <random>
#include <stdexcept>

namespace spinlab {

using Element = CompositionAlgebra::Element;

std::string composition_name(CompositionKind k) {
  switch (k) {
    case CompositionKind::unit:
      return "unit";
    case CompositionKind::binarion:
      return "binarion";
    case CompositionKind::quaternion:
      return "quaternion";
    case CompositionKind::octonion:
      return "octonion";
  }
  throw std::logic_error("unknown composition kind");
}

CompositionKind parse_composition(const std::string& s) {
  for (auto k : {CompositionKind::unit, CompositionKind::binarion, CompositionKind::quaternion,
                 CompositionKind::octonion})
    if (composition_name(k) == s) return k;
  throw std::invalid_argument("unknown composition algebra: " + s);
}

std::uint64_t IntegerTable::checksum() const {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&](std::int64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= static_cast<std::uint64_t>(v >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::int64_t>(dim));
  for (const auto& t : product) {
    mix(t.index);
    mix(t.coeff);
  }
  for (int n : norm) mix(n);
  return h;
}

IntegerTable cayley_dickson_table(int doublings) {
  IntegerTable t;
  t.dim = 1;
  t.product = {{0, 1}};
  t.norm = {1};
  for (int level = 0; level < doublings; ++level) {
    std::size_t n = t.dim, m = 2 * n;
    auto conj = [](std::size_t i) { return i == 0 ? 1 : -1; };
    auto at = [&](std::size_t i, std::size_t j) { return t.product[i * n + j]; };
    std::vector<IntTerm> next(m * m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto ij = at(i, j), ji = at(j, i);
        auto idx = [&](std::uint32_t k, std::size_t shift) { return static_cast<std::uint32_t>(k + shift); };
        next[i * m + j] = ij;
        next[i * m + n + j] = {idx(ji.index, n), ji.coeff};
        next[(n + i) * m + j] = {idx(ij.index, n), ij.coeff * conj(j)};
        next[(n + i) * m + n + j] = {ji.index, ji.coeff * conj(j)};
      }
    std::vector<int> norm(m);
    for (std::size_t i = 0; i < n; ++i) {
      norm[i] = t.norm[i];
      norm[n + i] = -t.norm[i];
    }
    t.dim = m;
    t.product = std::move(next);
    t.norm = std::move(norm);
  }
  return t;
}

namespace {

int doublings_for(CompositionKind k) {
  switch (k) {
    case CompositionKind::unit:
      return 0;
    case CompositionKind::binarion:
      return 1;
    case CompositionKind::quaternion:
      return 2;
    case CompositionKind::octonion:
      return 3;
  }
  throw std::logic_error("unknown composition kind");
}

Matrix operator_from(std::size_t n, FieldSpec f, const std::function<Element(std::size_t)>& column) {
  Matrix m(f, n, n);
  for (std::size_t c = 0; c < n; ++c) {
    auto v = column(c);
    for (std::size_t r = 0; r < n; ++r) m(r, c) = v[r];
  }
  return m;
}

}  // namespace

Element operator+(const Element& a, const Element& b) {
  Element r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Element operator-(const Element& a, const Element& b) {
  Element r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Element scale(const Scalar& c, const Element& a) {
  Element r = a;
  for (auto& x : r) x *= c;
  return r;
}

CompositionAlgebra::CompositionAlgebra(CompositionKind kind, FieldSpec f)
    : kind_(kind), field_(f), table_(cayley_dickson_table(doublings_for(kind))) {}

std::string CompositionAlgebra::label(std::size_t i) const { return i == 0 ? "1" : "e" + std::to_string(i); }

Element CompositionAlgebra::zero() const { return Element(dim(), Scalar::zero(field_)); }

Element CompositionAlgebra::basis(std::size_t i) const {
  auto e = zero();
  e.at(i) = Scalar::one(field_);
  return e;
}

Element CompositionAlgebra::multiply(const Element& a, const Element& b) const {
  auto r = zero();
  std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      const auto& t = table_.product[i * n + j];
      r[t.index].add_product(a[i] * b[j], embed_integer(t.coeff, field_));
    }
  }
  return r;
}

Element CompositionAlgebra::commutator(const Element& a, const Element& b) const {
  return multiply(a, b) - multiply(b, a);
}

Element CompositionAlgebra::associator(const Element& a, const Element& b, const Element& c) const {
  return multiply(multiply(a, b), c) - multiply(a, multiply(b, c));
}

Element CompositionAlgebra::conjugate(const Element& a) const {
  auto r = a;
  for (std::size_t i = 1; i < r.size(); ++i) r[i] = -r[i];
  return r;
}

Scalar CompositionAlgebra::norm(const Element& a) const {
  auto s = Scalar::zero(field_);
  for (std::size_t i = 0; i < dim(); ++i) s.add_product(a[i] * a[i], embed_integer(table_.norm[i], field_));
  return s;
}

Scalar CompositionAlgebra::polar(const Element& a, const Element& b) const {
  auto s = Scalar::zero(field_);
  for (std::size_t i = 0; i < dim(); ++i) s.add_product(a[i] * b[i], embed_integer(2 * table_.norm[i], field_));
  return s;
}

Matrix CompositionAlgebra::polar_gram() const {
  Matrix g(field_, dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) g(i, i) = embed_integer(2 * table_.norm[i], field_);
  return g;
}

Matrix CompositionAlgebra::left(const Element& a) const {
  return operator_from(dim(), field_, [&](std::size_t c) { return multiply(a, basis(c)); });
}

Matrix CompositionAlgebra::right(const Element& a) const {
  return operator_from(dim(), field_, [&](std::size_t c) { return multiply(basis(c), a); });
}

Matrix CompositionAlgebra::ad(const Element& a) const { return left(a) - right(a); }

Matrix CompositionAlgebra::inner_derivation(const Element& a, const Element& b) const {
  auto ab = commutator(a, b);
  auto three = embed_integer(3, field_);
  return operator_from(dim(), field_, [&](std::size_t c) {
    auto x = basis(c);
    return commutator(ab, x) - scale(three, associator(a, b, x));
  });
}

std::vector<Matrix> derivation_algebra(const CompositionAlgebra& c) {
  std::size_t n = c.dim();
  FieldSpec f = c.field();
  const auto& tab = c.table().product;
  // Unknown x_{r,s} = D(r,s) sits at r*n + s, matching Matrix::flatten.
  auto var = [&](std::size_t r, std::size_t s) { return static_cast<std::uint32_t>(r * n + s); };
  RowEchelon eq(f, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Accumulator acc(f, n * n);
      for (std::size_t k = 0; k < n; ++k) {
        acc.clear();
        const auto& ij = tab[i * n + j];
        acc.add(var(k, ij.index), embed_integer(ij.coeff, f));
        for (std::size_t r = 0; r < n; ++r) {
          const auto& rj = tab[r * n + j];
          if (rj.index == k) acc.add(var(r, i), embed_integer(-rj.coeff, f));
          const auto& ir = tab[i * n + r];
          if (ir.index == k) acc.add(var(r, j), embed_integer(-ir.coeff, f));
        }
        eq.insert(acc.take());
      }
    }
  RowEchelon span(f, n * n);
  for (const auto& v : eq.nullspace()) span.insert(v);
  std::vector<Matrix> out;
  for (const auto& v : span.reduced_basis()) out.push_back(Matrix::unflatten(v, f, n, n));
  return out;
}

std::vector<Matrix> inner_derivation_span(const CompositionAlgebra& c) {
  std::size_t n = c.dim();
  RowEchelon span(c.field(), n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) span.insert(c.inner_derivation(c.basis(a), c.basis(b)).flatten());
  std::vector<Matrix> out;
  for (const auto& v : span.reduced_basis()) out.push_back(Matrix::unflatten(v, c.field(), n, n));
  return out;
}

CompositionIdentities check_composition_identities(const CompositionAlgebra& c, std::size_t random_triples,
                                                   std::uint64_t seed) {
  CompositionIdentities r;
  std::size_t n = c.dim();
  FieldSpec f = c.field();
  auto zero = c.zero();
  auto fail = [&](const std::string& what) {
    if (r.failure.empty()) r.failure = what;
    return false;
  };
  std::vector<Element> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(c.basis(i));

  r.unit = true;
  for (std::size_t i = 0; i < n; ++i)
    if (c.multiply(c.unit(), e[i]) != e[i] || c.multiply(e[i], c.unit()) != e[i])
      r.unit = fail("unit fails on " + c.label(i));

  // n(ab, cd) + n(ad, cb) = n(a,c) n(b,d) is the full linearization of n(ab) = n(a)n(b).
  r.composition_law = true;
  for (std::size_t a = 0; a < n && r.composition_law; ++a)
    for (std::size_t b = 0; b < n && r.composition_law; ++b) {
      if (c.norm(c.multiply(e[a], e[b])) != c.norm(e[a]) * c.norm(e[b]))
        r.composition_law = fail("n(ab) = n(a)n(b) fails on " + c.label(a) + ", " + c.label(b));
      for (std::size_t x = 0; x < n && r.composition_law; ++x)
        for (std::size_t d = 0; d < n && r.composition_law; ++d) {
          auto lhs = c.polar(c.multiply(e[a], e[b]), c.multiply(e[x], e[d])) +
                     c.polar(c.multiply(e[a], e[d]), c.multiply(e[x], e[b]));
          if (lhs != c.polar(e[a], e[x]) * c.polar(e[b], e[d]))
            r.composition_law = fail("linearized composition law fails");
        }
    }

  r.degree_two = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      // a ∘ b + b ∘ a − n(1,a)b − n(1,b)a + n(a,b)1 = 0, the linearization of a² − n(1,a)a + n(a)1 = 0
      auto v = c.multiply(e[a], e[b]) + c.multiply(e[b], e[a]) - scale(c.polar(c.unit(), e[a]), e[b]) -
               scale(c.polar(c.unit(), e[b]), e[a]) + scale(c.polar(e[a], e[b]), c.unit());
      if (v != zero) r.degree_two = fail("degree-two identity fails on " + c.label(a) + ", " + c.label(b));
    }

  r.alternative = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t x = 0; x < n; ++x) {
        auto v = c.associator(e[a], e[b], e[x]);
        if (v != scale(embed_integer(-1, f), c.associator(e[b], e[a], e[x])) ||
            v != scale(embed_integer(-1, f), c.associator(e[a], e[x], e[b])))
          r.alternative = fail("associator not alternating on basis");
      }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  auto random_element = [&] {
    auto v = c.zero();
    for (auto& x : v) x = embed_integer(coeff(rng), f);
    return v;
  };
  for (std::size_t t = 0; t < random_triples && r.alternative; ++t) {
    auto a = random_element(), b = random_element();
    if (c.associator(a, a, b) != zero || c.associator(b, a, a) != zero)
      r.alternative = fail("random associator with a repeated argument is nonzero");
  }

  r.anticommutator = true;
  for (std::size_t a = 1; a < n; ++a)
    for (std::size_t b = 1; b < n; ++b) {
      auto v = c.multiply(e[a], e[b]) + c.multiply(e[b], e[a]) + scale(c.polar(e[a], e[b]), c.unit());
      if (v != zero) r.anticommutator = fail("ab + ba = -n(a,b)1 fails on " + c.label(a) + ", " + c.label(b));
    }
  return r;
}

namespace {

// Restriction of an operator on C to C⁰, or nullopt when it does not preserve C⁰ or kill 1.
std::optional<Matrix> restrict_to_trace_zero(const Matrix& m) {
  std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    if (!m(i, 0).is_zero()) return std::nullopt;
  for (std::size_t j = 1; j < n; ++j)
    if (!m(0, j).is_zero()) return std::nullopt;
  Matrix r(m.field(), n - 1, n - 1);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) r(i - 1, j - 1) = m(i, j);
  return r;
}

}  // namespace

LemmaCReport check_lemma_C(const CompositionAlgebra& c) {
  LemmaCReport r;
  std::size_t n = c.dim();
  FieldSpec f = c.field();
  auto fail = [&](const std::string& what) {
    if (r.failure.empty()) r.failure = what;
    return false;
  };
  if (n < 2) throw std::invalid_argument("Lemma C needs a nontrivial C0");

  Matrix g0(f, n - 1, n - 1);
  for (std::size_t i = 1; i < n; ++i) g0(i - 1, i - 1) = c.polar_gram()(i, i);
  auto in_so = [&](const Matrix& x) { return (x.transpose() * g0 + g0 * x).is_zero(); };

  r.part_i = true;
  RowEchelon der_span(f, (n - 1) * (n - 1)), ad_span(f, (n - 1) * (n - 1)), both(f, (n - 1) * (n - 1));
  for (const auto& d : derivation_algebra(c)) {
    auto rd = restrict_to_trace_zero(d);
    if (!rd || !in_so(*rd)) {
      r.part_i = fail("a derivation does not restrict into so(C0,n)");
      continue;
    }
    der_span.insert(rd->flatten());
    both.insert(rd->flatten());
  }
  for (std::size_t a = 0; a < n; ++a) {
    auto ra = restrict_to_trace_zero(c.ad(c.basis(a)));
    if (!ra || !in_so(*ra)) {
      r.part_i = fail("ad does not restrict into so(C0,n)");
      continue;
    }
    ad_span.insert(ra->flatten());
    both.insert(ra->flatten());
  }
  // so(C⁰,n): X with XᵗG + GX = 0 on C⁰.
  std::size_t m = n - 1;
  RowEchelon so_eq(f, m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Accumulator acc(f, m * m);
      acc.add(static_cast<std::uint32_t>(i * m + j), g0(i, i));
      acc.add(static_cast<std::uint32_t>(j * m + i), g0(j, j));
      so_eq.insert(acc.take());
    }
  r.der_dim = der_span.rank();
  r.ad_dim = ad_span.rank();
  r.so_dim = m * m - so_eq.rank();
  if (both.rank() != r.der_dim + r.ad_dim) r.part_i = fail("der C and ad_C intersect");
  if (both.rank() != r.so_dim) r.part_i = fail("der C + ad_C is not all of so(C0,n)");

  r.part_ii = true;
  auto two = embed_integer(2, f), three = embed_integer(3, f);
  auto half = Scalar::from_fraction(1, 2, f);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto ea = c.basis(a), eb = c.basis(b);
      auto lhs = commutator(c.ad(ea), c.ad(eb));
      auto rhs = c.inner_derivation(ea, eb).scaled(two) - c.ad(c.commutator(ea, eb));
      if (!(lhs == rhs)) r.part_ii = fail("[ad_a, ad_b] = 2D_{a,b} - ad_[a,b] fails on " + c.label(a) + ", " + c.label(b));
    }

  r.part_iii = true;
  for (std::size_t a = 1; a < n; ++a)
    for (std::size_t b = 1; b < n; ++b) {
      auto ea = c.basis(a), eb = c.basis(b);
      auto lhs = c.inner_derivation(ea, eb) + c.ad(c.commutator(ea, eb)).scaled(half);
      for (std::size_t x = 1; x < n; ++x) {
        auto ex = c.basis(x);
        auto rhs = scale(three, scale(c.polar(ea, ex), eb) - scale(c.polar(eb, ex), ea));
        if (lhs.apply(ex) != rhs) r.part_iii = fail("part (iii) fails on " + c.label(a) + ", " + c.label(b));
      }
    }
  return r;
}

}  // namespace spinlab
