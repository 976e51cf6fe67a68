#include "spinlab/kac_jordan.hpp"

#include <functional>
#include <random>
#include <stdexcept>

namespace spinlab {

GradedAlgebra::GradedAlgebra(std::string name, FieldSpec f, std::vector<std::string> labels, std::vector<int> parity,
                             std::vector<SparseVec> products)
    : name_(std::move(name)),
      field_(f),
      labels_(std::move(labels)),
      parity_(std::move(parity)),
      products_(std::move(products)) {
  if (parity_.size() != labels_.size() || products_.size() != dim() * dim())
    throw std::invalid_argument("graded algebra table has the wrong shape");
}

SparseVec GradedAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
  Accumulator acc(field_, dim());
  for (const auto& x : a)
    for (const auto& y : b) acc.add_scaled(product(x.index, y.index), x.value * y.value);
  return acc.take();
}

Matrix GradedAlgebra::left(std::size_t i) const {
  Matrix m(field_, dim(), dim());
  for (std::size_t c = 0; c < dim(); ++c)
    for (const auto& e : product(i, c)) m(e.index, c) = e.value;
  return m;
}

int GradedAlgebra::operator_parity(const Matrix& m) const {
  bool even = false, odd = false;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) (parity_[r] == parity_[c] ? even : odd) = true;
  if (even && odd) return -1;
  return odd ? 1 : 0;
}

Matrix supercommutator(const Matrix& a, int pa, const Matrix& b, int pb) {
  auto ba = b * a;
  return pa && pb ? a * b + ba : a * b - ba;
}

GradedAlgebra kaplansky(FieldSpec f) {
  auto half = Scalar::from_fraction(1, 2, f);
  auto one = Scalar::one(f);
  std::vector<SparseVec> t(9);
  t[0 * 3 + 0] = SparseVec::single(0, one);
  t[0 * 3 + 1] = t[1 * 3 + 0] = SparseVec::single(1, half);
  t[0 * 3 + 2] = t[2 * 3 + 0] = SparseVec::single(2, half);
  t[1 * 3 + 2] = SparseVec::single(0, one);
  t[2 * 3 + 1] = SparseVec::single(0, -one);
  return GradedAlgebra("K", f, {"e", "x", "y"}, {0, 1, 1}, std::move(t));
}

Scalar kaplansky_form(std::size_t a, std::size_t b, FieldSpec f) {
  if (a == 0 && b == 0) return Scalar::from_fraction(1, 2, f);
  if (a == 1 && b == 2) return Scalar::one(f);
  if (a == 2 && b == 1) return -Scalar::one(f);
  return Scalar::zero(f);
}

Matrix kaplansky_tensor_left(const Matrix& phi, FieldSpec f) {
  Matrix m(f, 9, 9);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t r = 0; r < 3; ++r) m(3 * r + b, 3 * a + b) = phi(r, a);
  return m;
}

Matrix kaplansky_tensor_right(const Matrix& phi, int phi_parity, FieldSpec f) {
  Matrix m(f, 9, 9);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t r = 0; r < 3; ++r) m(3 * a + r, 3 * a + b) = phi_parity && a != 0 ? -phi(r, b) : phi(r, b);
  return m;
}

std::size_t kac_index(std::size_t a, std::size_t b) { return 1 + 3 * a + b; }

GradedAlgebra kac(FieldSpec f) {
  auto k = kaplansky(f);
  std::vector<std::string> labels{"1"};
  std::vector<int> parity{0};
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      labels.push_back(k.label(a) + "⊗" + k.label(b));
      parity.push_back((k.parity(a) + k.parity(b)) % 2);
    }
  std::size_t n = labels.size();
  std::vector<SparseVec> t(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = SparseVec::unit(static_cast<std::uint32_t>(i), f);
    t[i * n] = SparseVec::unit(static_cast<std::uint32_t>(i), f);
  }
  auto three_quarters = Scalar::from_fraction(3, 4, f);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t d = 0; d < 3; ++d) {
          Accumulator acc(f, n);
          for (const auto& ac : k.product(a, c))
            for (const auto& bd : k.product(b, d))
              acc.add(static_cast<std::uint32_t>(kac_index(ac.index, bd.index)), ac.value * bd.value);
          acc.add(0, -three_quarters * kaplansky_form(a, c, f) * kaplansky_form(b, d, f));
          auto v = acc.take();
          if (k.parity(b) && k.parity(c)) v = -v;
          t[kac_index(a, b) * n + kac_index(c, d)] = std::move(v);
        }
  return GradedAlgebra("J", f, std::move(labels), std::move(parity), std::move(t));
}

Scalar normalized_trace(const SparseVec& p, FieldSpec f) { return p.at(0, f); }

Matrix kac_derivation(const GradedAlgebra& j, std::size_t p, std::size_t q) {
  auto full = supercommutator(j.left(p), j.parity(p), j.left(q), j.parity(q));
  Matrix r(j.field(), j.dim() - 1, j.dim() - 1);
  for (std::size_t a = 1; a < j.dim(); ++a)
    for (std::size_t b = 1; b < j.dim(); ++b) r(a - 1, b - 1) = full(a, b);
  return r;
}

std::size_t KacDerivations::even_count() const {
  std::size_t n = 0;
  for (int p : parity) n += p == 0;
  return n;
}

SparseVec KacDerivations::coordinates(const Matrix& m) const {
  auto c = solver->coordinates(m.flatten());
  if (!c) throw std::invalid_argument("operator is not an inner derivation");
  return *c;
}

KacDerivations kac_inner_derivations(FieldSpec f) {
  auto j = kac(f);
  std::size_t n = j.dim() - 1;
  RowEchelon span(f, n * n);
  for (std::size_t p = 1; p < j.dim(); ++p)
    for (std::size_t q = p; q < j.dim(); ++q) span.insert(kac_derivation(j, p, q).flatten());
  KacDerivations d;
  std::vector<SparseVec> flat = span.reduced_basis();
  for (const auto& v : flat) {
    auto m = Matrix::unflatten(v, f, n, n);
    bool odd = false;
    for (const auto& e : v) odd |= j.parity(e.index / n + 1) != j.parity(e.index % n + 1);
    d.basis.push_back(std::move(m));
    d.parity.push_back(odd ? 1 : 0);
  }
  d.solver = std::make_shared<const CoordinateSolver>(f, n * n, flat);
  return d;
}

GrassmannEnvelope::GrassmannEnvelope(const GradedAlgebra& j, int m) : j_(j), m_(m) {
  if (m < 0 || m > 16) throw std::invalid_argument("unsupported number of Grassmann generators");
}

bool GrassmannEnvelope::admissible(const SparseVec& x) const {
  for (const auto& e : x)
    if (degree(monomial_of(e.index)) % 2 != j_.parity(basis_of(e.index))) return false;
  return true;
}

SparseVec GrassmannEnvelope::unit() const { return SparseVec::unit(index(0, 0), j_.field()); }

SparseVec GrassmannEnvelope::multiply(const SparseVec& a, const SparseVec& b) const {
  Accumulator acc(j_.field(), (std::size_t{1} << m_) * j_.dim());
  for (const auto& x : a) {
    Mask xa = monomial_of(x.index);
    std::size_t p = basis_of(x.index);
    for (const auto& y : b) {
      Mask xb = monomial_of(y.index);
      int sign = wedge_sign(xa, xb);
      if (sign == 0) continue;
      std::size_t q = basis_of(y.index);
      if (j_.parity(p) && degree(xb) % 2) sign = -sign;
      auto c = x.value * y.value;
      if (sign < 0) c = -c;
      for (const auto& e : j_.product(p, q)) acc.add_product(index(xa | xb, e.index), c, e.value);
    }
  }
  return acc.take();
}

SparseVec GrassmannEnvelope::trace(const SparseVec& x) const {
  SparseVec r;
  for (const auto& e : x)
    if (basis_of(e.index) == 0) r.push_back(e.index, e.value);
  return r;
}

SparseVec GrassmannEnvelope::ch3(const SparseVec& x) const {
  FieldSpec f = j_.field();
  auto t1 = trace(x);
  auto x2 = multiply(x, x);
  auto x3 = multiply(x2, x);
  auto t2 = trace(x2);
  auto t3 = trace(x3);
  auto t1t1 = multiply(t1, t1);
  auto nine_halves = Scalar::from_fraction(9, 2, f);
  auto r = x3 - multiply(t1, x2).scaled(embed_integer(3, f));
  r = r + multiply(t1t1.scaled(nine_halves) - t2.scaled(Scalar::from_fraction(3, 2, f)), x);
  r = r - (t3 - multiply(t2, t1).scaled(nine_halves) + multiply(t1t1, t1).scaled(nine_halves));
  return r;
}

std::string GrassmannEnvelope::to_string(const SparseVec& x) const {
  std::string s = "[";
  bool first = true;
  for (const auto& e : x) {
    if (!first) s += ",";
    first = false;
    s += "[" + monomial_string(monomial_of(e.index)) + ",\"" + j_.label(basis_of(e.index)) + "\",\"" +
         e.value.to_string() + "\"]";
  }
  return s + "]";
}

std::string verdict_name(Ch3Verdict v) {
  switch (v) {
    case Ch3Verdict::pass:
      return "pass";
    case Ch3Verdict::witness:
      return "witness";
    case Ch3Verdict::inconclusive:
      return "inconclusive";
  }
  throw std::logic_error("unknown verdict");
}

namespace {

// Calls visit on nondecreasing sequences of length len over 0..options-1 until it returns true.
bool for_each_multiset(int len, int options, const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> seq(len, 0);
  while (true) {
    if (visit(seq)) return true;
    int i = len - 1;
    while (i >= 0 && seq[i] == options - 1) --i;
    if (i < 0) return false;
    int v = seq[i] + 1;
    for (int k = i; k < len; ++k) seq[k] = v;
  }
}

}  // namespace

Ch3ScanResult ch3_scan(FieldSpec f, const Ch3ScanOptions& opts) {
  auto j = kac(f);
  GrassmannEnvelope g(j, opts.m);
  Ch3ScanResult result;
  auto test = [&](const SparseVec& x) {
    ++result.evaluated;
    auto v = g.ch3(x);
    if (v.empty()) return false;
    result.verdict = Ch3Verdict::witness;
    result.x = g.to_string(x);
    result.value = g.to_string(v);
    return true;
  };

  std::vector<std::size_t> odd_basis, even_basis;
  for (std::size_t i = 0; i < j.dim(); ++i) (j.parity(i) ? odd_basis : even_basis).push_back(i);

  bool found = false;
  if (opts.strategy == ScanStrategy::elementary) {
    std::vector<Mask> even_monomials{0};
    for (int a = 0; a < opts.m; ++a)
      for (int b = a + 1; b < opts.m; ++b) even_monomials.push_back((Mask{1} << a) | (Mask{1} << b));
    std::vector<std::vector<std::size_t>> patterns{{}};
    for (std::size_t s = 0; s < even_monomials.size(); ++s) patterns.push_back({s});
    for (std::size_t s = 0; s < even_monomials.size(); ++s)
      for (std::size_t t = s + 1; t < even_monomials.size(); ++t) patterns.push_back({s, t});

    auto one = Scalar::one(f);
    for (const auto& pattern : patterns) {
      for (std::size_t b0 : even_basis) {
        if (pattern.empty() && b0 != even_basis.front()) break;
        SparseVec even;
        for (std::size_t s : pattern) even = even + SparseVec::single(g.index(even_monomials[s], b0), one);
        found = for_each_multiset(opts.m, static_cast<int>(odd_basis.size()) + 1, [&](const std::vector<int>& seq) {
          SparseVec x = even;
          for (int i = 0; i < opts.m; ++i)
            if (seq[i] > 0) x = x + SparseVec::single(g.index(Mask{1} << i, odd_basis[seq[i] - 1]), one);
          return test(x);
        });
        if (found) break;
      }
      if (found) break;
    }
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (std::size_t s = 0; s < opts.samples && !found; ++s) {
      SparseVec x;
      for (Mask xi = 0; xi < (Mask{1} << opts.m); ++xi)
        for (std::size_t b = 0; b < j.dim(); ++b)
          if (degree(xi) % 2 == j.parity(b)) {
            auto c = embed_integer(coeff(rng), f);
            if (!c.is_zero()) x.push_back(g.index(xi, b), c);
          }
      found = test(x);
    }
  }
  if (!found) result.verdict = f.characteristic() == 5 ? Ch3Verdict::pass : Ch3Verdict::inconclusive;
  return result;
}

JordanCheckResult jordan_envelope_check(const GradedAlgebra& j, int m, std::size_t samples, std::uint64_t seed) {
  GrassmannEnvelope g(j, m);
  FieldSpec f = j.field();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-2, 2);
  auto sample = [&] {
    SparseVec x;
    for (Mask xi = 0; xi < (Mask{1} << m); ++xi)
      for (std::size_t b = 0; b < j.dim(); ++b)
        if (degree(xi) % 2 == j.parity(b)) {
          auto c = embed_integer(coeff(rng), f);
          if (!c.is_zero()) x.push_back(g.index(xi, b), c);
        }
    return x;
  };
  JordanCheckResult r;
  for (std::size_t s = 0; s < samples; ++s) {
    auto x = sample(), y = sample();
    ++r.samples;
    if (!(g.multiply(x, y) == g.multiply(y, x))) {
      r.pass = false;
      r.witness = "xy != yx at x = " + g.to_string(x) + ", y = " + g.to_string(y);
      return r;
    }
    auto x2 = g.multiply(x, x);
    if (!(g.multiply(g.multiply(x2, y), x) == g.multiply(x2, g.multiply(y, x)))) {
      r.pass = false;
      r.witness = "(x^2 y)x != x^2(yx) at x = " + g.to_string(x) + ", y = " + g.to_string(y);
      return r;
    }
  }
  return r;
}

JordanCheckResult jordan_envelope_check(FieldSpec f, int m, std::size_t samples, std::uint64_t seed) {
  return jordan_envelope_check(kac(f), m, samples, seed);
}

}  // namespace spinlab
