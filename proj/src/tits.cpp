#include "spinlab/tits.hpp"

#include <random>

#include "spinlab/spin_construct.hpp"

namespace spinlab {

namespace {

enum class Block { der, middle, inder };

std::shared_ptr<const CoordinateSolver> solver_for(const std::vector<Matrix>& basis, FieldSpec f, std::size_t n) {
  std::vector<SparseVec> flat;
  for (const auto& m : basis) flat.push_back(m.flatten());
  return std::make_shared<const CoordinateSolver>(f, n * n, flat);
}

Matrix restrict_trace_zero(const Matrix& m) {
  std::size_t n = m.rows() - 1;
  Matrix r(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = m(i + 1, j + 1);
  return r;
}

// Kac index of u₁⊗u₂ for u ∈ {0: x, 1: y}.
std::size_t tensor_kac(std::size_t u1, std::size_t u2) { return kac_index(u1 + 1, u2 + 1); }

bool is_tensor_kac(std::size_t x) {
  std::size_t a = (x - 1) / 3, b = (x - 1) % 3;
  return a != 0 && b != 0;
}

}  // namespace

TitsAlgebra::TitsAlgebra(CompositionKind kind, FieldSpec f)
    : c_(kind, f), j_(kac(f)), der_(derivation_algebra(c_)), inder_(kac_inner_derivations(f)) {
  der_solver_ = solver_for(der_, f, c_.dim());
  std::vector<std::string> labels;
  std::vector<int> parity;
  for (std::size_t k = 0; k < der_.size(); ++k) {
    labels.push_back("D" + std::to_string(k + 1));
    parity.push_back(0);
  }
  for (std::size_t a = 1; a < c_.dim(); ++a)
    for (std::size_t x = 1; x < j_.dim(); ++x) {
      labels.push_back(c_.label(a) + "⊗" + j_.label(x));
      parity.push_back(j_.parity(x));
    }
  for (std::size_t k = 0; k < inder_.basis.size(); ++k) {
    labels.push_back("d" + std::to_string(k + 1));
    parity.push_back(inder_.parity[k]);
  }
  algebra_ = std::make_unique<SuperAlgebra>("T(" + composition_name(kind) + ",J)", f, std::move(labels),
                                            std::move(parity), true,
                                            [this](std::uint32_t i, std::uint32_t j) { return rule(i, j); });
}

std::uint32_t TitsAlgebra::middle(std::size_t a, std::size_t x) const {
  return static_cast<std::uint32_t>(der_.size() + (a - 1) * 9 + (x - 1));
}

std::uint32_t TitsAlgebra::inder_index(std::size_t k) const {
  return static_cast<std::uint32_t>(der_.size() + trace_zero_dim() * 9 + k);
}

SparseVec TitsAlgebra::der_coordinates(const Matrix& d) const {
  if (der_.empty()) {
    if (!d.is_zero()) throw VerificationFailed("nonzero derivation of a composition algebra without derivations");
    return {};
  }
  auto c = der_solver_->coordinates(d.flatten());
  if (!c) throw VerificationFailed("operator is not a derivation of C");
  return *c;
}

SparseVec TitsAlgebra::rule(std::uint32_t i, std::uint32_t j) const {
  FieldSpec f = c_.field();
  std::size_t nd = der_.size(), nm = trace_zero_dim() * 9;
  auto block = [&](std::uint32_t k) {
    if (k < nd) return Block::der;
    if (k < nd + nm) return Block::middle;
    return Block::inder;
  };
  auto mid_a = [&](std::uint32_t k) { return (k - nd) / 9 + 1; };
  auto mid_x = [&](std::uint32_t k) { return (k - nd) % 9 + 1; };
  auto inder_k = [&](std::uint32_t k) { return k - nd - nm; };

  Accumulator acc(f, algebra_dim());
  auto add_middle = [&](const CompositionAlgebra::Element& a, const SparseVec& x, const Scalar& c) {
    for (std::size_t ai = 1; ai < a.size(); ++ai) {
      if (a[ai].is_zero()) continue;
      for (const auto& e : x) acc.add_product(middle(ai, e.index), c * a[ai], e.value);
    }
  };
  auto one = Scalar::one(f);
  Block bi = block(i), bj = block(j);

  if (bi == Block::der && bj == Block::der) {
    for (const auto& e : der_coordinates(commutator(der_[i], der_[j]))) acc.add(e.index, e.value);
  } else if (bi == Block::der && bj == Block::middle) {
    add_middle(der_[i].apply(c_.basis(mid_a(j))), SparseVec::unit(mid_x(j), f), one);
  } else if (bi == Block::middle && bj == Block::der) {
    add_middle(der_[j].apply(c_.basis(mid_a(i))), SparseVec::unit(mid_x(i), f), -one);
  } else if (bi == Block::inder && bj == Block::middle) {
    SparseVec dx;
    for (const auto& e : inder_.basis[inder_k(i)].column(mid_x(j) - 1)) dx.push_back(e.index + 1, e.value);
    add_middle(c_.basis(mid_a(j)), dx, one);
  } else if (bi == Block::middle && bj == Block::inder) {
    SparseVec dx;
    for (const auto& e : inder_.basis[inder_k(j)].column(mid_x(i) - 1)) dx.push_back(e.index + 1, e.value);
    bool both_odd = inder_.parity[inder_k(j)] && j_.parity(mid_x(i));
    add_middle(c_.basis(mid_a(i)), dx, both_odd ? one : -one);
  } else if (bi == Block::inder && bj == Block::inder) {
    auto k = inder_k(i), l = inder_k(j);
    auto d = supercommutator(inder_.basis[k], inder_.parity[k], inder_.basis[l], inder_.parity[l]);
    for (const auto& e : inder_.coordinates(d)) acc.add(inder_index(e.index), e.value);
  } else if (bi == Block::middle && bj == Block::middle) {
    auto a = c_.basis(mid_a(i)), b = c_.basis(mid_a(j));
    std::size_t x = mid_x(i), y = mid_x(j);
    const auto& xy = j_.product(x, y);
    auto t = normalized_trace(xy, f);
    if (!t.is_zero())
      for (const auto& e : der_coordinates(c_.inner_derivation(a, b))) acc.add_product(e.index, t, e.value);
    SparseVec star;
    for (const auto& e : xy)
      if (e.index != 0) star.push_back(e.index, e.value);
    add_middle(c_.commutator(a, b), star, one);
    auto nab = c_.polar(a, b);
    if (!nab.is_zero())
      for (const auto& e : inder_.coordinates(kac_derivation(j_, x, y)))
        acc.add_product(inder_index(e.index), embed_integer(-2, f) * nab, e.value);
  }
  return acc.take();
}

std::size_t TitsAlgebra::algebra_dim() const { return der_.size() + trace_zero_dim() * 9 + inder_.basis.size(); }

SuperAlgebra build_tits(CompositionKind kind, FieldSpec f) { return TitsAlgebra(kind, f).algebra(); }

UnitSplit split_unit_tits(FieldSpec f) {
  TitsAlgebra t(CompositionKind::unit, f);
  const auto& a = t.algebra();
  auto k = kaplansky(f);
  auto phi = supercommutator(k.left(0), 0, k.left(1), 1);
  auto seed = [&](const Matrix& m) {
    SparseVec out;
    for (const auto& e : t.inner().coordinates(m)) out.push_back(t.inder_index(e.index), e.value);
    return out;
  };
  UnitSplit s;
  s.first = ideal_closure(a, {seed(kaplansky_tensor_left(phi, f))});
  s.second = ideal_closure(a, {seed(kaplansky_tensor_right(phi, 1, f))});
  s.commute = true;
  for (const auto& x : s.first)
    for (const auto& y : s.second)
      if (!a.bracket(x, y).empty()) s.commute = false;
  auto both = s.first;
  both.insert(both.end(), s.second.begin(), s.second.end());
  s.direct = both.size() == a.dim() && rank(both, f, a.dim()) == a.dim();
  return s;
}

Matrix QSpace::sigma(std::size_t x, std::size_t y) const {
  Matrix m(gram.field(), dim(), dim());
  for (std::size_t w = 0; w < dim(); ++w) {
    m(y, w) += gram(x, w);
    m(x, w) -= gram(y, w);
  }
  return m;
}

QSpace make_qspace(const CompositionAlgebra& c) {
  FieldSpec f = c.field();
  QSpace q;
  q.c0_dim = c.dim() - 1;
  q.gram = Matrix(f, q.c0_dim + 4, q.c0_dim + 4);
  auto g = c.polar_gram();
  for (std::size_t i = 1; i < c.dim(); ++i) q.gram(i - 1, i - 1) = -g(i, i);
  for (std::size_t u1 = 0; u1 < 2; ++u1)
    for (std::size_t u2 = 0; u2 < 2; ++u2)
      for (std::size_t v1 = 0; v1 < 2; ++v1)
        for (std::size_t v2 = 0; v2 < 2; ++v2)
          q.gram(q.tensor_index(u1, u2), q.tensor_index(v1, v2)) =
              -(kaplansky_form(u1 + 1, v1 + 1, f) * kaplansky_form(u2 + 1, v2 + 1, f));
  return q;
}

std::size_t SoMQ::pair_index(std::size_t i, std::size_t j) const {
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (pairs[k] == std::pair{i, j}) return k;
  throw std::out_of_range("no such sigma pair");
}

SparseVec SoMQ::coordinates(const Matrix& x) const {
  auto c = solver->coordinates(x.flatten());
  if (!c) throw VerificationFailed("operator is not in so(M,Q)");
  return *c;
}

SoMQ build_so_MQ(const CompositionAlgebra& c) {
  FieldSpec f = c.field();
  SoMQ so;
  so.space = make_qspace(c);
  if (!inverse(so.space.gram)) throw DegenerateForm("Q is singular over " + f.name());
  std::size_t n = so.space.dim();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      so.pairs.emplace_back(i, j);
      so.basis.push_back(so.space.sigma(i, j));
      labels.push_back("s(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  so.solver = solver_for(so.basis, f, n);
  std::vector<int> parity(labels.size(), 0);
  so.algebra = std::make_unique<SuperAlgebra>("so(M,Q)", f, std::move(labels), std::move(parity), false,
                                              [&](std::uint32_t i, std::uint32_t j) {
                                                return so.coordinates(commutator(so.basis[i], so.basis[j]));
                                              });
  return so;
}

Phi0 phi0(const TitsAlgebra& t, const SoMQ& so) {
  const auto& a = t.algebra();
  const auto& c = t.composition();
  FieldSpec f = a.field();
  const auto& q = so.space;
  std::size_t nd = t.der_count(), nm = t.trace_zero_dim() * 9;
  Phi0 p;
  for (std::uint32_t i = 0; i < a.dim(); ++i) {
    if (a.parity(i)) continue;
    Matrix img(f, q.dim(), q.dim());
    if (i < nd) {
      auto d = restrict_trace_zero(t.derivations()[i]);
      for (std::size_t r = 0; r < q.c0_dim; ++r)
        for (std::size_t s = 0; s < q.c0_dim; ++s) img(r, s) = d(r, s);
    } else if (i < nd + nm) {
      std::size_t ai = (i - nd) / 9 + 1, x = (i - nd) % 9 + 1;
      if (x == kac_index(0, 0)) {
        auto ad = restrict_trace_zero(c.ad(c.basis(ai)));
        for (std::size_t r = 0; r < q.c0_dim; ++r)
          for (std::size_t s = 0; s < q.c0_dim; ++s) img(r, s) = -ad(r, s);
      } else if (is_tensor_kac(x)) {
        img = q.sigma(ai - 1, q.tensor_index((x - 1) / 3 - 1, (x - 1) % 3 - 1));
      } else {
        throw VerificationFailed("unexpected even middle element");
      }
    } else {
      const auto& d = t.inner().basis[i - nd - nm];
      for (std::size_t u1 = 0; u1 < 2; ++u1)
        for (std::size_t u2 = 0; u2 < 2; ++u2)
          for (std::size_t v1 = 0; v1 < 2; ++v1)
            for (std::size_t v2 = 0; v2 < 2; ++v2)
              img(q.tensor_index(u1, u2), q.tensor_index(v1, v2)) = d(tensor_kac(u1, u2) - 1, tensor_kac(v1, v2) - 1);
    }
    p.even.push_back(i);
    p.images.push_back(std::move(img));
  }
  p.map = Matrix(f, so.basis.size(), p.even.size());
  for (std::size_t k = 0; k < p.even.size(); ++k)
    for (const auto& e : so.coordinates(p.images[k])) p.map(e.index, k) = e.value;
  return p;
}

std::vector<Matrix> spin_map_psi(const CompositionAlgebra& c) {
  FieldSpec f = c.field();
  QSpace q = make_qspace(c);
  std::size_t n = 4 * c.dim();
  std::vector<Matrix> psi;
  for (std::size_t m = 0; m < q.c0_dim; ++m) {
    auto l = c.left(c.basis(m + 1));
    Matrix p(f, n, n);
    for (std::size_t r = 0; r < c.dim(); ++r)
      for (std::size_t s = 0; s < c.dim(); ++s)
        for (std::size_t slot = 0; slot < 4; ++slot) p(4 * r + slot, 4 * s + slot) = slot < 2 ? -l(r, s) : l(r, s);
    psi.push_back(std::move(p));
  }
  for (std::size_t u1 = 0; u1 < 2; ++u1)
    for (std::size_t u2 = 0; u2 < 2; ++u2) {
      Matrix p(f, n, n);
      for (std::size_t cc = 0; cc < c.dim(); ++cc)
        for (std::size_t w = 0; w < 2; ++w) {
          // (w1, w2) ↦ ((u2|w2)u1, (u1|w1)u2)
          p(4 * cc + 2 + u2, 4 * cc + w) = kaplansky_form(u1 + 1, w + 1, f);
          p(4 * cc + u1, 4 * cc + 2 + w) = kaplansky_form(u2 + 1, w + 1, f);
        }
      psi.push_back(std::move(p));
    }
  return psi;
}

Matrix spin_rho(const std::vector<Matrix>& psi, std::size_t i, std::size_t j) {
  FieldSpec f = psi.at(i).field();
  return commutator(psi[i], psi[j]).scaled(Scalar::from_fraction(-1, 2, f));
}

Phi1 phi1(const TitsAlgebra& t, bool negate) {
  const auto& a = t.algebra();
  FieldSpec f = a.field();
  std::size_t n = 4 * t.composition().dim();
  std::size_t nd = t.der_count(), nm = t.trace_zero_dim() * 9;

  auto k = kaplansky(f);
  std::vector<Matrix> generators;
  std::vector<std::size_t> slots;
  for (std::size_t top = 0; top < 2; ++top)
    for (std::size_t u = 0; u < 2; ++u) {
      auto leu = supercommutator(k.left(0), 0, k.left(u + 1), 1);
      generators.push_back(top == 0 ? kaplansky_tensor_left(leu, f) : kaplansky_tensor_right(leu, 1, f));
      slots.push_back(2 * top + u);
    }
  auto solver = solver_for(generators, f, 9);
  auto unit_coeff = Scalar::from_fraction(negate ? 1 : -1, 2, f);

  Phi1 p;
  for (std::uint32_t i = 0; i < a.dim(); ++i)
    if (a.parity(i)) p.odd.push_back(i);
  p.map = Matrix(f, n, p.odd.size());
  for (std::size_t col = 0; col < p.odd.size(); ++col) {
    std::uint32_t i = p.odd[col];
    if (i < nd + nm) {
      std::size_t ai = (i - nd) / 9 + 1, x = (i - nd) % 9 + 1;
      std::size_t first = (x - 1) / 3, second = (x - 1) % 3;
      std::size_t slot = first != 0 ? first - 1 : 2 + second - 1;
      p.map(4 * ai + slot, col) = Scalar::one(f);
    } else {
      auto coords = solver->coordinates(t.inner().basis[i - nd - nm].flatten());
      if (!coords) throw VerificationFailed("odd inner derivation outside the span of [L_e, L_u]");
      for (const auto& e : *coords) p.map(slots[e.index], col) += unit_coeff * e.value;
    }
  }
  return p;
}

IntertwineResult phi1_intertwine(const TitsAlgebra& t, bool negate) {
  IntertwineResult r;
  const auto& a = t.algebra();
  const auto& c = t.composition();
  FieldSpec f = a.field();
  auto p1 = phi1(t, negate);
  auto psi = spin_map_psi(c);
  QSpace q = make_qspace(c);
  std::vector<std::int64_t> odd_pos(a.dim(), -1);
  for (std::size_t k = 0; k < p1.odd.size(); ++k) odd_pos[p1.odd[k]] = static_cast<std::int64_t>(k);
  std::size_t n = p1.odd.size();
  for (std::size_t ai = 1; ai < c.dim(); ++ai)
    for (std::size_t u1 = 0; u1 < 2; ++u1)
      for (std::size_t u2 = 0; u2 < 2; ++u2) {
        auto g = t.middle(ai, tensor_kac(u1, u2));
        auto rho = spin_rho(psi, ai - 1, q.tensor_index(u1, u2));
        Matrix ad(f, n, n);
        for (std::size_t col = 0; col < n; ++col)
          for (const auto& e : a.bracket(g, p1.odd[col])) {
            if (odd_pos[e.index] < 0) {
              r.pass = false;
              r.witness = "bracket with " + a.label(p1.odd[col]) + " leaves the odd part";
              return r;
            }
            ad(static_cast<std::size_t>(odd_pos[e.index]), col) = e.value;
          }
        auto lhs = p1.map * ad, rhs = rho * p1.map;
        for (std::size_t col = 0; col < n; ++col) {
          ++r.checked;
          if (!(lhs.column(col) == rhs.column(col))) {
            r.pass = false;
            r.witness = "sigma(" + c.label(ai) + ", " + a.label(g).substr(c.label(ai).size() + 3) + ") on " +
                        a.label(p1.odd[col]);
            return r;
          }
        }
      }
  return r;
}

Matrix hyperbolic_basis(const Matrix& gram, std::uint64_t seed) {
  FieldSpec f = gram.field();
  std::size_t n = gram.rows();
  std::mt19937_64 rng(seed);
  auto form = [&](const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    auto gy = gram.apply(y);
    auto s = Scalar::zero(f);
    for (std::size_t i = 0; i < n; ++i) s.add_product(x[i], gy[i]);
    return s;
  };
  auto combine = [&](const std::vector<std::vector<Scalar>>& basis, const std::vector<Scalar>& coeff) {
    std::vector<Scalar> v(n, Scalar::zero(f));
    for (std::size_t k = 0; k < basis.size(); ++k)
      for (std::size_t i = 0; i < n; ++i) v[i].add_product(coeff[k], basis[k][i]);
    return v;
  };
  auto is_zero = [](const std::vector<Scalar>& v) {
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  };
  std::int64_t range = f.is_rational() ? 7 : std::min<std::int64_t>(f.characteristic(), 1 << 20);
  auto residue = [&] { return embed_integer(static_cast<std::int64_t>(rng() % range) - (f.is_rational() ? 3 : 0), f); };

  std::vector<std::vector<Scalar>> space;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Scalar> e(n, Scalar::zero(f));
    e[i] = Scalar::one(f);
    space.push_back(std::move(e));
  }
  std::vector<std::vector<Scalar>> out;
  while (space.size() >= 2) {
    std::optional<std::vector<Scalar>> iso;
    for (int attempt = 0; attempt < 2000 && !iso; ++attempt) {
      std::vector<Scalar> coeff(space.size());
      for (auto& x : coeff) x = residue();
      auto v = combine(space, coeff);
      if (!is_zero(v) && form(v, v).is_zero()) iso = v;
    }
    if (!iso && !f.is_rational()) {
      // enumerate coefficient vectors supported on the first three basis vectors
      std::size_t k = std::min<std::size_t>(space.size(), 3);
      std::vector<std::int64_t> digits(k, 0);
      while (!iso) {
        std::size_t pos = 0;
        while (pos < k && ++digits[pos] == range) digits[pos++] = 0;
        if (pos == k) break;
        std::vector<Scalar> coeff(space.size(), Scalar::zero(f));
        for (std::size_t d = 0; d < k; ++d) coeff[d] = embed_integer(digits[d], f);
        auto v = combine(space, coeff);
        if (!is_zero(v) && form(v, v).is_zero()) iso = v;
      }
    }
    if (!iso) {
      if (space.size() >= 3 && !f.is_rational()) throw IsometryNotFound("no isotropic vector in a regular subspace");
      break;
    }
    auto v = *iso;
    std::optional<std::vector<Scalar>> w;
    for (const auto& s : space)
      if (!form(v, s).is_zero()) {
        w = s;
        break;
      }
    if (!w) throw DegenerateForm("isotropic vector in the radical");
    auto inv = form(v, *w).inverse();
    auto fp = *w;
    for (auto& x : fp) x *= inv;
    auto half = form(fp, fp) * Scalar::from_fraction(1, 2, f);
    std::vector<Scalar> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = fp[i] - half * v[i];
    RowEchelon rest(f, n);
    for (const auto& s : space) {
      auto sf = form(s, h), sv = form(s, v);
      std::vector<Scalar> proj(n);
      for (std::size_t i = 0; i < n; ++i) proj[i] = s[i] - sf * v[i] - sv * h[i];
      rest.insert(SparseVec::from_dense(proj));
    }
    out.push_back(v);
    out.push_back(h);
    space.clear();
    for (const auto& r : rest.reduced_basis()) space.push_back(r.to_dense(n, f));
  }
  // orthogonal basis of the anisotropic remainder
  for (std::size_t k = 0; k < space.size(); ++k) {
    auto s = space[k];
    for (std::size_t k2 = 0; k2 < k; ++k2) {
      const auto& o = out[out.size() - k + k2];
      auto c = form(s, o) / form(o, o);
      for (std::size_t i = 0; i < n; ++i) s[i] -= c * o[i];
    }
    out.push_back(s);
  }
  Matrix m(f, n, out.size());
  for (std::size_t c = 0; c < out.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) m(r, c) = out[c][r];
  return m;
}

namespace {

std::optional<Scalar> square_root(const Scalar& x) {
  FieldSpec f = x.field();
  if (f.is_rational()) throw std::invalid_argument("square roots are only searched in finite fields");
  if (f.characteristic() > (1u << 20)) throw std::invalid_argument("characteristic too large for square-root search");
  for (std::uint32_t r = 0; r < f.characteristic(); ++r) {
    auto s = embed_integer(r, f);
    if (s * s == x) return s;
  }
  return std::nullopt;
}

Matrix dense(const SparseOperator& op, FieldSpec f, std::size_t rows) { return to_matrix(op, f, rows); }

struct Attempt {
  enum class Outcome { verified, nonsquare, failed } outcome = Outcome::failed;
  std::string detail;
  Scalar lambda;
  Matrix map;
};

Attempt identify(const TitsAlgebra& t, const Phi0& p0, const SuperAlgebra& b, const OrthogonalSpace& space,
                 const Matrix& iso) {
  Attempt out;
  FieldSpec f = b.field();
  const auto& ta = t.algebra();
  auto iso_inv = inverse(iso);
  if (!iso_inv) {
    out.detail = "isometry is singular";
    return out;
  }
  std::vector<Matrix> natural;
  for (std::size_t k = 0; k < space.pair_count(); ++k)
    natural.push_back(natural_matrix(space, SparseVec::unit(static_cast<std::uint32_t>(k), f), f));
  auto nat_solver = solver_for(natural, f, space.dim());

  std::size_t n0 = p0.even.size();
  Matrix phi(f, n0, n0);
  for (std::size_t k = 0; k < n0; ++k) {
    auto y = iso * p0.images[k] * *iso_inv;
    auto c = nat_solver->coordinates(y.flatten());
    if (!c) {
      out.detail = "transported operator is not in so(W,q)";
      return out;
    }
    for (const auto& e : *c) phi(e.index, k) = e.value;
  }
  auto phi_inv = inverse(phi);
  if (!phi_inv) {
    out.detail = "even map is singular";
    return out;
  }

  auto at = even_odd_actions(ta);
  auto ab = even_odd_actions(b);
  std::size_t n1 = at.odd.size();
  if (ab.odd.size() != n1) {
    out.detail = "odd dimensions differ";
    return out;
  }
  std::vector<Matrix> a_t, a_b;
  for (const auto& op : at.on_odd) a_t.push_back(dense(op, f, n1));
  for (const auto& op : ab.on_odd) a_b.push_back(dense(op, f, n1));
  auto combine = [&](const std::vector<Matrix>& ops, const SparseVec& x) {
    Matrix m(f, n1, n1);
    for (const auto& e : x) m = m + ops[e.index].scaled(e.value);
    return m;
  };

  // weight vectors of the transported Cartan subalgebra
  std::vector<Matrix> h_t, h_b;
  for (int i = 1; i <= space.l(); ++i) {
    auto h = SparseVec::unit(static_cast<std::uint32_t>(space.pair_index(space.v(i), space.f(i))), f);
    h_b.push_back(combine(a_b, h));
    h_t.push_back(combine(a_t, phi_inv->apply(h)));
  }
  Matrix w(f, n1, n1);
  for (std::size_t s = 0; s < n1; ++s) {
    RowEchelon eq(f, n1);
    for (std::size_t i = 0; i < h_t.size(); ++i) {
      for (std::size_t r = 0; r < n1; ++r)
        if (r != s && !h_b[i](r, s).is_zero()) {
          out.detail = "Cartan subalgebra is not diagonal on the monomial basis";
          return out;
        }
      auto shifted = h_t[i] - Matrix::identity(f, n1).scaled(h_b[i](s, s));
      for (std::size_t r = 0; r < n1; ++r) eq.insert(shifted.row(r));
    }
    auto kernel = eq.nullspace();
    if (kernel.size() != 1) {
      out.detail = "weight space of dimension " + std::to_string(kernel.size());
      return out;
    }
    for (const auto& e : kernel[0]) w(e.index, s) = e.value;
  }
  auto w_inv = inverse(w);
  if (!w_inv) {
    out.detail = "weight vectors are dependent";
    return out;
  }
  // P = diag(c)·W⁻¹ with c_r M(r,s) = N(r,s) c_s for every even basis element
  RowEchelon eq(f, n1);
  for (std::size_t k = 0; k < n0; ++k) {
    auto m = *w_inv * a_t[k] * w;
    auto nb = combine(a_b, phi.column(k));
    for (std::size_t r = 0; r < n1; ++r)
      for (std::size_t s = 0; s < n1; ++s) {
        if (m(r, s).is_zero() && nb(r, s).is_zero()) continue;
        Accumulator acc(f, n1);
        acc.add(static_cast<std::uint32_t>(r), m(r, s));
        acc.add(static_cast<std::uint32_t>(s), -nb(r, s));
        eq.insert(acc.take());
      }
  }
  auto scal = eq.nullspace();
  if (scal.size() != 1) {
    out.detail = "intertwiner space has dimension " + std::to_string(scal.size());
    return out;
  }
  Matrix p(f, n1, n1);
  auto c = scal[0].to_dense(n1, f);
  for (std::size_t r = 0; r < n1; ++r)
    for (std::size_t s = 0; s < n1; ++s) p(r, s) = c[r] * (*w_inv)(r, s);

  // odd brackets agree up to one scalar μ
  std::vector<std::int64_t> even_pos(ta.dim(), -1);
  for (std::size_t k = 0; k < n0; ++k) even_pos[p0.even[k]] = static_cast<std::int64_t>(k);
  auto b_odd = [&](std::size_t col) {
    SparseVec v;
    for (std::size_t r = 0; r < n1; ++r)
      if (!p(r, col).is_zero()) v.push_back(static_cast<std::uint32_t>(ab.odd[r]), p(r, col));
    return v;
  };
  std::optional<Scalar> mu;
  for (std::size_t i = 0; i < n1 && !mu; ++i)
    for (std::size_t j = i; j < n1 && !mu; ++j) {
      auto tb = ta.bracket(at.odd[i], at.odd[j]);
      if (tb.empty()) continue;
      SparseVec even_coords;
      for (const auto& e : tb) even_coords.push_back(static_cast<std::uint32_t>(even_pos[e.index]), e.value);
      auto rhs = phi.apply(even_coords);
      auto lhs = b.bracket(b_odd(i), b_odd(j));
      if (lhs.empty()) {
        out.detail = "odd bracket vanishes on one side only";
        return out;
      }
      mu = lhs.front().value / rhs.at(lhs.front().index, f);
      if (!(lhs == rhs.scaled(*mu))) {
        out.detail = "odd brackets are not proportional";
        return out;
      }
    }
  if (!mu) {
    out.detail = "odd bracket vanishes";
    return out;
  }
  auto lambda = square_root(mu->inverse());
  if (!lambda) {
    out.outcome = Attempt::Outcome::nonsquare;
    out.detail = "odd scaling needs a square root of " + mu->inverse().to_string();
    return out;
  }
  Matrix map(f, b.dim(), ta.dim());
  for (std::size_t k = 0; k < n0; ++k)
    for (std::size_t r = 0; r < n0; ++r) map(ab.even[r], p0.even[k]) = phi(r, k);
  for (std::size_t k = 0; k < n1; ++k)
    for (std::size_t r = 0; r < n1; ++r) map(ab.odd[r], at.odd[k]) = *lambda * p(r, k);
  if (auto defect = isomorphism_defect(map, ta, b)) {
    out.detail = *defect;
    return out;
  }
  out.outcome = Attempt::Outcome::verified;
  out.lambda = *lambda;
  out.map = std::move(map);
  return out;
}

Matrix reflection(const Matrix& gram, const std::vector<Scalar>& m) {
  FieldSpec f = gram.field();
  std::size_t n = gram.rows();
  auto gm = gram.apply(m);
  auto qmm = Scalar::zero(f);
  for (std::size_t i = 0; i < n; ++i) qmm.add_product(m[i], gm[i]);
  auto c = embed_integer(2, f) / qmm;
  auto r = Matrix::identity(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) -= c * m[i] * gm[j];
  return r;
}

}  // namespace

CrossIdentification cross_identify_with_typeB(FieldSpec f) {
  if (f.is_rational()) throw std::invalid_argument("cross identification runs over a finite field");
  CrossIdentification out;
  TitsAlgebra t(CompositionKind::octonion, f);
  auto so = build_so_MQ(t.composition());
  auto p0 = phi0(t, so);
  if (auto d = isomorphism_defect(p0.map, even_subalgebra(t.algebra()), *so.algebra))
    throw VerificationFailed("Phi0: " + *d);
  auto b = build_superalgebra(5, Kind::B, f);
  OrthogonalSpace space(5, Kind::B);
  out.equivariant_dim = spin_equivariant_dim(5, Kind::B, f);

  const auto& gm = so.space.gram;
  std::size_t n = gm.rows();
  Matrix gw(f, n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) gw(a, c) = embed_integer(space.polar(static_cast<int>(a), static_cast<int>(c)), f);

  auto h = hyperbolic_basis(gm, 0);
  auto z = h.column(n - 1).to_dense(n, f);
  auto gz = gm.apply(z);
  auto delta = Scalar::zero(f);
  for (std::size_t i = 0; i < n; ++i) delta.add_product(z[i], gz[i]);
  auto c = embed_integer(-2, f) / delta;
  Matrix target(f, n, n);
  for (int i = 1; i <= 5; ++i) {
    target(space.v(i), 2 * (i - 1)) = Scalar::one(f);
    target(space.f(i), 2 * (i - 1) + 1) = c;
  }
  target(space.u(), n - 1) = Scalar::one(f);
  auto h_inv = inverse(h);
  if (!h_inv) throw IsometryNotFound("hyperbolic basis is singular");
  auto iso = target * *h_inv;
  if (!(iso.transpose() * gw * iso == gm.scaled(c))) throw IsometryNotFound("similitude check failed");
  out.multiplier = c;

  auto attempt = identify(t, p0, b, space, iso);
  if (attempt.outcome == Attempt::Outcome::nonsquare) {
    // compose with an element of SO(M,Q) of nontrivial spinor norm
    std::optional<Matrix> g;
    for (std::size_t i = 0; i < n && !g; ++i)
      for (std::size_t j = i + 1; j < n && !g; ++j)
        for (std::int64_t s = 1; s < 3 && !g; ++s) {
          std::vector<Scalar> m1(n, Scalar::zero(f)), m2(n, Scalar::zero(f));
          m1[i] = Scalar::one(f);
          m2[i] = Scalar::one(f);
          m2[j] = embed_integer(s, f);
          auto q1 = gm(i, i);
          auto q2 = gm.apply(m2);
          auto q2v = Scalar::zero(f);
          for (std::size_t k = 0; k < n; ++k) q2v.add_product(m2[k], q2[k]);
          if (q1.is_zero() || q2v.is_zero() || square_root(q1 * q2v)) continue;
          g = reflection(gm, m1) * reflection(gm, m2);
        }
    if (g) {
      out.reflected = true;
      iso = iso * *g;
      attempt = identify(t, p0, b, space, iso);
    }
  }
  out.isometry = iso;
  switch (attempt.outcome) {
    case Attempt::Outcome::verified:
      out.verified = true;
      out.status = "verified";
      out.lambda = attempt.lambda;
      out.map = std::move(attempt.map);
      break;
    case Attempt::Outcome::nonsquare:
      out.status = "holds over quadratic extension";
      break;
    case Attempt::Outcome::failed:
      out.status = attempt.detail;
      break;
  }
  return out;
}

}  // namespace spinlab
