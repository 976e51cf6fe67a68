#include "doctest.h"

#include <algorithm>

#include "spinlab/spin_construct.hpp"
#include "spinlab/tits.hpp"

using namespace spinlab;

namespace {

const CompositionKind kKinds[] = {CompositionKind::unit, CompositionKind::binarion, CompositionKind::quaternion,
                                  CompositionKind::octonion};

bool jacobi_holds(const BracketSource& a) {
  JacobiOptions opts;
  opts.witness_cap = 1;
  return check_jacobi(a, opts).jacobi_pass;
}

}  // namespace

TEST_CASE("Tits superalgebra dimensions") {
  auto f = make_field(5);
  std::pair<std::size_t, std::size_t> expected[] = {{6, 4}, {11, 8}, {24, 16}, {55, 32}};
  for (std::size_t k = 0; k < 4; ++k) {
    TitsAlgebra t(kKinds[k], f);
    CHECK(t.algebra().dims() == expected[k]);
  }
}

TEST_CASE("Jacobi identity in characteristic 5") {
  auto f = make_field(5);
  for (auto kind : kKinds) {
    INFO(composition_name(kind));
    CHECK(jacobi_holds(build_tits(kind, f)));
  }
}

TEST_CASE("octonion Jacobi fails away from characteristic 5") {
  for (int p : {0, 7, 11}) {
    JacobiOptions opts;
    opts.witness_cap = 1;
    auto r = check_jacobi(build_tits(CompositionKind::octonion, make_field(p)), opts);
    CHECK_FALSE(r.jacobi_pass);
    CHECK(r.witnesses.size() == 1);
  }
  // associative C needs no characteristic restriction
  for (auto kind : {CompositionKind::unit, CompositionKind::binarion, CompositionKind::quaternion})
    CHECK(jacobi_holds(build_tits(kind, make_field(7))));
}

TEST_CASE("middle brackets") {
  auto f = make_field(5);
  TitsAlgebra t(CompositionKind::octonion, f);
  const auto& a = t.algebra();
  const auto& c = t.composition();
  std::size_t ee = kac_index(0, 0);
  for (std::size_t i = 1; i < 8; ++i)
    for (std::size_t j = 1; j < 8; ++j)
      for (std::size_t u1 = 1; u1 < 3; ++u1)
        for (std::size_t u2 = 1; u2 < 3; ++u2) {
          auto x = kac_index(u1, u2);
          SparseVec expected;
          auto ab = c.commutator(c.basis(i), c.basis(j));
          for (std::size_t k = 1; k < 8; ++k)
            if (!ab[k].is_zero()) expected = expected + SparseVec::single(t.middle(k, x), -ab[k]);
          CHECK(a.bracket(t.middle(i, ee), t.middle(j, x)) == expected);
        }
  for (std::size_t d = 0; d < t.der_count(); ++d)
    for (std::size_t i = 1; i < 8; ++i) {
      auto da = t.derivations()[d].apply(c.basis(i));
      SparseVec expected;
      for (std::size_t k = 1; k < 8; ++k)
        if (!da[k].is_zero()) expected = expected + SparseVec::single(t.middle(k, 4), da[k]);
      CHECK(a.bracket(static_cast<std::uint32_t>(d), t.middle(i, 4)) == expected);
    }
  for (std::size_t d = 0; d < t.der_count(); ++d)
    for (std::size_t k = 0; k < t.inner().basis.size(); ++k)
      CHECK(a.bracket(static_cast<std::uint32_t>(d), t.inder_index(k)).empty());
}

TEST_CASE("so(M,Q) structure") {
  auto f = make_field(5);
  CompositionAlgebra c(CompositionKind::octonion, f);
  auto so = build_so_MQ(c);
  const auto& q = so.space;
  CHECK(q.dim() == 11);
  CHECK(so.basis.size() == 55);
  CHECK(inverse(q.gram));
  for (std::size_t a = 0; a < 7; ++a)
    CHECK(q.gram(a, a) == -c.polar(c.basis(a + 1), c.basis(a + 1)));
  CHECK(q.gram(q.tensor_index(0, 0), q.tensor_index(1, 1)) == -Scalar::one(f));
  CHECK(q.gram(q.tensor_index(0, 1), q.tensor_index(1, 0)) == Scalar::one(f));
  // [σ_{a,u}, σ_{b,v}] = Q(u,v)σ_{a,b} + Q(a,b)σ_{u,v}
  for (std::size_t a = 0; a < 7; ++a)
    for (std::size_t b = 0; b < 7; ++b)
      for (std::size_t u = 7; u < 11; ++u)
        for (std::size_t v = 7; v < 11; ++v) {
          auto lhs = commutator(q.sigma(a, u), q.sigma(b, v));
          auto rhs = q.sigma(a, b).scaled(q.gram(u, v)) + q.sigma(u, v).scaled(q.gram(a, b));
          CHECK(lhs == rhs);
        }
  // σ_{a,b} = −2D_{a,b} − ad_{[a,b]} on C⁰
  for (std::size_t a = 1; a < 8; ++a)
    for (std::size_t b = 1; b < 8; ++b) {
      auto s = q.sigma(a - 1, b - 1);
      auto ea = c.basis(a), eb = c.basis(b);
      auto rhs = c.inner_derivation(ea, eb).scaled(embed_integer(-2, f)) - c.ad(c.commutator(ea, eb));
      for (std::size_t r = 0; r < 7; ++r)
        for (std::size_t k = 0; k < 7; ++k) CHECK(s(r, k) == rhs(r + 1, k + 1));
    }
}

TEST_CASE("J-side brackets match sigma on U⊗U") {
  auto f = make_field(5);
  auto j = kac(f);
  CompositionAlgebra c(CompositionKind::octonion, f);
  auto q = make_qspace(c);
  for (std::size_t u1 = 0; u1 < 2; ++u1)
    for (std::size_t u2 = 0; u2 < 2; ++u2)
      for (std::size_t v1 = 0; v1 < 2; ++v1)
        for (std::size_t v2 = 0; v2 < 2; ++v2) {
          auto x = kac_index(u1 + 1, u2 + 1), y = kac_index(v1 + 1, v2 + 1);
          auto d = kac_derivation(j, x, y);
          auto s = q.sigma(q.tensor_index(u1, u2), q.tensor_index(v1, v2));
          for (std::size_t w1 = 0; w1 < 2; ++w1)
            for (std::size_t w2 = 0; w2 < 2; ++w2)
              for (std::size_t z1 = 0; z1 < 2; ++z1)
                for (std::size_t z2 = 0; z2 < 2; ++z2) {
                  auto r = q.tensor_index(w1, w2), k = q.tensor_index(z1, z2);
                  CHECK(d(kac_index(w1 + 1, w2 + 1) - 1, kac_index(z1 + 1, z2 + 1) - 1) ==
                        Scalar::from_fraction(1, 2, f) * s(r, k));
                }
        }
}

TEST_CASE("unit Tits superalgebra splits into two ideals") {
  auto f = make_field(5);
  TitsAlgebra t(CompositionKind::unit, f);
  const auto& a = t.algebra();
  auto k = kaplansky(f);
  auto phi = supercommutator(k.left(0), 0, k.left(1), 1);
  auto left = t.inner().coordinates(kaplansky_tensor_left(phi, f));
  auto right = t.inner().coordinates(kaplansky_tensor_right(phi, 1, f));
  auto lift = [&](const SparseVec& v) {
    SparseVec out;
    for (const auto& e : v) out.push_back(t.inder_index(e.index), e.value);
    return out;
  };
  auto i1 = ideal_closure(a, {lift(left)});
  auto i2 = ideal_closure(a, {lift(right)});
  CHECK(i1.size() == 5);
  CHECK(i2.size() == 5);
  auto both = i1;
  both.insert(both.end(), i2.begin(), i2.end());
  CHECK(rank(both, f, a.dim()) == 10);
  for (const auto& x : i1)
    for (const auto& y : i2) CHECK(a.bracket(x, y).empty());
  auto s = split_unit_tits(f);
  CHECK(s.first == i1);
  CHECK(s.second == i2);
  CHECK(s.commute);
  CHECK(s.direct);
}

TEST_CASE("Phi0 is an isomorphism onto so(M,Q)") {
  auto f = make_field(5);
  TitsAlgebra t(CompositionKind::octonion, f);
  auto so = build_so_MQ(t.composition());
  auto p0 = phi0(t, so);
  CHECK(rank(p0.map) == 55);
  auto d = isomorphism_defect(p0.map, even_subalgebra(t.algebra()), *so.algebra);
  CHECK_MESSAGE(!d, d.value_or(""));
  // grading: der C and C⁰⊗(e⊗e) are block diagonal, C⁰⊗(U⊗U) is off-diagonal
  for (std::size_t k = 0; k < p0.even.size(); ++k) {
    auto i = p0.even[k];
    bool off = i >= t.der_count() && i < t.inder_index(0) && (i - t.der_count()) % 9 + 1 != kac_index(0, 0);
    for (std::size_t r = 0; r < 11; ++r)
      for (std::size_t s = 0; s < 11; ++s)
        if ((r < 7) != (s < 7) && !off) CHECK(p0.images[k](r, s).is_zero());
        else if ((r < 7) == (s < 7) && off) CHECK(p0.images[k](r, s).is_zero());
  }
  // a⊗(e⊗e) ↦ −ad_a
  auto ad = t.composition().ad(t.composition().basis(3));
  auto img = p0.images[static_cast<std::size_t>(
      std::find(p0.even.begin(), p0.even.end(), t.middle(3, kac_index(0, 0))) - p0.even.begin())];
  for (std::size_t r = 0; r < 7; ++r)
    for (std::size_t s = 0; s < 7; ++s) CHECK(img(r, s) == -ad(r + 1, s + 1));
  // the same map fails away from characteristic 5
  TitsAlgebra t7(CompositionKind::octonion, make_field(7));
  auto so7 = build_so_MQ(t7.composition());
  CHECK(isomorphism_defect(phi0(t7, so7).map, even_subalgebra(t7.algebra()), *so7.algebra));
}

TEST_CASE("spin map relations") {
  auto f = make_field(5);
  CompositionAlgebra c(CompositionKind::octonion, f);
  auto q = make_qspace(c);
  auto psi = spin_map_psi(c);
  auto so = build_so_MQ(c);
  REQUIRE(psi.size() == 11);
  auto id = Matrix::identity(f, 32);
  for (std::size_t z = 0; z < 11; ++z)
    for (std::size_t w = 0; w < 11; ++w) CHECK(psi[z] * psi[w] + psi[w] * psi[z] == id.scaled(q.gram(z, w)));
  for (std::size_t a = 0; a < 7; ++a) CHECK(psi[a] * psi[a] == id.scaled(-c.norm(c.basis(a + 1))));
  // ρ(σ_{a,u}) = −Ψ(a)Ψ(u)
  for (std::size_t a = 0; a < 7; ++a)
    for (std::size_t u = 7; u < 11; ++u) CHECK(spin_rho(psi, a, u) == (psi[a] * psi[u]).scaled(-Scalar::one(f)));
  // [ρ(σ), Ψ(m)] = Ψ(σm) and ρ is a Lie homomorphism
  std::vector<Matrix> rho;
  for (const auto& [i, j] : so.pairs) rho.push_back(spin_rho(psi, i, j));
  for (std::size_t k = 0; k < so.basis.size(); ++k)
    for (std::size_t m = 0; m < 11; ++m) {
      Matrix image(f, 32, 32);
      for (std::size_t r = 0; r < 11; ++r) image = image + psi[r].scaled(so.basis[k](r, m));
      CHECK(commutator(rho[k], psi[m]) == image);
    }
  for (std::size_t k = 0; k < so.basis.size(); k += 3)
    for (std::size_t l = 0; l < so.basis.size(); l += 5) {
      Matrix expected(f, 32, 32);
      for (const auto& e : so.algebra->bracket(static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(l)))
        expected = expected + rho[e.index].scaled(e.value);
      CHECK(commutator(rho[k], rho[l]) == expected);
    }
}

TEST_CASE("Phi1 intertwines") {
  auto f = make_field(5);
  for (auto kind : kKinds) {
    INFO(composition_name(kind));
    TitsAlgebra t(kind, f);
    auto r = phi1_intertwine(t);
    CHECK_MESSAGE(r.pass, r.witness);
    if (kind == CompositionKind::unit) continue;
    CHECK(r.checked == (t.trace_zero_dim() * 4) * t.algebra().dims().second);
    auto bad = phi1_intertwine(t, true);
    CHECK_FALSE(bad.pass);
    CHECK_FALSE(bad.witness.empty());
  }
}

TEST_CASE("cross identification with type B") {
  auto f = make_field(5);
  auto r = cross_identify_with_typeB(f);
  REQUIRE(r.verified);
  CHECK(r.status == "verified");
  CHECK(r.equivariant_dim == 1);
  CompositionAlgebra c(CompositionKind::octonion, f);
  auto gm = make_qspace(c).gram;
  OrthogonalSpace space(5, Kind::B);
  Matrix gw(f, 11, 11);
  for (int i = 0; i < 11; ++i)
    for (int j = 0; j < 11; ++j) gw(i, j) = embed_integer(space.polar(i, j), f);
  CHECK(r.isometry.transpose() * gw * r.isometry == gm.scaled(r.multiplier));
  TitsAlgebra t(CompositionKind::octonion, f);
  CHECK(verify_isomorphism(r.map, t.algebra(), build_superalgebra(5, Kind::B, f)));
  CHECK_THROWS_AS(cross_identify_with_typeB(kRationals), std::invalid_argument);
}
