#include "doctest.h"

#include "spinlab/composition.hpp"

using namespace spinlab;

namespace {

using Element = CompositionAlgebra::Element;

// 2×2 matrices as plain integer arrays.
using M2 = std::array<std::int64_t, 4>;
M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}
std::int64_t det(const M2& a) { return a[0] * a[3] - a[1] * a[2]; }

}  // namespace

TEST_CASE("dimensions and unit norms") {
  CHECK(CompositionAlgebra(CompositionKind::unit, kRationals).dim() == 1);
  CHECK(CompositionAlgebra(CompositionKind::binarion, kRationals).dim() == 2);
  CHECK(CompositionAlgebra(CompositionKind::quaternion, kRationals).dim() == 4);
  CompositionAlgebra o(CompositionKind::octonion, make_field(5));
  CHECK(o.dim() == 8);
  CHECK(o.norm(o.unit()) == Scalar::one(o.field()));
  CompositionAlgebra k(CompositionKind::unit, kRationals);
  Element a{Scalar::from_fraction(-3, 7, kRationals)};
  CHECK(k.norm(a) == Scalar::from_fraction(9, 49, kRationals));
}

TEST_CASE("the octonion table is pinned") {
  auto t = cayley_dickson_table(3);
  CHECK(t.norm == std::vector<int>{1, -1, -1, 1, -1, 1, 1, -1});
  CHECK(t.checksum() == cayley_dickson_table(3).checksum());
  CHECK(t.checksum() != cayley_dickson_table(2).checksum());
  CHECK(t.checksum() == 5810773757106364653ull);
}

TEST_CASE("composition identities hold exhaustively") {
  for (auto kind : {CompositionKind::unit, CompositionKind::binarion, CompositionKind::quaternion,
                    CompositionKind::octonion})
    for (int p : {0, 5, 7}) {
      CompositionAlgebra c(kind, make_field(p));
      auto r = check_composition_identities(c, 200, 1);
      INFO(composition_name(kind), " p=", p, " ", r.failure);
      CHECK(r.all());
    }
}

TEST_CASE("the octonions are not associative, the quaternions are") {
  CompositionAlgebra o(CompositionKind::octonion, kRationals), q(CompositionKind::quaternion, kRationals);
  bool o_assoc = true, q_assoc = true;
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b)
      for (std::size_t c = 0; c < 8; ++c) {
        if (o.associator(o.basis(a), o.basis(b), o.basis(c)) != o.zero()) o_assoc = false;
        if (a < 4 && b < 4 && c < 4 && q.associator(q.basis(a), q.basis(b), q.basis(c)) != q.zero()) q_assoc = false;
      }
  CHECK_FALSE(o_assoc);
  CHECK(q_assoc);
}

TEST_CASE("the quaternion table is Mat2 with the determinant as norm") {
  CompositionAlgebra q(CompositionKind::quaternion, kRationals);
  const auto& t = q.table();
  // e1² = e2² = 1 and e1e2 = −e2e1, as for diag(1,−1) and the swap matrix.
  std::array<M2, 4> img{M2{1, 0, 0, 1}, M2{1, 0, 0, -1}, M2{0, 1, 1, 0}, M2{0, 0, 0, 0}};
  const auto& e12 = t.product[1 * 4 + 2];
  REQUIRE(e12.index == 3);
  auto p = mul(img[1], img[2]);
  for (auto& x : p) x *= e12.coeff;
  img[3] = p;
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(det(img[i]) == t.norm[i]);
    for (std::size_t j = 0; j < 4; ++j) {
      const auto& ij = t.product[i * 4 + j];
      auto expect = img[ij.index];
      for (auto& x : expect) x *= ij.coeff;
      CHECK(mul(img[i], img[j]) == expect);
    }
  }
}

TEST_CASE("inner derivations") {
  for (int p : {0, 5}) {
    CompositionAlgebra o(CompositionKind::octonion, make_field(p));
    Matrix zero(o.field(), 8, 8);
    for (std::size_t a = 0; a < 8; ++a) {
      CHECK(o.inner_derivation(o.basis(a), o.basis(a)) == zero);
      CHECK(o.inner_derivation(o.unit(), o.basis(a)) == zero);
    }
    for (std::size_t a = 0; a < 8; ++a)
      for (std::size_t b = 0; b < 8; ++b) {
        auto d = o.inner_derivation(o.basis(a), o.basis(b));
        for (std::size_t x = 0; x < 8; ++x)
          for (std::size_t y = 0; y < 8; ++y) {
            auto ex = o.basis(x), ey = o.basis(y);
            CHECK(d.apply(o.multiply(ex, ey)) == o.multiply(d.apply(ex), ey) + o.multiply(ex, d.apply(ey)));
          }
      }
  }
}

TEST_CASE("derivation algebras match the span of inner derivations") {
  struct Case {
    CompositionKind kind;
    std::size_t dim;
  };
  for (auto c : {Case{CompositionKind::unit, 0}, Case{CompositionKind::binarion, 0},
                 Case{CompositionKind::quaternion, 3}, Case{CompositionKind::octonion, 14}})
    for (int p : {0, 5, 7}) {
      CompositionAlgebra alg(c.kind, make_field(p));
      auto der = derivation_algebra(alg);
      auto inner = inner_derivation_span(alg);
      CHECK(der.size() == c.dim);
      CHECK(inner.size() == der.size());
      for (std::size_t i = 0; i < der.size() && i < inner.size(); ++i) CHECK(der[i] == inner[i]);
      // derivations kill 1 and are skew for n on C⁰
      auto g = alg.polar_gram();
      for (const auto& d : der) {
        CHECK(d.column(0).empty());
        CHECK(d.row(0).empty());
        CHECK((d.transpose() * g + g * d).is_zero());
      }
    }
}

TEST_CASE("Cayley algebra lemma") {
  for (int p : {0, 5, 7}) {
    CompositionAlgebra o(CompositionKind::octonion, make_field(p));
    auto r = check_lemma_C(o);
    INFO("p=", p, " ", r.failure);
    CHECK(r.all());
    CHECK(r.der_dim == 14);
    CHECK(r.ad_dim == 7);
    CHECK(r.so_dim == 21);
  }
}
