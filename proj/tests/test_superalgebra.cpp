#include "doctest.h"

#include <random>

#include "spinlab/spin_construct.hpp"

using namespace spinlab;

namespace {

SuperAlgebra so_only(int l, Kind kind, FieldSpec f) {
  OrthogonalSpace s(l, kind);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < s.pair_count(); ++k) labels.push_back(s.pair_label(k));
  std::vector<int> parity(labels.size(), 0);
  return SuperAlgebra("so", f, labels, parity, false, [&](std::uint32_t i, std::uint32_t j) {
    return so_bracket(s, SparseVec::unit(i, f), SparseVec::unit(j, f), f);
  });
}

// Same algebra with one structure constant perturbed on a pair that the scan reaches last.
SuperAlgebra corrupt_last(const SuperAlgebra& a) {
  std::uint32_t n = static_cast<std::uint32_t>(a.dim());
  std::uint32_t i = n - 2, j = n - 1;
  std::uint32_t target = 0;
  while (a.parity(target) != (a.parity(i) ^ a.parity(j))) ++target;
  auto bump = SparseVec::unit(target, a.field());
  std::vector<int> parity;
  for (std::size_t t = 0; t < n; ++t) parity.push_back(a.parity(t));
  return SuperAlgebra(a.name(), a.field(), a.labels(), parity, a.super(), [&](std::uint32_t x, std::uint32_t y) {
    SparseVec v = a.bracket(x, y);
    if (x == i && y == j) v = v + bump;
    if (x == j && y == i) v = v + bump.scaled(embed_integer(a.swap_sign(i, j), a.field()));
    return v;
  });
}

// Ordered-triple oracle: every permutation of every triple.
bool all_ordered_triples_vanish(const BracketSource& a) {
  std::uint32_t n = static_cast<std::uint32_t>(a.dim());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k)
        if (!jacobiator(a, i, j, k).empty()) return false;
  return true;
}

std::size_t commutant_dim(const std::vector<SparseOperator>& ops, std::size_t n, FieldSpec f) {
  // X A − A X = 0 for every generator A, unknowns X_{rc} at c·n + r.
  std::vector<SparseVec> eqs;
  for (const auto& a : ops) {
    auto m = to_matrix(a, f, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        Accumulator acc(f, n * n);
        for (std::size_t t = 0; t < n; ++t) {
          if (!m(t, c).is_zero()) acc.add(static_cast<std::uint32_t>(t * n + r), m(t, c));
          if (!m(r, t).is_zero()) acc.add(static_cast<std::uint32_t>(c * n + t), -m(r, t));
        }
        eqs.push_back(acc.take());
      }
  }
  return n * n - rank(eqs, f, n * n);
}

std::vector<SparseOperator> spin_rep(const SpinModule& m, FieldSpec f) {
  std::vector<SparseOperator> out;
  for (std::size_t k = 0; k < m.space().pair_count(); ++k) out.push_back(to_sparse_operator(m.matrix(k, f)));
  return out;
}

std::vector<SparseOperator> so_adjoint(const OrthogonalSpace& s, FieldSpec f) {
  std::vector<SparseOperator> out;
  for (std::size_t a = 0; a < s.pair_count(); ++a) {
    SparseOperator op;
    for (std::size_t b = 0; b < s.pair_count(); ++b)
      op.push_back(so_bracket(s, SparseVec::unit(a, f), SparseVec::unit(b, f), f));
    out.push_back(std::move(op));
  }
  return out;
}

}  // namespace

TEST_CASE("so part alone satisfies Jacobi") {
  auto rep = check_jacobi(so_only(2, Kind::B, kRationals), {});
  CHECK(rep.jacobi_pass);
  CHECK(rep.dims == std::pair<std::size_t, std::size_t>{10, 0});
}

TEST_CASE("table construction rejects broken skew-symmetry and grading") {
  auto f = kRationals;
  CHECK_THROWS_AS(SuperAlgebra("bad", f, {"a", "b"}, {0, 0}, false,
                               [&](std::uint32_t i, std::uint32_t j) {
                                 return i == 0 && j == 1 ? SparseVec::unit(0, f) : SparseVec();
                               }),
                  std::logic_error);
  CHECK_THROWS_AS(SuperAlgebra("bad", f, {"a", "s"}, {0, 1}, false,
                               [&](std::uint32_t i, std::uint32_t j) {
                                 return i != j ? SparseVec::unit(0, f) : SparseVec();
                               }),
                  std::logic_error);
}

TEST_CASE("a perturbed constant on the last pair is caught by the full scan") {
  auto a = build_superalgebra(4, Kind::B, make_field(5));
  CHECK(check_jacobi(a, {}).jacobi_pass);
  auto bad = corrupt_last(a);
  auto rep = check_jacobi(bad, {});
  CHECK_FALSE(rep.jacobi_pass);
  CHECK(rep.witnesses.size() <= 10);
}

TEST_CASE("sorted-triple scan agrees with the ordered-triple oracle") {
  for (int p : {0, 3}) {
    auto a = build_superalgebra(3, Kind::B, make_field(p));
    CHECK(check_jacobi(a, {}).jacobi_pass == all_ordered_triples_vanish(a));
  }
  auto skew = build_superalgebra(3, Kind::B, kRationals);
  // The Jacobiator is graded-alternating: permuting a triple changes it by a sign only.
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(skew.dim() - 1));
  for (int t = 0; t < 300; ++t) {
    std::uint32_t i = pick(rng), j = pick(rng), k = pick(rng);
    auto base = jacobiator(skew, i, j, k);
    auto swapped = jacobiator(skew, j, i, k);
    CHECK((swapped == base || swapped == -base));
    auto swapped2 = jacobiator(skew, i, k, j);
    CHECK((swapped2 == base || swapped2 == -base));
  }
}

TEST_CASE("witnesses are deterministic and independent of the worker count") {
  auto a = build_superalgebra(7, Kind::B, kRationals);
  JacobiOptions one, three;
  three.workers = 3;
  auto r1 = check_jacobi(a, one), r3 = check_jacobi(a, three);
  REQUIRE(r1.witnesses.size() == r3.witnesses.size());
  CHECK(r1.witnesses.size() == 10);
  for (std::size_t t = 0; t < r1.witnesses.size(); ++t) {
    CHECK(r1.witnesses[t].i == r3.witnesses[t].i);
    CHECK(r1.witnesses[t].j == r3.witnesses[t].j);
    CHECK(r1.witnesses[t].k == r3.witnesses[t].k);
    CHECK(r1.witnesses[t].value == r3.witnesses[t].value);
    if (t > 0) CHECK(std::tie(r1.witnesses[t - 1].i, r1.witnesses[t - 1].j, r1.witnesses[t - 1].k) <
                     std::tie(r1.witnesses[t].i, r1.witnesses[t].j, r1.witnesses[t].k));
  }
}

TEST_CASE("full mode subsumes odd-only mode") {
  auto a = build_superalgebra(4, Kind::B, kRationals);
  JacobiOptions odd;
  odd.mode = JacobiMode::odd_only;
  CHECK(check_jacobi(a, {}).jacobi_pass);
  CHECK(check_jacobi(a, odd).jacobi_pass);
}

TEST_CASE("Jacobi failures need at least two odd arguments") {
  for (int l : {3, 5, 6}) {
    auto a = build_superalgebra(l, Kind::B, kRationals);
    JacobiOptions opts;
    opts.witness_cap = 1000000;
    auto rep = check_jacobi(a, opts);
    CHECK_FALSE(rep.jacobi_pass);
    for (const auto& w : rep.witnesses) CHECK(a.parity(w.i) + a.parity(w.j) + a.parity(w.k) >= 2);
  }
}

TEST_CASE("derived algebra and ideal closure") {
  auto f = kRationals;
  SuperAlgebra abelian("ab", f, {"x", "y"}, {0, 0}, false, [](std::uint32_t, std::uint32_t) { return SparseVec(); });
  CHECK(derived_algebra(abelian).empty());
  auto a = build_superalgebra(2, Kind::D, f);
  std::vector<SparseVec> all;
  for (std::uint32_t i = 0; i < a.dim(); ++i) all.push_back(SparseVec::unit(i, f));
  CHECK(ideal_closure(a, all).size() == a.dim());

  OrthogonalSpace s(2, Kind::D);
  auto seed_even = SparseVec::unit(static_cast<std::uint32_t>(s.pair_index(s.v(1), s.f(2))), f);
  auto seed_odd = SparseVec::unit(static_cast<std::uint32_t>(s.pair_count()), f);
  auto i1 = ideal_closure(a, {seed_even});
  auto i2 = ideal_closure(a, {seed_odd});
  CHECK(i1.size() == 3);
  CHECK(i2.size() == 5);
  CHECK(ideal_closure(a, i1) == i1);
  auto both = ideal_closure(a, {seed_even, seed_odd});
  CHECK(both.size() == 8);
}

TEST_CASE("derived algebra is the whole algebra in the simple cases") {
  CHECK(derived_algebra(build_superalgebra(3, Kind::B, make_field(3))).size() == 29);
  CHECK(derived_algebra(build_superalgebra(5, Kind::B, make_field(5))).size() == 87);
}

TEST_CASE("Burnside closure") {
  auto f = kRationals;
  SparseOperator id = {SparseVec::unit(0, f), SparseVec::unit(1, f)};
  CHECK_FALSE(burnside_irreducible({id}, 2, f));
  CHECK(associative_closure_dim({id}, 2, f) == 1);

  OrthogonalSpace s1(1, Kind::B);
  SpinModule m1(s1);
  CHECK(burnside_irreducible(spin_rep(m1, f), 2, f));
  CHECK(associative_closure_dim(spin_rep(m1, f), 2, f) == 4);

  auto f5 = make_field(5);
  OrthogonalSpace s5(5, Kind::B);
  SpinModule m5(s5);
  auto ops = spin_rep(m5, f5);
  CHECK(burnside_irreducible(ops, 32, f5));
  CHECK(commutant_dim(ops, 32, f5) == 1);

  // A reducible example: the Cartan subalgebra alone acts diagonally.
  std::vector<SparseOperator> cartan;
  for (auto k : s5.cartan_indices()) cartan.push_back(ops[k]);
  CHECK_FALSE(burnside_irreducible(cartan, 32, f5));
}

TEST_CASE("equivariant map dimensions") {
  auto f = kRationals;
  struct Case {
    int l;
    Kind kind;
    std::size_t expected;
  };
  for (auto c : {Case{2, Kind::B, 1}, Case{3, Kind::D, 0}, Case{2, Kind::D, 1}}) {
    OrthogonalSpace s(c.l, c.kind);
    SpinModule m(s);
    CHECK(equivariant_map_dim(spin_rep(m, f), so_adjoint(s, f), m.dim(), s.pair_count(), f) == c.expected);
  }
}

TEST_CASE("equivariant map dimension is invariant under conjugation") {
  auto f = make_field(7);
  OrthogonalSpace s(2, Kind::B);
  SpinModule m(s);
  auto rep = spin_rep(m, f);
  auto adj = so_adjoint(s, f);
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> val(0, 6);
  for (int trial = 0; trial < 3; ++trial) {
    Matrix p(f, 4, 4);
    std::optional<Matrix> pinv;
    do {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) p(i, j) = embed_integer(val(rng), f);
      pinv = inverse(p);
    } while (!pinv);
    std::vector<SparseOperator> conj;
    for (const auto& r : rep) conj.push_back(to_sparse_operator(p * to_matrix(r, f, 4) * *pinv));
    CHECK(equivariant_map_dim(conj, adj, 4, s.pair_count(), f) == 1);
  }
}

TEST_CASE("verify_isomorphism") {
  auto f = make_field(5);
  auto a = build_superalgebra(2, Kind::B, f);
  std::size_t n = a.dim();
  CHECK(verify_isomorphism(Matrix::identity(f, n), a, a));
  CHECK_FALSE(verify_isomorphism(Matrix(f, n, n), a, a));

  Scalar lambda = embed_integer(2, f);
  Scalar inv2 = (lambda * lambda).inverse();
  std::vector<int> parity;
  for (std::size_t i = 0; i < n; ++i) parity.push_back(a.parity(i));
  SuperAlgebra b("rescaled", f, a.labels(), parity, a.super(), [&](std::uint32_t i, std::uint32_t j) {
    auto v = a.bracket(i, j);
    return a.parity(i) && a.parity(j) ? v.scaled(inv2) : v;
  });
  Matrix phi = Matrix::identity(f, n);
  for (std::size_t i = 0; i < n; ++i)
    if (a.parity(i)) phi(i, i) = lambda;
  CHECK(verify_isomorphism(phi, a, b));
  CHECK_FALSE(verify_isomorphism(Matrix::identity(f, n), a, b));
}
