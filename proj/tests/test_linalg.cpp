#include "doctest.h"

#include <random>

#include "spinlab/linalg.hpp"

using namespace spinlab;

namespace {

Scalar S(std::int64_t n, FieldSpec f) { return embed_integer(n, f); }

Matrix random_matrix(std::mt19937_64& rng, FieldSpec f, std::size_t r, std::size_t c, int density) {
  std::uniform_int_distribution<int> coin(0, 99), val(-4, 4);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (coin(rng) < density) m(i, j) = S(val(rng), f);
  return m;
}

}  // namespace

TEST_CASE("sparse vectors drop zeros and merge sorted") {
  auto f = kRationals;
  SparseVec a;
  a.push_back(1, S(2, f));
  a.push_back(4, S(3, f));
  SparseVec b;
  b.push_back(1, S(-2, f));
  b.push_back(2, S(1, f));
  auto c = a + b;
  REQUIRE(c.size() == 2);
  CHECK(c.entries()[0].index == 2);
  CHECK(c.entries()[1].index == 4);
  CHECK_FALSE(c.get(1).has_value());
  CHECK(c.at(4, f) == S(3, f));
  CHECK_THROWS(c.push_back(3, S(1, f)));
}

TEST_CASE("rank, kernel and inverse agree on random matrices") {
  std::mt19937_64 rng(11);
  for (auto p : {0, 3, 5, 7}) {
    auto f = make_field(p);
    for (int trial = 0; trial < 20; ++trial) {
      auto m = random_matrix(rng, f, 6, 8, 40);
      auto ker = kernel(m);
      CHECK(rank(m) + ker.size() == 8);
      for (const auto& k : ker) CHECK(m.apply(k).empty());
      CHECK(rank(m) == rank(m.transpose()));

      auto sq = random_matrix(rng, f, 5, 5, 70);
      auto inv = inverse(sq);
      CHECK(inv.has_value() == (rank(sq) == 5));
      if (inv) {
        CHECK(sq * *inv == Matrix::identity(f, 5));
        CHECK(*inv * sq == Matrix::identity(f, 5));
      }
    }
  }
}

TEST_CASE("reduced basis is in reduced row echelon form and spans the same space") {
  std::mt19937_64 rng(3);
  auto f = make_field(5);
  RowEchelon e(f, 10);
  std::vector<SparseVec> rows;
  for (int i = 0; i < 7; ++i) {
    auto m = random_matrix(rng, f, 1, 10, 50);
    rows.push_back(m.row(0));
    e.insert(rows.back());
  }
  auto basis = e.reduced_basis();
  CHECK(basis.size() == e.rank());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    CHECK(basis[i].front().value.is_one());
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (i != j) CHECK_FALSE(basis[j].get(basis[i].front().index).has_value());
  }
  for (const auto& r : rows) CHECK(e.contains(r));
  RowEchelon again(f, 10);
  for (const auto& r : basis) again.insert(r);
  for (const auto& r : rows) CHECK(again.contains(r));
}

TEST_CASE("coordinate solver recovers coefficients") {
  auto f = kRationals;
  std::vector<SparseVec> basis;
  basis.push_back(SparseVec::from_dense(std::vector<Scalar>{S(1, f), S(1, f), S(0, f)}));
  basis.push_back(SparseVec::from_dense(std::vector<Scalar>{S(0, f), S(1, f), S(2, f)}));
  CoordinateSolver solver(f, 3, basis);
  auto w = basis[0].scaled(S(3, f)) - basis[1].scaled(Scalar::from_fraction(1, 2, f));
  auto c = solver.coordinates(w);
  REQUIRE(c.has_value());
  CHECK(c->at(0, f) == S(3, f));
  CHECK(c->at(1, f) == Scalar::from_fraction(-1, 2, f));
  CHECK_FALSE(solver.coordinates(SparseVec::unit(0, f)).has_value());
  basis.push_back(basis[0] + basis[1]);
  CHECK_THROWS_AS(CoordinateSolver(f, 3, basis), std::invalid_argument);
}

TEST_CASE("matrix flatten round trip and commutator trace") {
  std::mt19937_64 rng(5);
  auto f = make_field(7);
  auto a = random_matrix(rng, f, 4, 4, 60);
  auto b = random_matrix(rng, f, 4, 4, 60);
  CHECK(Matrix::unflatten(a.flatten(), f, 4, 4) == a);
  auto c = commutator(a, b);
  Scalar tr = Scalar::zero(f);
  for (int i = 0; i < 4; ++i) tr += c(i, i);
  CHECK(tr.is_zero());
  CHECK(a.reduce_mod(f) == a);
}
