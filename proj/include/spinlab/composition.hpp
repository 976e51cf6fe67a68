#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinlab/clifford.hpp"

namespace spinlab {

enum class CompositionKind { unit, binarion, quaternion, octonion };

std::string composition_name(CompositionKind k);
CompositionKind parse_composition(const std::string& s);

/// Multiplication table of a split composition algebra with integer entries.
/// Basis products are signed basis vectors and the norm is diagonal.
struct IntegerTable {
  std::size_t dim = 0;
  std::vector<IntTerm> product;  // entry i*dim + j is e_i e_j
  std::vector<int> norm;         // n(e_i)

  /// FNV-1a over the table entries and norm values.
  std::uint64_t checksum() const;
};

/// Split Cayley–Dickson doubling of k, repeated `doublings` times:
/// (a,b)(c,d) = (ac + d̄b, da + bc̄), n(a,b) = n(a) − n(b).
IntegerTable cayley_dickson_table(int doublings);

class CompositionAlgebra {
 public:
  using Element = std::vector<Scalar>;

  CompositionAlgebra(CompositionKind kind, FieldSpec f);

  CompositionKind kind() const { return kind_; }
  FieldSpec field() const { return field_; }
  std::size_t dim() const { return table_.dim; }
  const IntegerTable& table() const { return table_; }
  std::string label(std::size_t i) const;

  Element zero() const;
  Element unit() const { return basis(0); }
  Element basis(std::size_t i) const;

  Element multiply(const Element& a, const Element& b) const;
  Element commutator(const Element& a, const Element& b) const;
  /// (ab)c − a(bc)
  Element associator(const Element& a, const Element& b, const Element& c) const;
  Element conjugate(const Element& a) const;

  Scalar norm(const Element& a) const;
  /// n(a,b) = n(a+b) − n(a) − n(b), so n(a,a) = 2n(a).
  Scalar polar(const Element& a, const Element& b) const;
  Matrix polar_gram() const;

  Matrix left(const Element& a) const;
  Matrix right(const Element& a) const;
  /// ad_a = L_a − R_a
  Matrix ad(const Element& a) const;
  /// D_{a,b}(c) = [[a,b],c] − 3(a,b,c)
  Matrix inner_derivation(const Element& a, const Element& b) const;

 private:
  CompositionKind kind_;
  FieldSpec field_;
  IntegerTable table_;
};

CompositionAlgebra::Element operator+(const CompositionAlgebra::Element& a, const CompositionAlgebra::Element& b);
CompositionAlgebra::Element operator-(const CompositionAlgebra::Element& a, const CompositionAlgebra::Element& b);
CompositionAlgebra::Element scale(const Scalar& c, const CompositionAlgebra::Element& a);

/// Row-reduced basis of the solution space of D(ab) = D(a)b + aD(b).
std::vector<Matrix> derivation_algebra(const CompositionAlgebra& c);
/// Row-reduced basis of span{D_{a,b}} over basis pairs.
std::vector<Matrix> inner_derivation_span(const CompositionAlgebra& c);

/// Exhaustive basis checks plus seeded random triples for alternativity.
/// `failure` names the first identity that broke, empty when all hold.
struct CompositionIdentities {
  bool unit = false;
  bool composition_law = false;
  bool degree_two = false;
  bool alternative = false;
  bool anticommutator = false;  // ab + ba = −n(a,b)1 on C⁰
  std::string failure;
  bool all() const { return unit && composition_law && degree_two && alternative && anticommutator; }
};
CompositionIdentities check_composition_identities(const CompositionAlgebra& c, std::size_t random_triples = 200,
                                                   std::uint64_t seed = 0);

/// Properties of the Cayley algebra used by the Tits construction:
/// (i)   der C and ad_C preserve C⁰, kill 1, and so(C⁰,n) = der C ⊕ ad_C;
/// (ii)  [ad_a, ad_b] = 2D_{a,b} − ad_{[a,b]};
/// (iii) D_{a,b} + ½ad_{[a,b]} = 3(n(a,·)b − n(b,·)a) on C⁰.
struct LemmaCReport {
  bool part_i = false, part_ii = false, part_iii = false;
  std::size_t der_dim = 0, ad_dim = 0, so_dim = 0;
  std::string failure;
  bool all() const { return part_i && part_ii && part_iii; }
};
LemmaCReport check_lemma_C(const CompositionAlgebra& c);

}  // namespace spinlab
