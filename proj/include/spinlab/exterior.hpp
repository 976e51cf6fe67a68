#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "spinlab/linalg.hpp"

namespace spinlab {

/// Monomial v_{i1}...v_{ir} of the exterior algebra, stored as the bitmask
/// with bit i-1 set for each factor v_i.
using Mask = std::uint32_t;

constexpr int degree(Mask m) { return std::popcount(m); }

/// Sign of e_a ∧ e_b relative to e_{a|b}; 0 when the supports meet.
int wedge_sign(Mask a, Mask b);

/// (−1)^{r(r+1)/2} on a degree-r monomial.
constexpr int bar_sign(int r) { return ((r * (r + 1) / 2) & 1) ? -1 : 1; }
/// (−1)^{r(r−1)/2} on a degree-r monomial.
constexpr int hat_sign(int r) { return ((r * (r - 1) / 2) & 1) ? -1 : 1; }

inline Mask top_mask(int l) { return l >= 32 ? ~Mask{0} : (Mask{1} << l) - 1; }

/// Sorted index list such as "[1,2,5]"; "[]" for the unit.
std::string monomial_string(Mask m);
/// Product form such as "v1v2v5"; "1" for the unit.
std::string monomial_label(Mask m);

/// Element of the exterior algebra on l generators.
class Multivector {
 public:
  Multivector(int l, FieldSpec f);
  static Multivector monomial(int l, Mask m, Scalar c);
  static Multivector monomial(int l, Mask m, FieldSpec f) { return monomial(l, m, Scalar::one(f)); }

  int l() const { return l_; }
  FieldSpec field() const { return field_; }
  /// Coefficients indexed by mask.
  const SparseVec& coeffs() const { return coeffs_; }
  Scalar coefficient(Mask m) const { return coeffs_.at(m, field_); }
  bool is_zero() const { return coeffs_.empty(); }

  Multivector even_part() const;
  Multivector odd_part() const;

  Multivector operator+(const Multivector& o) const;
  Multivector operator-(const Multivector& o) const;
  Multivector scaled(const Scalar& c) const;
  friend bool operator==(const Multivector& a, const Multivector& b);

  /// List of (monomial, coefficient) pairs.
  std::string to_string() const;

 private:
  friend Multivector wedge(const Multivector&, const Multivector&);
  friend Multivector bar_involution(const Multivector&);
  friend Multivector hat_involution(const Multivector&);
  Multivector(int l, FieldSpec f, SparseVec c) : l_(l), field_(f), coeffs_(std::move(c)) {}
  void check_compatible(const Multivector& o) const;

  int l_;
  FieldSpec field_;
  SparseVec coeffs_;
};

Multivector wedge(const Multivector& s, const Multivector& t);
Multivector bar_involution(const Multivector& s);
Multivector hat_involution(const Multivector& s);
/// Coefficient of the top monomial v1...vl.
Scalar phi_functional(const Multivector& s);
Scalar form_b(const Multivector& s, const Multivector& t);
Scalar form_bhat(const Multivector& s, const Multivector& t);

/// Value of b (hat = false) or b̂ (hat = true) on two monomials, as an integer in {−1,0,1}.
int form_on_monomials(int l, Mask s, Mask t, bool hat);

/// Gram matrix over the 2^l monomials in increasing mask order.
Matrix form_gram(int l, FieldSpec f, bool hat);

}  // namespace spinlab
