#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spinlab/exterior.hpp"

namespace spinlab {

enum class Kind { B, D };

std::string kind_name(Kind k);

/// Signed integer coefficient on a basis index; used for the integral operators ρ and the so bracket.
struct IntTerm {
  std::uint32_t index;
  std::int32_t coeff;
};

/// The quadratic space W = ku ⊕ V ⊕ V* (kind B, dim 2l+1) or V ⊕ V* (kind D, dim 2l)
/// with polar form q(u,u) = −2, q(v_i,f_j) = δ_ij, together with the ordered pair basis
/// {[w_a,w_b]· : a < b} of so(q).
///
/// Ambient order is (u,) v1..vl, f1..fl.
class OrthogonalSpace {
 public:
  OrthogonalSpace(int l, Kind kind);

  int l() const { return l_; }
  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  int u() const;
  int v(int i) const { return offset_ + i - 1; }
  int f(int i) const { return offset_ + l_ + i - 1; }
  std::string vector_label(int a) const;

  /// Polar form on two ambient basis vectors.
  int polar(int a, int b) const;

  std::size_t pair_count() const { return pairs_.size(); }
  std::pair<int, int> pair(std::size_t k) const { return pairs_[k]; }
  /// Index of [w_a,w_b]· for a < b.
  std::size_t pair_index(int a, int b) const { return pair_index_[a * dim_ + b]; }
  std::string pair_label(std::size_t k) const;
  bool is_cartan(std::size_t k) const;
  std::vector<std::size_t> cartan_indices() const;

  /// Coordinates of [x,y]· for ambient vectors given by integer coordinates.
  std::vector<IntTerm> wedge_pair(std::span<const int> x, std::span<const int> y) const;

  /// Integer image of an ambient basis vector under [[w_a,w_b]·, ·]·.
  std::vector<IntTerm> natural_action(std::size_t k, int w) const;

  /// [B_a, B_b] in the pair basis.
  std::vector<IntTerm> so_bracket(std::size_t a, std::size_t b) const;

 private:
  int l_;
  Kind kind_;
  int offset_;
  std::size_t dim_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::size_t> pair_index_;
};

/// Labels in pair-basis order; Cartan elements [v_i,f_i]· are reported through cartan.
struct SoBasis {
  std::vector<std::string> labels;
  std::vector<bool> cartan;
};
SoBasis so_basis(int l, Kind kind);

/// Matrix of w ↦ [X, w]· on the ambient space for X given in pair coordinates.
Matrix natural_matrix(const OrthogonalSpace& space, const SparseVec& x, FieldSpec f);

/// (1/2) tr(N(X) N(Y)).
Scalar trace_form(const OrthogonalSpace& space, const SparseVec& x, const SparseVec& y, FieldSpec f);

/// 4(q(w1,w4)q(w2,w3) − q(w1,w3)q(w2,w4)) for pair basis elements [w1,w2]·, [w3,w4]·.
int trace_form_closed(const OrthogonalSpace& space, std::size_t a, std::size_t b);

/// Gram matrix of the trace form on the pair basis, computed from natural matrices.
/// Throws DegenerateForm when singular.
Matrix gram_matrix(const OrthogonalSpace& space, FieldSpec f);

/// so bracket on pair coordinates.
SparseVec so_bracket(const OrthogonalSpace& space, const SparseVec& x, const SparseVec& y, FieldSpec f);

/// Λ(x) for x ∈ V ⊕ V* with integer coordinates on v1..vl then f1..fl: l_v + df on ⋀V.
Matrix lambda_op(int l, std::span<const Scalar> v_coeffs, std::span<const Scalar> f_coeffs);

/// Image of a monomial under Λ(w) for an ambient basis vector w ≠ u.
/// Returns false when the image is zero.
bool lambda_basis(const OrthogonalSpace& space, int w, Mask m, Mask& out, int& sign);

/// The spin module ⋀V (kind B) or the half-spin module ⋀₀V (kind D) with ρ tabulated on the pair basis.
/// Immutable after construction and safe to share across threads.
class SpinModule {
 public:
  explicit SpinModule(const OrthogonalSpace& space);

  const OrthogonalSpace& space() const { return space_; }
  std::size_t dim() const { return masks_.size(); }
  Mask mask(std::size_t i) const { return masks_[i]; }
  /// Module index of a mask, or −1 when the mask lies outside the module.
  std::int64_t index(Mask m) const;

  /// ρ(B_k) applied to module basis vector i.
  std::span<const IntTerm> action(std::size_t k, std::size_t i) const;
  Matrix matrix(std::size_t k, FieldSpec f) const;
  /// ρ(X) for X in pair coordinates.
  Matrix matrix(const SparseVec& x, FieldSpec f) const;

 private:
  OrthogonalSpace space_;
  std::vector<Mask> masks_;
  std::vector<std::int64_t> index_;
  std::vector<std::uint32_t> offsets_;
  std::vector<IntTerm> terms_;
};

/// ρ(B_k) applied to a monomial of the full exterior algebra.
std::vector<IntTerm> rho_on_mask(const OrthogonalSpace& space, std::size_t k, Mask m);

}  // namespace spinlab
