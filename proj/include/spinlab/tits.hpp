#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spinlab/composition.hpp"
#include "spinlab/kac_jordan.hpp"
#include "spinlab/superalgebra.hpp"

namespace spinlab {

class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IsometryNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// T(C, J) = der C ⊕ (C⁰⊗J⁰) ⊕ inder J for the Kac superalgebra J.
///
/// Basis order: the row-reduced der C basis, then a⊗x for a = e1..e_{d−1} and x the nine
/// non-unit Kac basis vectors (a-major), then the row-reduced inder J basis.
class TitsAlgebra {
 public:
  TitsAlgebra(CompositionKind kind, FieldSpec f);

  const SuperAlgebra& algebra() const { return *algebra_; }
  const CompositionAlgebra& composition() const { return c_; }
  const GradedAlgebra& jordan() const { return j_; }
  const std::vector<Matrix>& derivations() const { return der_; }
  const KacDerivations& inner() const { return inder_; }

  std::size_t der_count() const { return der_.size(); }
  std::size_t trace_zero_dim() const { return c_.dim() - 1; }
  /// Index of e_a ⊗ x for 1 ≤ a < dim C and 1 ≤ x ≤ 9.
  std::uint32_t middle(std::size_t a, std::size_t x) const;
  std::uint32_t inder_index(std::size_t k) const;

  /// Coordinates of a derivation of C (as a dim C square matrix) in the der C basis.
  SparseVec der_coordinates(const Matrix& d) const;

 private:
  SparseVec rule(std::uint32_t i, std::uint32_t j) const;
  std::size_t algebra_dim() const;

  CompositionAlgebra c_;
  GradedAlgebra j_;
  std::vector<Matrix> der_;
  std::shared_ptr<const CoordinateSolver> der_solver_;
  KacDerivations inder_;
  std::unique_ptr<SuperAlgebra> algebra_;
};

SuperAlgebra build_tits(CompositionKind kind, FieldSpec f);

/// Ideals of T(k, J) = inder J generated by φ⊗id and id⊗φ for φ = [L_e, L_x] ∈ der K.
struct UnitSplit {
  std::vector<SparseVec> first, second;
  bool commute = false;  // [first, second] = 0
  bool direct = false;   // first ⊕ second is the whole algebra
};
UnitSplit split_unit_tits(FieldSpec f);

/// M = C⁰ ⊕ U⊗U (C⁰ first, then x⊗x, x⊗y, y⊗x, y⊗y) with the polar form of
/// Q|C⁰ = −n and Q(u₁⊗u₂, v₁⊗v₂) = −(u₁|v₁)(u₂|v₂).
struct QSpace {
  std::size_t c0_dim = 0;
  Matrix gram;
  std::size_t dim() const { return gram.rows(); }
  /// Index in M of u₁⊗u₂ with u ∈ {0: x, 1: y}.
  std::size_t tensor_index(std::size_t u1, std::size_t u2) const { return c0_dim + 2 * u1 + u2; }
  /// σ^Q_{x,y} = Q(x,·)y − Q(y,·)x for basis vectors.
  Matrix sigma(std::size_t x, std::size_t y) const;
};
QSpace make_qspace(const CompositionAlgebra& c);

/// so(M,Q) on the basis σ^Q_{i,j}, i < j.
struct SoMQ {
  QSpace space;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<Matrix> basis;
  std::shared_ptr<const CoordinateSolver> solver;
  std::unique_ptr<SuperAlgebra> algebra;

  std::size_t pair_index(std::size_t i, std::size_t j) const;
  SparseVec coordinates(const Matrix& x) const;
};
/// Throws DegenerateForm when Q is singular.
SoMQ build_so_MQ(const CompositionAlgebra& c);

/// Φ₀ from the even part of T(C, J) onto so(M,Q).
struct Phi0 {
  std::vector<std::uint32_t> even;  // T indices in basis order
  std::vector<Matrix> images;       // dim M square matrices, one per even index
  Matrix map;                       // coordinates in so(M,Q), columns follow `even`
};
Phi0 phi0(const TitsAlgebra& t, const SoMQ& so);

/// Ψ on the basis of M, acting on C⊗(U⊕U) with basis index 4c + s where s = 0,1 for (x,0),(y,0)
/// and s = 2,3 for (0,x),(0,y).
std::vector<Matrix> spin_map_psi(const CompositionAlgebra& c);
/// ρ(σ^Q_{i,j}) = −½[Ψ(i), Ψ(j)].
Matrix spin_rho(const std::vector<Matrix>& psi, std::size_t i, std::size_t j);

/// Φ₁ from the odd part of T(C, J) onto C⊗(U⊕U). `negate` flips the sign on the inder J part.
struct Phi1 {
  std::vector<std::uint32_t> odd;
  Matrix map;
};
Phi1 phi1(const TitsAlgebra& t, bool negate = false);

struct IntertwineResult {
  bool pass = true;
  std::size_t checked = 0;
  std::string witness;
};
/// [Φ₀⁻¹(σ^Q_{a,u₁⊗u₂}), Φ₁⁻¹(w)] = Φ₁⁻¹(ρ(σ^Q_{a,u₁⊗u₂})w) on all generators and basis w.
IntertwineResult phi1_intertwine(const TitsAlgebra& t, bool negate = false);

struct CrossIdentification {
  bool verified = false;
  std::string status;  // "verified", "holds over quadratic extension", or a failure description
  Matrix isometry;     // W × M, with isometryᵗ·Gram_W·isometry = multiplier·Gram_M
  Scalar multiplier;
  bool reflected = false;
  Scalar lambda;       // odd rescaling
  Matrix map;          // T(octonion, J) → type-B l = 5, columns follow the T basis
  std::size_t equivariant_dim = 0;
};
/// Matches T(octonion, Kac) with the l = 5 type-B algebra over a finite field.
CrossIdentification cross_identify_with_typeB(FieldSpec f);

/// Columns: a hyperbolic basis e₁, f₁, …, e_r, f_r followed by an orthogonal basis of the
/// anisotropic remainder. Seeded random search with enumeration as fallback.
Matrix hyperbolic_basis(const Matrix& gram, std::uint64_t seed = 0);

}  // namespace spinlab
