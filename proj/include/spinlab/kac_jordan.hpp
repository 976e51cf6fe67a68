#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "spinlab/exterior.hpp"
#include "spinlab/linalg.hpp"

namespace spinlab {

/// ℤ₂-graded algebra given by a full table of basis products.
class GradedAlgebra {
 public:
  GradedAlgebra(std::string name, FieldSpec f, std::vector<std::string> labels, std::vector<int> parity,
                std::vector<SparseVec> products);

  const std::string& name() const { return name_; }
  FieldSpec field() const { return field_; }
  std::size_t dim() const { return labels_.size(); }
  int parity(std::size_t i) const { return parity_[i]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

  const SparseVec& product(std::size_t i, std::size_t j) const { return products_[i * dim() + j]; }
  void set_product(std::size_t i, std::size_t j, SparseVec v) { products_[i * dim() + j] = std::move(v); }
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const;

  /// Left multiplication by a basis vector.
  Matrix left(std::size_t i) const;
  /// Parity of a homogeneous operator, or −1 when it mixes degrees.
  int operator_parity(const Matrix& m) const;

 private:
  std::string name_;
  FieldSpec field_;
  std::vector<std::string> labels_;
  std::vector<int> parity_;
  std::vector<SparseVec> products_;
};

/// [A,B] = AB − (−1)^{ab}BA for homogeneous operators of parities a, b.
Matrix supercommutator(const Matrix& a, int pa, const Matrix& b, int pb);

/// Kaplansky superalgebra K on the basis e, x, y (e even, x and y odd).
GradedAlgebra kaplansky(FieldSpec f);
/// Supersymmetric form with (e|e) = 1/2, (x|y) = 1 = −(y|x).
Scalar kaplansky_form(std::size_t a, std::size_t b, FieldSpec f);

/// φ⊗id and id⊗φ on K⊗K (9×9, index 3a + b) for a homogeneous operator φ on K;
/// id⊗φ picks up the sign (−1)^{φ̄ā} on a⊗b.
Matrix kaplansky_tensor_left(const Matrix& phi, FieldSpec f);
Matrix kaplansky_tensor_right(const Matrix& phi, int phi_parity, FieldSpec f);

/// Kac superalgebra J = k1 ⊕ (K⊗K). Index 0 is 1 and a⊗b sits at 1 + 3a + b.
GradedAlgebra kac(FieldSpec f);
std::size_t kac_index(std::size_t a, std::size_t b);

/// Coefficient of 1.
Scalar normalized_trace(const SparseVec& p, FieldSpec f);

/// Inner derivations of J acting on J⁰ = K⊗K (9×9 matrices in the order of kac indices 1..9).
/// The basis is the row-reduced span of all [L_p, L_q], so every element is homogeneous.
struct KacDerivations {
  std::vector<Matrix> basis;
  std::vector<int> parity;
  std::size_t even_count() const;
  std::size_t odd_count() const { return basis.size() - even_count(); }
  /// Coordinates of an operator on J⁰ in the basis; throws when it lies outside the span.
  SparseVec coordinates(const Matrix& m) const;

  std::shared_ptr<const CoordinateSolver> solver;
};
KacDerivations kac_inner_derivations(FieldSpec f);

/// [L_p, L_q] on J restricted to J⁰.
Matrix kac_derivation(const GradedAlgebra& j, std::size_t p, std::size_t q);

/// Elements of the Grassmann envelope, the parity-matched part of Λ(ξ₁..ξ_m) ⊗ J.
/// Coordinates live at mask · dim(J) + (J index).
class GrassmannEnvelope {
 public:
  GrassmannEnvelope(const GradedAlgebra& j, int m);

  int generators() const { return m_; }
  const GradedAlgebra& algebra() const { return j_; }
  std::uint32_t index(Mask xi, std::size_t b) const { return static_cast<std::uint32_t>(xi * j_.dim() + b); }
  Mask monomial_of(std::uint32_t idx) const { return static_cast<Mask>(idx / j_.dim()); }
  std::size_t basis_of(std::uint32_t idx) const { return idx % j_.dim(); }
  bool admissible(const SparseVec& x) const;

  SparseVec unit() const;
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
  /// Λ-linear extension of the normalized trace, returned as an element of Λ₀ ⊗ 1.
  SparseVec trace(const SparseVec& x) const;
  /// x³ − 3t(x)x² + (9/2 t(x)² − 3/2 t(x²))x − (t(x³) − 9/2 t(x²)t(x) + 9/2 t(x)³)1
  SparseVec ch3(const SparseVec& x) const;

  std::string to_string(const SparseVec& x) const;

 private:
  const GradedAlgebra& j_;
  int m_;
};

enum class ScanStrategy { elementary, random };
enum class Ch3Verdict { pass, witness, inconclusive };
std::string verdict_name(Ch3Verdict v);

struct Ch3ScanOptions {
  int m = 6;
  ScanStrategy strategy = ScanStrategy::elementary;
  std::size_t samples = 200;  // random strategy
  std::uint64_t seed = 0;
};

struct Ch3ScanResult {
  Ch3Verdict verdict = Ch3Verdict::inconclusive;
  std::size_t evaluated = 0;
  std::string x, value;  // witness, when found
};

/// Elementary strategy: x = Σᵢ ξᵢ⊗bᵢ + Σ_S λ_S ξ_S⊗b₀ where (b₁..b_m) runs over nondecreasing
/// sequences of {0} ∪ odd basis, b₀ over the even basis, and λ over 0/1 vectors with at most two
/// ones indexed by the even monomials of degree ≤ 2. Random strategy: seeded coefficients in
/// [−2, 2] on every admissible coordinate. No witness gives pass in characteristic 5 and
/// inconclusive elsewhere.
Ch3ScanResult ch3_scan(FieldSpec f, const Ch3ScanOptions& opts);

struct JordanCheckResult {
  bool pass = true;
  std::size_t samples = 0;
  std::string witness;
};

/// Samples x, y in G(J) and checks xy = yx and (x²y)x = x²(yx).
JordanCheckResult jordan_envelope_check(const GradedAlgebra& j, int m, std::size_t samples, std::uint64_t seed);
JordanCheckResult jordan_envelope_check(FieldSpec f, int m, std::size_t samples, std::uint64_t seed);

}  // namespace spinlab
