#pragma once

#include <memory>
#include <optional>

#include "spinlab/clifford.hpp"
#include "spinlab/superalgebra.hpp"

namespace spinlab {

class OddHalfSpinUnsupported : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Whether the odd-odd bracket of so ⊕ S is symmetric (a superalgebra candidate).
bool spin_bracket_symmetric(int l, Kind kind);

/// Shared data for one (l, kind, field): the pair basis, ρ on the (half-)spin module
/// and the inverse trace-form Gram matrix. Read-only after construction.
class SpinContext {
 public:
  SpinContext(int l, Kind kind, FieldSpec f);

  int l() const { return space_.l(); }
  Kind kind() const { return space_.kind(); }
  FieldSpec field() const { return field_; }
  const OrthogonalSpace& space() const { return space_; }
  const SpinModule& module() const { return module_; }
  const Matrix& gram() const { return gram_; }

  /// [s_i, s_j] ∈ so for module basis indices: the unique X with
  /// (1/2)tr(N(B_a)N(X)) = b(ρ(B_a)s_i, s_j) for all a (b̂ for kind D).
  SparseVec bracket_monomials(std::size_t i, std::size_t j) const;

  /// Bilinear extension to multivectors in the module.
  SparseVec spin_bracket(const Multivector& s, const Multivector& t) const;

 private:
  OrthogonalSpace space_;
  SpinModule module_;
  FieldSpec field_;
  Matrix gram_;
  SparseOperator gram_inv_;
  bool hat_;
};

/// so ⊕ S with brackets computed on demand from a SpinContext.
/// Even basis: the pair basis; odd basis: module monomials in increasing mask order.
class LazySpinAlgebra : public BracketSource {
 public:
  explicit LazySpinAlgebra(std::shared_ptr<const SpinContext> ctx);

  const std::string& name() const override { return name_; }
  FieldSpec field() const override { return ctx_->field(); }
  std::size_t dim() const override { return n0_ + ctx_->module().dim(); }
  int parity(std::size_t i) const override { return i >= n0_ ? 1 : 0; }
  bool super() const override { return super_; }
  std::string label(std::size_t i) const override;
  std::span<const SparseEntry> bracket_view(std::uint32_t i, std::uint32_t j, SparseVec& storage) const override;

  const SpinContext& context() const { return *ctx_; }
  std::size_t even_dim() const { return n0_; }
  std::uint32_t odd_index(Mask m) const;

 private:
  std::shared_ptr<const SpinContext> ctx_;
  std::string name_;
  std::size_t n0_;
  bool super_;
};

std::string spin_algebra_name(int l, Kind kind);

SuperAlgebra build_superalgebra(int l, Kind kind, FieldSpec f);
/// Tabulates an existing lazy algebra.
SuperAlgebra tabulate(const BracketSource& a);

/// Triples (1, v1···vl, v1···vr), 0 ≤ r ≤ l (even r for kind D).
std::vector<std::array<std::uint32_t, 3>> generator_triples(const LazySpinAlgebra& a);

struct ClassifyOptions {
  std::optional<JacobiMode> mode;  // default: full when n₁ ≤ 128, generators otherwise
  unsigned workers = 1;
  std::size_t witness_cap = 10;
  bool certify = false;
};

VerificationReport classify(int l, Kind kind, FieldSpec f, const ClassifyOptions& opts = {});

/// Dimension of the space of so-invariant bilinear maps S × S → so (S⁺ × S⁺ for kind D).
/// Works for odd l in kind D as well, where the answer is 0.
std::size_t spin_equivariant_dim(int l, Kind kind, FieldSpec f);

struct TypeDDecomposition {
  std::vector<SparseVec> first, second;  // row-reduced bases
  bool closed = false;                   // each is an ideal of the whole algebra
  bool annihilate = false;               // [first, second] = 0
  bool spans_whole = false;
};

/// Checks the two ideals of the l = 2 type-D algebra.
TypeDDecomposition decompose_type_d_l2(FieldSpec f);

}  // namespace spinlab
