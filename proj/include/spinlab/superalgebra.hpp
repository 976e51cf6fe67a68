#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spinlab/linalg.hpp"

namespace spinlab {

/// Column images of a linear operator: entry j is the image of basis vector j.
using SparseOperator = std::vector<SparseVec>;

SparseOperator to_sparse_operator(const Matrix& m);
Matrix to_matrix(const SparseOperator& op, FieldSpec f, std::size_t rows);
SparseVec apply(const SparseOperator& op, const SparseVec& v, FieldSpec f, std::size_t rows);

/// Read access to the bracket of a ℤ₂-graded algebra on basis vectors.
///
/// When super() is true the odd-odd bracket is symmetric and Koszul signs apply
/// (a Lie superalgebra candidate); otherwise the bracket is skew on every pair
/// (an ordinary Lie algebra candidate with a compatible grading).
class BracketSource {
 public:
  virtual ~BracketSource() = default;

  virtual const std::string& name() const = 0;
  virtual FieldSpec field() const = 0;
  virtual std::size_t dim() const = 0;
  virtual int parity(std::size_t i) const = 0;
  virtual bool super() const = 0;
  virtual std::string label(std::size_t i) const = 0;

  /// [b_i, b_j]; `storage` may be used to hold a freshly computed result.
  virtual std::span<const SparseEntry> bracket_view(std::uint32_t i, std::uint32_t j, SparseVec& storage) const = 0;

  SparseVec bracket(std::uint32_t i, std::uint32_t j) const;
  /// acc += c · [b_i, b_j]
  void add_bracket(std::uint32_t i, std::uint32_t j, const Scalar& c, Accumulator& acc) const;
  /// [x, y] for arbitrary coordinate vectors.
  SparseVec bracket(const SparseVec& x, const SparseVec& y) const;

  std::pair<std::size_t, std::size_t> dims() const;
  /// −(−1)^{x̄ȳ} with Koszul signs, −1 otherwise: [b_j, b_i] = swap_sign · [b_i, b_j].
  int swap_sign(std::size_t i, std::size_t j) const { return super() && parity(i) && parity(j) ? 1 : -1; }
};

/// ℤ₂-graded algebra stored as a full table of structure constants.
class SuperAlgebra : public BracketSource {
 public:
  using Rule = std::function<SparseVec(std::uint32_t, std::uint32_t)>;

  /// Tabulates `rule` on all pairs i ≤ j and fills the rest by graded skew-symmetry,
  /// after checking it on the computed pairs when `check_skew` is set.
  /// Throws std::logic_error when the rule violates the grading or graded skew-symmetry.
  SuperAlgebra(std::string name, FieldSpec f, std::vector<std::string> labels, std::vector<int> parity, bool super,
               const Rule& rule, bool check_skew = true);

  const std::string& name() const override { return name_; }
  FieldSpec field() const override { return field_; }
  std::size_t dim() const override { return labels_.size(); }
  int parity(std::size_t i) const override { return parity_[i]; }
  bool super() const override { return super_; }
  std::string label(std::size_t i) const override { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::span<const SparseEntry> bracket_view(std::uint32_t i, std::uint32_t j, SparseVec& storage) const override;
  std::span<const SparseEntry> table(std::uint32_t i, std::uint32_t j) const;

  /// Same basis with every structure constant reduced into `target`.
  SuperAlgebra reduce_mod(FieldSpec target) const;
  SuperAlgebra renamed(std::string name) const;

  friend bool operator==(const SuperAlgebra& a, const SuperAlgebra& b);

 private:
  SuperAlgebra() = default;

  std::string name_;
  FieldSpec field_;
  std::vector<std::string> labels_;
  std::vector<int> parity_;
  bool super_ = false;
  std::vector<std::uint64_t> offsets_;
  std::vector<SparseEntry> entries_;
};

struct Witness {
  std::uint32_t i, j, k;
  SparseVec value;
};

enum class JacobiMode { full, odd_only, generators };
std::string mode_name(JacobiMode m);
JacobiMode parse_mode(const std::string& s);

struct JacobiOptions {
  JacobiMode mode = JacobiMode::full;
  std::vector<std::array<std::uint32_t, 3>> triples;  // generators mode
  std::size_t witness_cap = 10;
  unsigned workers = 1;
};

enum class Simplicity { not_attempted, certified, failed };
std::string simplicity_name(Simplicity s);

struct SimplicityCertificate {
  bool derived_is_whole = false;
  bool odd_irreducible = false;
  bool no_annihilating_ideal = false;
  std::size_t derived_dim = 0;
  std::size_t closure_dim = 0;
  std::size_t annihilating_ideal_dim = 0;
  bool certified() const { return derived_is_whole && odd_irreducible && no_annihilating_ideal; }
};

struct VerificationReport {
  std::string algebra;
  FieldSpec field;
  JacobiMode mode = JacobiMode::full;
  bool jacobi_pass = false;
  std::vector<Witness> witnesses;
  std::pair<std::size_t, std::size_t> dims{0, 0};
  bool symmetric = false;
  Simplicity simplicity = Simplicity::not_attempted;
  std::vector<std::string> notes;
  double elapsed_ms = 0;
};

/// J(x,y,z) = [[x,y],z] + (−1)^{x̄ȳ}[y,[x,z]] − [x,[y,z]] on basis vectors (sign only in super mode).
SparseVec jacobiator(const BracketSource& a, std::uint32_t i, std::uint32_t j, std::uint32_t k);

/// Scans basis triples i ≤ j ≤ k in lexicographic order (the Jacobiator is graded-alternating,
/// so this is equivalent to scanning all ordered triples), or the supplied triples in
/// generators mode. Stops once witness_cap witnesses are collected. Results do not depend on
/// the worker count.
VerificationReport check_jacobi(const BracketSource& a, const JacobiOptions& opts);

/// Row-reduced basis of the smallest subspace containing the seeds and stable under ad of every basis vector.
std::vector<SparseVec> ideal_closure(const BracketSource& a, const std::vector<SparseVec>& seeds);

/// Row-reduced basis of the span of all brackets.
std::vector<SparseVec> derived_algebra(const BracketSource& a);

/// Dimension of the unital associative algebra generated by the operators.
std::size_t associative_closure_dim(const std::vector<SparseOperator>& ops, std::size_t n, FieldSpec f);
bool burnside_irreducible(const std::vector<SparseOperator>& ops, std::size_t n, FieldSpec f);

/// Basis of {c : Σ c_a v_a = 0}.
std::vector<SparseVec> linear_relations(const std::vector<SparseVec>& vectors, std::size_t ncols, FieldSpec f);

/// Dimension of the space of bilinear maps T: S × S → g with σ·T(s,t) = T(σs,t) + T(s,σt)
/// for the listed generators σ. rep[a] acts on S (dim n_s) and adjoint[a] on g (dim n_g).
/// Unknowns that a diagonal generator forces to vanish by weight are pruned first.
std::size_t equivariant_map_dim(const std::vector<SparseOperator>& rep, const std::vector<SparseOperator>& adjoint,
                                std::size_t n_s, std::size_t n_g, FieldSpec f);

/// Basis of the same solution space (coordinates indexed by (i·n_s + j)·n_g + k).
std::vector<SparseVec> equivariant_maps(const std::vector<SparseOperator>& rep,
                                        const std::vector<SparseOperator>& adjoint, std::size_t n_s, std::size_t n_g,
                                        FieldSpec f);

/// Even-part action on the odd part and adjoint action of the even part, as sparse operators.
struct EvenOddActions {
  std::vector<std::uint32_t> even, odd;
  std::vector<SparseOperator> on_odd;   // indexed like `even`, coordinates in `odd` order
  std::vector<SparseOperator> on_even;  // indexed like `even`, coordinates in `even` order
};
EvenOddActions even_odd_actions(const BracketSource& a);

SimplicityCertificate simplicity_certificate(const BracketSource& a);

/// The even part as an algebra in its own right, basis in increasing index order.
SuperAlgebra even_subalgebra(const BracketSource& a);

/// map is dim(B) × dim(A), column j the image of basis vector j of A.
/// Returns an explanation of the first failure, or nullopt when map is a parity-preserving
/// bijection that preserves brackets.
std::optional<std::string> isomorphism_defect(const Matrix& map, const BracketSource& a, const BracketSource& b);
bool verify_isomorphism(const Matrix& map, const BracketSource& a, const BracketSource& b);

}  // namespace spinlab
