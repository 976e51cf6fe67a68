#include "spinlab/spin_construct.hpp"

#include <stdexcept>

namespace spinlab {

bool spin_bracket_symmetric(int l, Kind kind) {
  int r = l % 4;
  return kind == Kind::B ? (r == 1 || r == 2) : (r == 2 || r == 3);
}

SpinContext::SpinContext(int l, Kind kind, FieldSpec f)
    : space_(l, kind), module_(space_), field_(f), hat_(kind == Kind::D) {
  if (kind == Kind::D && l % 2 == 1)
    throw OddHalfSpinUnsupported("the form on the half-spin module vanishes for odd l");
  gram_ = gram_matrix(space_, f);
  auto inv = inverse(gram_);
  if (!inv) throw DegenerateForm("trace form is degenerate over " + f.name());
  gram_inv_ = to_sparse_operator(*inv);
}

SparseVec SpinContext::bracket_monomials(std::size_t i, std::size_t j) const {
  Mask target = top_mask(l()) & ~module_.mask(j);
  Accumulator acc(field_, space_.pair_count());
  for (std::size_t a = 0; a < space_.pair_count(); ++a)
    for (const auto& t : module_.action(a, i)) {
      if (module_.mask(t.index) != target) continue;
      int r = t.coeff * form_on_monomials(l(), target, module_.mask(j), hat_);
      if (r != 0) acc.add_scaled(gram_inv_[a], embed_integer(r, field_));
    }
  return acc.take();
}

SparseVec SpinContext::spin_bracket(const Multivector& s, const Multivector& t) const {
  if (s.l() != l() || t.l() != l()) throw std::invalid_argument("multivector rank does not match the context");
  Accumulator acc(field_, space_.pair_count());
  for (const auto& x : s.coeffs()) {
    auto i = module_.index(x.index);
    if (i < 0) throw OddHalfSpinUnsupported("argument outside the half-spin module");
    for (const auto& y : t.coeffs()) {
      auto j = module_.index(y.index);
      if (j < 0) throw OddHalfSpinUnsupported("argument outside the half-spin module");
      acc.add_scaled(bracket_monomials(i, j), x.value * y.value);
    }
  }
  return acc.take();
}

std::string spin_algebra_name(int l, Kind kind) {
  return "type-" + std::string(kind == Kind::B ? "b" : "d") + " l=" + std::to_string(l);
}

LazySpinAlgebra::LazySpinAlgebra(std::shared_ptr<const SpinContext> ctx)
    : ctx_(std::move(ctx)),
      name_(spin_algebra_name(ctx_->l(), ctx_->kind())),
      n0_(ctx_->space().pair_count()),
      super_(spin_bracket_symmetric(ctx_->l(), ctx_->kind())) {}

std::string LazySpinAlgebra::label(std::size_t i) const {
  return i < n0_ ? ctx_->space().pair_label(i) : monomial_label(ctx_->module().mask(i - n0_));
}

std::uint32_t LazySpinAlgebra::odd_index(Mask m) const {
  auto i = ctx_->module().index(m);
  if (i < 0) throw std::invalid_argument("monomial outside the module");
  return static_cast<std::uint32_t>(n0_ + i);
}

std::span<const SparseEntry> LazySpinAlgebra::bracket_view(std::uint32_t i, std::uint32_t j,
                                                           SparseVec& storage) const {
  FieldSpec f = field();
  storage = SparseVec();
  if (i < n0_ && j < n0_) {
    for (const auto& t : ctx_->space().so_bracket(i, j)) storage.push_back(t.index, embed_integer(t.coeff, f));
  } else if (i < n0_) {
    for (const auto& t : ctx_->module().action(i, j - n0_))
      storage.push_back(static_cast<std::uint32_t>(n0_ + t.index), embed_integer(t.coeff, f));
  } else if (j < n0_) {
    for (const auto& t : ctx_->module().action(j, i - n0_))
      storage.push_back(static_cast<std::uint32_t>(n0_ + t.index), embed_integer(-t.coeff, f));
  } else {
    storage = ctx_->bracket_monomials(i - n0_, j - n0_);
  }
  return storage.entries();
}

SuperAlgebra tabulate(const BracketSource& a) {
  std::vector<std::string> labels;
  std::vector<int> parity;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    labels.push_back(a.label(i));
    parity.push_back(a.parity(i));
  }
  return SuperAlgebra(a.name(), a.field(), std::move(labels), std::move(parity), a.super(),
                      [&](std::uint32_t i, std::uint32_t j) { return a.bracket(i, j); });
}

SuperAlgebra build_superalgebra(int l, Kind kind, FieldSpec f) {
  LazySpinAlgebra lazy(std::make_shared<SpinContext>(l, kind, f));
  return tabulate(lazy);
}

std::vector<std::array<std::uint32_t, 3>> generator_triples(const LazySpinAlgebra& a) {
  int l = a.context().l();
  std::vector<std::array<std::uint32_t, 3>> out;
  std::uint32_t one = a.odd_index(0), top = a.odd_index(top_mask(l));
  for (int r = 0; r <= l; ++r) {
    if (a.context().kind() == Kind::D && r % 2) continue;
    out.push_back({one, top, a.odd_index(top_mask(r))});
  }
  return out;
}

VerificationReport classify(int l, Kind kind, FieldSpec f, const ClassifyOptions& opts) {
  auto ctx = std::make_shared<SpinContext>(l, kind, f);
  LazySpinAlgebra lazy(ctx);
  JacobiMode mode = opts.mode.value_or(ctx->module().dim() <= 128 ? JacobiMode::full : JacobiMode::generators);
  JacobiOptions jo;
  jo.mode = mode;
  jo.workers = opts.workers;
  jo.witness_cap = opts.witness_cap;
  VerificationReport rep;
  if (mode == JacobiMode::generators) {
    jo.triples = generator_triples(lazy);
    rep = check_jacobi(lazy, jo);
  } else {
    auto table = tabulate(lazy);
    rep = check_jacobi(table, jo);
    if (opts.certify && rep.jacobi_pass) {
      auto cert = simplicity_certificate(table);
      rep.simplicity = cert.certified() ? Simplicity::certified : Simplicity::failed;
    }
  }
  rep.symmetric = lazy.super();
  rep.notes.push_back(rep.symmetric ? "odd bracket symmetric" : "odd bracket skew");
  return rep;
}

std::size_t spin_equivariant_dim(int l, Kind kind, FieldSpec f) {
  OrthogonalSpace space(l, kind);
  SpinModule module(space);
  std::vector<SparseOperator> rep, adjoint;
  for (std::size_t a = 0; a < space.pair_count(); ++a) {
    rep.push_back(to_sparse_operator(module.matrix(a, f)));
    SparseOperator ad;
    for (std::size_t b = 0; b < space.pair_count(); ++b)
      ad.push_back(so_bracket(space, SparseVec::unit(a, f), SparseVec::unit(b, f), f));
    adjoint.push_back(std::move(ad));
  }
  return equivariant_map_dim(rep, adjoint, module.dim(), space.pair_count(), f);
}

TypeDDecomposition decompose_type_d_l2(FieldSpec f) {
  auto a = build_superalgebra(2, Kind::D, f);
  OrthogonalSpace s(2, Kind::D);
  auto pair = [&](int x, int y) { return SparseVec::unit(static_cast<std::uint32_t>(s.pair_index(x, y)), f); };
  std::uint32_t n0 = static_cast<std::uint32_t>(s.pair_count());
  auto odd = [&](Mask m) { return SparseVec::unit(n0 + (m == 0 ? 0u : 1u), f); };
  auto h1 = pair(s.v(1), s.f(1)), h2 = pair(s.v(2), s.f(2));
  std::vector<SparseVec> first = {pair(s.v(1), s.v(2)), pair(s.f(1), s.f(2)), h1 + h2, odd(0), odd(0b11)};
  std::vector<SparseVec> second = {pair(s.v(1), s.f(2)), pair(s.v(2), s.f(1)), h1 - h2};

  auto reduced = [&](const std::vector<SparseVec>& v) {
    RowEchelon e(f, a.dim());
    for (const auto& x : v) e.insert(x);
    return e;
  };
  TypeDDecomposition d;
  auto e1 = reduced(first), e2 = reduced(second);
  d.first = e1.reduced_basis();
  d.second = e2.reduced_basis();
  d.closed = true;
  for (auto* part : {&e1, &e2})
    for (const auto& x : part->reduced_basis())
      for (std::uint32_t b = 0; b < a.dim(); ++b)
        if (!part->contains(a.bracket(SparseVec::unit(b, f), x))) d.closed = false;
  d.annihilate = true;
  for (const auto& x : d.first)
    for (const auto& y : d.second)
      if (!a.bracket(x, y).empty()) d.annihilate = false;
  RowEchelon all(f, a.dim());
  for (const auto& x : d.first) all.insert(x);
  for (const auto& y : d.second) all.insert(y);
  d.spans_whole = all.rank() == a.dim();
  return d;
}

}  // namespace spinlab
