#include "spinlab/superalgebra.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <stdexcept>
#include <thread>

namespace spinlab {

SparseOperator to_sparse_operator(const Matrix& m) {
  SparseOperator op;
  op.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) op.push_back(m.column(c));
  return op;
}

Matrix to_matrix(const SparseOperator& op, FieldSpec f, std::size_t rows) {
  Matrix m(f, rows, op.size());
  for (std::size_t c = 0; c < op.size(); ++c)
    for (const auto& e : op[c]) m(e.index, c) = e.value;
  return m;
}

SparseVec apply(const SparseOperator& op, const SparseVec& v, FieldSpec f, std::size_t rows) {
  Accumulator acc(f, rows);
  for (const auto& e : v) acc.add_scaled(op[e.index], e.value);
  return acc.take();
}

// ------------------------------------------------------------ BracketSource

SparseVec BracketSource::bracket(std::uint32_t i, std::uint32_t j) const {
  SparseVec storage;
  auto view = bracket_view(i, j, storage);
  if (view.empty()) return {};
  if (view.data() == storage.entries().data()) return storage;
  SparseVec out;
  for (const auto& e : view) out.push_back(e.index, e.value);
  return out;
}

void BracketSource::add_bracket(std::uint32_t i, std::uint32_t j, const Scalar& c, Accumulator& acc) const {
  SparseVec storage;
  for (const auto& e : bracket_view(i, j, storage)) acc.add_product(e.index, e.value, c);
}

SparseVec BracketSource::bracket(const SparseVec& x, const SparseVec& y) const {
  Accumulator acc(field(), dim());
  for (const auto& a : x)
    for (const auto& b : y) add_bracket(a.index, b.index, a.value * b.value, acc);
  return acc.take();
}

std::pair<std::size_t, std::size_t> BracketSource::dims() const {
  std::size_t odd = 0;
  for (std::size_t i = 0; i < dim(); ++i) odd += parity(i);
  return {dim() - odd, odd};
}

// ------------------------------------------------------------- SuperAlgebra

SuperAlgebra::SuperAlgebra(std::string name, FieldSpec f, std::vector<std::string> labels, std::vector<int> parity,
                           bool super, const Rule& rule, bool check_skew)
    : name_(std::move(name)), field_(f), labels_(std::move(labels)), parity_(std::move(parity)), super_(super) {
  std::size_t n = labels_.size();
  if (parity_.size() != n) throw std::invalid_argument("parity list does not match basis");
  std::vector<SparseVec> upper(n * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i; j < n; ++j) {
      SparseVec v = rule(i, j);
      int p = parity_[i] ^ parity_[j];
      for (const auto& e : v) {
        if (e.index >= n) throw std::logic_error("bracket coordinate out of range");
        if (parity_[e.index] != p)
          throw std::logic_error("bracket [" + labels_[i] + "," + labels_[j] + "] violates the grading");
      }
      if (i == j && swap_sign(i, i) == -1 && !v.empty())
        throw std::logic_error("[" + labels_[i] + "," + labels_[i] + "] must vanish");
      if (check_skew && i != j) {
        SparseVec w = rule(j, i);
        if (!(w == v.scaled(embed_integer(swap_sign(i, j), f))))
          throw std::logic_error("graded skew-symmetry fails on [" + labels_[i] + "," + labels_[j] + "]");
      }
      upper[i * n + j] = std::move(v);
    }
  offsets_.reserve(n * n + 1);
  offsets_.push_back(0);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i <= j) {
        for (const auto& e : upper[i * n + j]) entries_.push_back(e);
      } else {
        bool negate = swap_sign(i, j) == -1;
        for (const auto& e : upper[j * n + i]) entries_.push_back({e.index, negate ? -e.value : e.value});
      }
      offsets_.push_back(entries_.size());
    }
}

std::span<const SparseEntry> SuperAlgebra::table(std::uint32_t i, std::uint32_t j) const {
  std::size_t slot = static_cast<std::size_t>(i) * dim() + j;
  return {entries_.data() + offsets_[slot], entries_.data() + offsets_[slot + 1]};
}

std::span<const SparseEntry> SuperAlgebra::bracket_view(std::uint32_t i, std::uint32_t j, SparseVec&) const {
  return table(i, j);
}

SuperAlgebra SuperAlgebra::reduce_mod(FieldSpec target) const {
  SuperAlgebra r;
  r.name_ = name_;
  r.field_ = target;
  r.labels_ = labels_;
  r.parity_ = parity_;
  r.super_ = super_;
  r.offsets_.push_back(0);
  std::size_t n = dim();
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      for (const auto& e : table(i, j)) {
        Scalar s = e.value.reduce_mod(target);
        if (!s.is_zero()) r.entries_.push_back({e.index, std::move(s)});
      }
      r.offsets_.push_back(r.entries_.size());
    }
  return r;
}

SuperAlgebra SuperAlgebra::renamed(std::string name) const {
  SuperAlgebra r = *this;
  r.name_ = std::move(name);
  return r;
}

bool operator==(const SuperAlgebra& a, const SuperAlgebra& b) {
  if (!(a.field_ == b.field_) || a.labels_ != b.labels_ || a.parity_ != b.parity_ || a.super_ != b.super_ ||
      a.offsets_ != b.offsets_)
    return false;
  for (std::size_t t = 0; t < a.entries_.size(); ++t)
    if (a.entries_[t].index != b.entries_[t].index || a.entries_[t].value != b.entries_[t].value) return false;
  return true;
}

// ------------------------------------------------------------------ Jacobi

std::string mode_name(JacobiMode m) {
  switch (m) {
    case JacobiMode::full:
      return "full";
    case JacobiMode::odd_only:
      return "odd-only";
    case JacobiMode::generators:
      return "generators";
  }
  return "?";
}

JacobiMode parse_mode(const std::string& s) {
  if (s == "full") return JacobiMode::full;
  if (s == "odd-only") return JacobiMode::odd_only;
  if (s == "generators") return JacobiMode::generators;
  throw std::invalid_argument("unknown mode: " + s);
}

std::string simplicity_name(Simplicity s) {
  switch (s) {
    case Simplicity::not_attempted:
      return "not-attempted";
    case Simplicity::certified:
      return "certified";
    case Simplicity::failed:
      return "failed";
  }
  return "?";
}

namespace {

class JacobiWorker {
 public:
  explicit JacobiWorker(const BracketSource& a) : a_(a), acc_(a.field(), a.dim()) {}

  // acc += c · [vector, b_k] (left = true) or c · [b_k, vector]
  void add_vector_bracket(std::span<const SparseEntry> v, std::uint32_t k, const Scalar& c, bool vector_left) {
    SparseVec storage;
    for (const auto& e : v) {
      Scalar coef = e.value * c;
      auto view = vector_left ? a_.bracket_view(e.index, k, storage) : a_.bracket_view(k, e.index, storage);
      for (const auto& t : view) acc_.add_product(t.index, t.value, coef);
    }
  }

  SparseVec evaluate(std::uint32_t i, std::uint32_t j, std::uint32_t k, std::span<const SparseEntry> xy) {
    FieldSpec f = a_.field();
    Scalar one = Scalar::one(f);
    add_vector_bracket(xy, k, one, true);
    SparseVec s1, s2;
    auto xz = a_.bracket_view(i, k, s1);
    int eps = a_.super() && a_.parity(i) && a_.parity(j) ? -1 : 1;
    add_vector_bracket(xz, j, eps > 0 ? one : -one, false);
    auto yz = a_.bracket_view(j, k, s2);
    add_vector_bracket(yz, i, -one, false);
    return acc_.take();
  }

 private:
  const BracketSource& a_;
  Accumulator acc_;
};

bool triple_less(const Witness& x, const Witness& y) {
  return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k);
}

}  // namespace

SparseVec jacobiator(const BracketSource& a, std::uint32_t i, std::uint32_t j, std::uint32_t k) {
  JacobiWorker w(a);
  SparseVec storage;
  auto xy = a.bracket_view(i, j, storage);
  return w.evaluate(i, j, k, xy);
}

VerificationReport check_jacobi(const BracketSource& a, const JacobiOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.algebra = a.name();
  rep.field = a.field();
  rep.mode = opts.mode;
  rep.dims = a.dims();
  rep.symmetric = a.super();
  std::size_t cap = std::max<std::size_t>(opts.witness_cap, 1);

  if (opts.mode == JacobiMode::generators) {
    JacobiWorker w(a);
    for (const auto& t : opts.triples) {
      SparseVec storage;
      auto xy = a.bracket_view(t[0], t[1], storage);
      SparseVec v = w.evaluate(t[0], t[1], t[2], xy);
      if (!v.empty()) {
        rep.witnesses.push_back({t[0], t[1], t[2], std::move(v)});
        if (rep.witnesses.size() >= cap) break;
      }
    }
  } else {
    std::uint32_t n = static_cast<std::uint32_t>(a.dim());
    bool odd_only = opts.mode == JacobiMode::odd_only;
    unsigned workers = std::max(1u, opts.workers);
    std::vector<std::vector<Witness>> found(workers);
    auto run = [&](unsigned id) {
      JacobiWorker w(a);
      auto& out = found[id];
      for (std::uint32_t i = id; i < n; i += workers) {
        if (odd_only && !a.parity(i)) continue;
        for (std::uint32_t j = i; j < n; ++j) {
          if (odd_only && !a.parity(j)) continue;
          SparseVec storage;
          auto xy = a.bracket_view(i, j, storage);
          for (std::uint32_t k = j; k < n; ++k) {
            if (odd_only && !a.parity(k)) continue;
            SparseVec v = w.evaluate(i, j, k, xy);
            if (v.empty()) continue;
            out.push_back({i, j, k, std::move(v)});
            if (out.size() >= cap) return;
          }
        }
      }
    };
    if (workers == 1) {
      run(0);
    } else {
      std::vector<std::thread> threads;
      for (unsigned id = 0; id < workers; ++id) threads.emplace_back(run, id);
      for (auto& t : threads) t.join();
    }
    for (auto& part : found)
      for (auto& wit : part) rep.witnesses.push_back(std::move(wit));
    std::sort(rep.witnesses.begin(), rep.witnesses.end(), triple_less);
    if (rep.witnesses.size() > cap) rep.witnesses.resize(cap);
  }
  rep.jacobi_pass = rep.witnesses.empty();
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ------------------------------------------------------------ subspaces

std::vector<SparseVec> ideal_closure(const BracketSource& a, const std::vector<SparseVec>& seeds) {
  RowEchelon e(a.field(), a.dim());
  std::deque<SparseVec> queue;
  for (const auto& s : seeds)
    if (e.insert(s)) queue.push_back(s);
  while (!queue.empty() && e.rank() < a.dim()) {
    SparseVec v = std::move(queue.front());
    queue.pop_front();
    for (std::uint32_t b = 0; b < a.dim(); ++b) {
      Accumulator acc(a.field(), a.dim());
      for (const auto& t : v) a.add_bracket(b, t.index, t.value, acc);
      SparseVec w = acc.take();
      if (e.insert(w)) queue.push_back(std::move(w));
    }
  }
  return e.reduced_basis();
}

std::vector<SparseVec> derived_algebra(const BracketSource& a) {
  RowEchelon e(a.field(), a.dim());
  std::uint32_t n = static_cast<std::uint32_t>(a.dim());
  for (std::uint32_t i = 0; i < n && e.rank() < n; ++i)
    for (std::uint32_t j = i; j < n && e.rank() < n; ++j) e.insert(a.bracket(i, j));
  return e.reduced_basis();
}

namespace {

// Column-major flattening: entry (r, c) of an n × n operator sits at c·n + r.
SparseVec flatten(const SparseOperator& op, std::size_t n) {
  SparseVec v;
  for (std::size_t c = 0; c < op.size(); ++c)
    for (const auto& e : op[c]) v.push_back(static_cast<std::uint32_t>(c * n + e.index), e.value);
  return v;
}

SparseOperator compose(const SparseOperator& g, const SparseOperator& w, FieldSpec f, std::size_t n) {
  SparseOperator out(w.size());
  Accumulator acc(f, n);
  for (std::size_t c = 0; c < w.size(); ++c) {
    for (const auto& e : w[c]) acc.add_scaled(g[e.index], e.value);
    out[c] = acc.take();
  }
  return out;
}

}  // namespace

std::size_t associative_closure_dim(const std::vector<SparseOperator>& ops, std::size_t n, FieldSpec f) {
  RowEchelon e(f, n * n);
  SparseOperator id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = SparseVec::unit(static_cast<std::uint32_t>(i), f);
  std::deque<SparseOperator> queue;
  if (n == 0) return 0;
  e.insert(flatten(id, n));
  queue.push_back(id);
  while (!queue.empty() && e.rank() < n * n) {
    SparseOperator w = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : ops) {
      SparseOperator p = compose(g, w, f, n);
      if (e.insert(flatten(p, n))) queue.push_back(std::move(p));
      if (e.rank() == n * n) break;
    }
  }
  return e.rank();
}

bool burnside_irreducible(const std::vector<SparseOperator>& ops, std::size_t n, FieldSpec f) {
  return n > 0 && associative_closure_dim(ops, n, f) == n * n;
}

std::vector<SparseVec> linear_relations(const std::vector<SparseVec>& vectors, std::size_t ncols, FieldSpec f) {
  RowEchelon e(f, ncols + vectors.size());
  for (std::size_t a = 0; a < vectors.size(); ++a) {
    SparseVec aug = vectors[a];
    aug.push_back(static_cast<std::uint32_t>(ncols + a), Scalar::one(f));
    e.insert(aug);
  }
  std::vector<SparseVec> out;
  for (const auto& row : e.reduced_basis()) {
    if (row.front().index < ncols) continue;
    SparseVec c;
    for (const auto& x : row) c.push_back(static_cast<std::uint32_t>(x.index - ncols), x.value);
    out.push_back(std::move(c));
  }
  return out;
}

// ------------------------------------------------------ equivariant maps

namespace {

struct Triplet {
  std::uint64_t eq;
  std::uint32_t unknown;
  Scalar value;
};

bool diagonal(const SparseOperator& op, std::vector<Scalar>& weights, FieldSpec f) {
  weights.assign(op.size(), Scalar::zero(f));
  for (std::size_t c = 0; c < op.size(); ++c) {
    if (op[c].size() > 1) return false;
    if (op[c].size() == 1) {
      if (op[c].front().index != c) return false;
      weights[c] = op[c].front().value;
    }
  }
  return true;
}

struct EquivariantSystem {
  std::vector<std::uint64_t> unknowns;  // full index (i·n_s + j)·n_g + k
  std::vector<SparseVec> equations;     // over compact unknown indices
};

EquivariantSystem build_equivariant_system(const std::vector<SparseOperator>& rep,
                                           const std::vector<SparseOperator>& adjoint, std::size_t n_s,
                                           std::size_t n_g, FieldSpec f) {
  if (rep.size() != adjoint.size()) throw std::invalid_argument("rep and adjoint list different generators");
  std::vector<bool> is_diag(rep.size());
  std::vector<std::vector<Scalar>> mu, lambda;
  for (std::size_t a = 0; a < rep.size(); ++a) {
    std::vector<Scalar> m, l;
    if (diagonal(rep[a], m, f) && diagonal(adjoint[a], l, f)) {
      is_diag[a] = true;
      mu.push_back(std::move(m));
      lambda.push_back(std::move(l));
    }
  }
  EquivariantSystem sys;
  std::vector<std::int64_t> compact(n_s * n_s * n_g, -1);
  for (std::size_t i = 0; i < n_s; ++i)
    for (std::size_t j = 0; j < n_s; ++j)
      for (std::size_t k = 0; k < n_g; ++k) {
        bool keep = true;
        for (std::size_t d = 0; d < mu.size() && keep; ++d) keep = lambda[d][k] == mu[d][i] + mu[d][j];
        if (!keep) continue;
        std::uint64_t full = (i * n_s + j) * n_g + k;
        compact[full] = static_cast<std::int64_t>(sys.unknowns.size());
        sys.unknowns.push_back(full);
      }

  // Rows of ρ(a): row r lists (c, ρ_{r c}).
  std::vector<std::vector<std::vector<std::pair<std::uint32_t, Scalar>>>> rows(rep.size());
  for (std::size_t a = 0; a < rep.size(); ++a) {
    rows[a].resize(n_s);
    for (std::size_t c = 0; c < n_s; ++c)
      for (const auto& e : rep[a][c]) rows[a][e.index].emplace_back(static_cast<std::uint32_t>(c), e.value);
  }

  std::vector<Triplet> trip;
  for (std::size_t a = 0; a < rep.size(); ++a) {
    if (is_diag[a]) continue;
    auto eq_id = [&](std::size_t i, std::size_t j, std::size_t k) {
      return ((static_cast<std::uint64_t>(a) * n_s + i) * n_s + j) * n_g + k;
    };
    for (std::uint32_t u = 0; u < sys.unknowns.size(); ++u) {
      std::uint64_t full = sys.unknowns[u];
      std::size_t k = full % n_g, ij = full / n_g, j = ij % n_s, i = ij / n_s;
      for (const auto& e : adjoint[a][k]) trip.push_back({eq_id(i, j, e.index), u, e.value});
      for (const auto& [i2, v] : rows[a][i]) trip.push_back({eq_id(i2, j, k), u, -v});
      for (const auto& [j2, v] : rows[a][j]) trip.push_back({eq_id(i, j2, k), u, -v});
    }
  }
  std::sort(trip.begin(), trip.end(),
            [](const Triplet& x, const Triplet& y) { return std::tie(x.eq, x.unknown) < std::tie(y.eq, y.unknown); });
  for (std::size_t t = 0; t < trip.size();) {
    SparseVec row;
    std::uint64_t eq = trip[t].eq;
    while (t < trip.size() && trip[t].eq == eq) {
      Scalar s = trip[t].value;
      std::uint32_t u = trip[t].unknown;
      ++t;
      while (t < trip.size() && trip[t].eq == eq && trip[t].unknown == u) s += trip[t++].value;
      row.push_back(u, std::move(s));
    }
    if (!row.empty()) sys.equations.push_back(std::move(row));
  }
  return sys;
}

}  // namespace

std::size_t equivariant_map_dim(const std::vector<SparseOperator>& rep, const std::vector<SparseOperator>& adjoint,
                                std::size_t n_s, std::size_t n_g, FieldSpec f) {
  auto sys = build_equivariant_system(rep, adjoint, n_s, n_g, f);
  return sys.unknowns.size() - rank(sys.equations, f, sys.unknowns.size());
}

std::vector<SparseVec> equivariant_maps(const std::vector<SparseOperator>& rep,
                                        const std::vector<SparseOperator>& adjoint, std::size_t n_s, std::size_t n_g,
                                        FieldSpec f) {
  auto sys = build_equivariant_system(rep, adjoint, n_s, n_g, f);
  RowEchelon e(f, sys.unknowns.size());
  for (const auto& r : sys.equations) e.insert(r);
  std::vector<SparseVec> out;
  for (const auto& v : e.nullspace()) {
    SparseVec full;
    for (const auto& x : v) full.push_back(static_cast<std::uint32_t>(sys.unknowns[x.index]), x.value);
    out.push_back(std::move(full));
  }
  return out;
}

// ----------------------------------------------------------- certificates

EvenOddActions even_odd_actions(const BracketSource& a) {
  EvenOddActions r;
  std::vector<std::int64_t> pos(a.dim());
  for (std::uint32_t i = 0; i < a.dim(); ++i) {
    auto& list = a.parity(i) ? r.odd : r.even;
    pos[i] = static_cast<std::int64_t>(list.size());
    list.push_back(i);
  }
  for (auto e : r.even) {
    SparseOperator odd_op, even_op;
    for (auto o : r.odd) {
      SparseVec col;
      for (const auto& t : a.bracket(e, o)) col.push_back(static_cast<std::uint32_t>(pos[t.index]), t.value);
      odd_op.push_back(std::move(col));
    }
    for (auto e2 : r.even) {
      SparseVec col;
      for (const auto& t : a.bracket(e, e2)) col.push_back(static_cast<std::uint32_t>(pos[t.index]), t.value);
      even_op.push_back(std::move(col));
    }
    r.on_odd.push_back(std::move(odd_op));
    r.on_even.push_back(std::move(even_op));
  }
  return r;
}

SimplicityCertificate simplicity_certificate(const BracketSource& a) {
  SimplicityCertificate c;
  c.derived_dim = derived_algebra(a).size();
  c.derived_is_whole = c.derived_dim == a.dim();
  auto act = even_odd_actions(a);
  std::size_t n1 = act.odd.size();
  c.closure_dim = associative_closure_dim(act.on_odd, n1, a.field());
  c.odd_irreducible = n1 > 0 && c.closure_dim == n1 * n1;
  // The kernel of the even action on the odd part is itself an ideal of the even part,
  // so it is the largest ideal annihilating the odd part.
  std::vector<SparseVec> flat;
  for (const auto& op : act.on_odd) flat.push_back(flatten(op, n1));
  c.annihilating_ideal_dim = linear_relations(flat, n1 * n1, a.field()).size();
  c.no_annihilating_ideal = c.annihilating_ideal_dim == 0;
  return c;
}

// ------------------------------------------------------------- isomorphism

SuperAlgebra even_subalgebra(const BracketSource& a) {
  std::vector<std::uint32_t> even;
  std::vector<std::int64_t> pos(a.dim(), -1);
  std::vector<std::string> labels;
  for (std::uint32_t i = 0; i < a.dim(); ++i)
    if (!a.parity(i)) {
      pos[i] = static_cast<std::int64_t>(even.size());
      even.push_back(i);
      labels.push_back(a.label(i));
    }
  std::vector<int> parity(even.size(), 0);
  return SuperAlgebra(a.name() + " even part", a.field(), labels, parity, a.super(), [&](std::uint32_t i, std::uint32_t j) {
    SparseVec r;
    for (const auto& e : a.bracket(even[i], even[j])) r.push_back(static_cast<std::uint32_t>(pos[e.index]), e.value);
    return r;
  });
}

std::optional<std::string> isomorphism_defect(const Matrix& map, const BracketSource& a, const BracketSource& b) {
  std::size_t n = a.dim();
  if (b.dim() != n || map.rows() != n || map.cols() != n) return "dimension mismatch";
  if (!(map.field() == a.field()) || !(a.field() == b.field())) return "field mismatch";
  std::vector<SparseVec> phi;
  for (std::size_t j = 0; j < n; ++j) {
    phi.push_back(map.column(j));
    for (const auto& e : phi.back())
      if (b.parity(e.index) != a.parity(j)) return "map does not preserve parity at " + a.label(j);
  }
  if (rank(map) != n) return "map is not bijective";
  FieldSpec f = a.field();
  for (std::uint32_t i = 0; i < n; ++i) {
    // w[t] = [φ(a_i), b_t]
    std::vector<SparseVec> w(n);
    for (std::uint32_t t = 0; t < n; ++t) {
      Accumulator acc(f, n);
      for (const auto& e : phi[i]) b.add_bracket(e.index, t, e.value, acc);
      w[t] = acc.take();
    }
    for (std::uint32_t j = i; j < n; ++j) {
      Accumulator rhs(f, n);
      for (const auto& e : phi[j]) rhs.add_scaled(w[e.index], e.value);
      Accumulator lhs(f, n);
      for (const auto& e : a.bracket(i, j)) lhs.add_scaled(phi[e.index], e.value);
      if (!(lhs.take() == rhs.take())) return "bracket of " + a.label(i) + " and " + a.label(j) + " is not preserved";
    }
  }
  return std::nullopt;
}

bool verify_isomorphism(const Matrix& map, const BracketSource& a, const BracketSource& b) {
  return !isomorphism_defect(map, a, b).has_value();
}

}  // namespace spinlab
