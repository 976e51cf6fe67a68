#include "spinlab/serialize.hpp"

#include <cstdio>

namespace spinlab {

Json field_json(FieldSpec f) { return Json{{"name", f.name()}, {"characteristic", f.characteristic()}}; }

FieldSpec field_from_json(const Json& j) { return make_field(j.at("characteristic").get<std::int64_t>()); }

Json sparse_json(const SparseVec& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(Json::array({e.index, e.value.to_string()}));
  return out;
}

SparseVec sparse_from_json(const Json& j, FieldSpec f) {
  SparseVec out;
  std::int64_t last = -1;
  for (const auto& e : j) {
    auto k = e.at(0).get<std::uint32_t>();
    if (static_cast<std::int64_t>(k) <= last) throw SchemaError("sparse vector indices must increase");
    last = k;
    auto c = Scalar::parse(e.at(1).get<std::string>(), f);
    if (!c.is_zero()) out.push_back(k, c);
  }
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    out.push_back(std::move(row));
  }
  return out;
}

Json report_json(const VerificationReport& r, bool timing) {
  Json w = Json::array();
  for (const auto& x : r.witnesses) w.push_back({{"i", x.i}, {"j", x.j}, {"k", x.k}, {"value", sparse_json(x.value)}});
  Json out{{"algebra", r.algebra},
           {"field", r.field.name()},
           {"mode", mode_name(r.mode)},
           {"pass", r.jacobi_pass},
           {"witness_count", r.witnesses.size()},
           {"witnesses", std::move(w)},
           {"dims", Json::array({r.dims.first, r.dims.second})},
           {"symmetric", r.symmetric},
           {"simplicity", simplicity_name(r.simplicity)},
           {"notes", r.notes}};
  out["elapsed_ms"] = timing ? r.elapsed_ms : 0.0;
  return out;
}

std::string content_hash(const Json& j) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json export_structure(const BracketSource& a) {
  Json labels = Json::array(), parity = Json::array(), brackets = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    labels.push_back(a.label(i));
    parity.push_back(a.parity(i));
  }
  for (std::uint32_t i = 0; i < a.dim(); ++i)
    for (std::uint32_t j = i; j < a.dim(); ++j) {
      auto b = a.bracket(i, j);
      if (!b.empty()) brackets.push_back(Json::array({i, j, sparse_json(b)}));
    }
  auto dims = a.dims();
  Json out{{"schema_version", kSchemaVersion},
           {"name", a.name()},
           {"field", field_json(a.field())},
           {"dims", Json::array({dims.first, dims.second})},
           {"symmetric", a.super()},
           {"labels", std::move(labels)},
           {"parity", std::move(parity)},
           {"brackets", std::move(brackets)}};
  out["hash"] = content_hash(out);
  return out;
}

SuperAlgebra import_structure(const Json& j) {
  if (j.value("schema_version", 0) != kSchemaVersion) throw SchemaError("unsupported schema_version");
  Json body = j;
  auto hash = body.at("hash").get<std::string>();
  body.erase("hash");
  if (content_hash(body) != hash) throw SchemaError("content hash mismatch");
  auto f = field_from_json(j.at("field"));
  auto labels = j.at("labels").get<std::vector<std::string>>();
  auto parity = j.at("parity").get<std::vector<int>>();
  if (parity.size() != labels.size()) throw SchemaError("labels and parity differ in length");
  std::size_t n = labels.size();
  std::vector<SparseVec> table(n * n);
  for (const auto& e : j.at("brackets")) {
    auto a = e.at(0).get<std::size_t>(), b = e.at(1).get<std::size_t>();
    if (a > b || b >= n) throw SchemaError("bracket entry out of range");
    table[a * n + b] = sparse_from_json(e.at(2), f);
  }
  bool super = j.at("symmetric").get<bool>();
  for (std::size_t i = 0; i < n; ++i)
    if (!(super && parity[i]) && !table[i * n + i].empty()) throw SchemaError("nonzero self-bracket " + labels[i]);
  // only i ≤ j is stored, so the skew check would compare against missing entries
  return SuperAlgebra(
      j.at("name").get<std::string>(), f, std::move(labels), std::move(parity), super,
      [&](std::uint32_t a, std::uint32_t b) { return table[a * n + b]; }, false);
}

Json composition_table_json(CompositionKind kind) {
  int doublings = static_cast<int>(kind);
  auto t = cayley_dickson_table(doublings);
  Json products = Json::array();
  for (std::size_t i = 0; i < t.dim; ++i)
    for (std::size_t j = 0; j < t.dim; ++j) {
      const auto& p = t.product[i * t.dim + j];
      products.push_back(Json::array({i, j, p.coeff, p.index}));
    }
  Json out{{"schema_version", kSchemaVersion},
           {"name", composition_name(kind)},
           {"dim", t.dim},
           {"norm", t.norm},
           {"products", std::move(products)},
           {"checksum", std::to_string(t.checksum())}};
  return out;
}

}  // namespace spinlab
