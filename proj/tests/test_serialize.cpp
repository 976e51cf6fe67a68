#include "doctest.h"

#include "spinlab/serialize.hpp"
#include "spinlab/spin_construct.hpp"

using namespace spinlab;

TEST_CASE("structure export round-trip") {
  for (auto [l, kind, p] : {std::tuple{3, Kind::B, 3}, std::tuple{2, Kind::D, 0}, std::tuple{4, Kind::B, 0}}) {
    auto f = make_field(p);
    auto a = build_superalgebra(l, kind, f);
    auto j = export_structure(a);
    CHECK(j["schema_version"] == 1);
    CHECK(j["labels"].size() == a.dim());
    auto back = import_structure(Json::parse(j.dump()));
    CHECK(back == a);
    JacobiOptions opts;
    CHECK(check_jacobi(back, opts).jacobi_pass == check_jacobi(a, opts).jacobi_pass);
    CHECK(export_structure(back).dump() == j.dump());
  }
}

TEST_CASE("pinned export hashes") {
  auto b33 = export_structure(build_superalgebra(3, Kind::B, make_field(3)));
  CHECK(b33["dims"] == Json::array({21, 8}));
  CHECK(b33["hash"] == "70842f81dbcef043");
  auto d20 = export_structure(build_superalgebra(2, Kind::D, kRationals));
  CHECK(d20["dims"] == Json::array({6, 2}));
  CHECK(d20["hash"] == "da2a9c24b24545eb");
}

TEST_CASE("import rejects tampering") {
  auto j = export_structure(build_superalgebra(1, Kind::B, kRationals));
  auto bad = j;
  bad["brackets"][0][2][0][1] = "7";
  CHECK_THROWS_AS(import_structure(bad), SchemaError);
  bad = j;
  bad["schema_version"] = 2;
  CHECK_THROWS_AS(import_structure(bad), SchemaError);
}

TEST_CASE("scalars and reports") {
  auto f = make_field(7);
  SparseVec v;
  v.push_back(1, embed_integer(3, f));
  v.push_back(4, embed_integer(6, f));
  CHECK(sparse_json(v).dump() == R"([[1,"3"],[4,"6"]])");
  CHECK(sparse_from_json(sparse_json(v), f) == v);
  CHECK(sparse_json(SparseVec::single(0, Scalar::from_fraction(-5, 2, kRationals))).dump() == R"([[0,"-5/2"]])");
  VerificationReport r;
  r.algebra = "x";
  r.field = f;
  r.elapsed_ms = 12.5;
  CHECK(report_json(r)["elapsed_ms"] == 0.0);
  CHECK(report_json(r, true)["elapsed_ms"] == 12.5);
}

TEST_CASE("composition table export") {
  auto j = composition_table_json(CompositionKind::octonion);
  CHECK(j["dim"] == 8);
  CHECK(j["products"].size() == 64);
  CHECK(j["checksum"] == "5810773757106364653");
  CHECK(j["norm"] == Json::array({1, -1, -1, 1, -1, 1, 1, -1}));
}
