#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "spinlab/kac_jordan.hpp"
#include "spinlab/tits.hpp"

#ifndef SPINLAB_DATA_DIR
#define SPINLAB_DATA_DIR "data"
#endif

namespace spinlab::cli {

namespace {

FieldSpec field_for(int p) {
  try {
    return make_field(p);
  } catch (const InvalidField& e) {
    throw UsageError(e.what());
  }
}

std::string char_label(int p) { return p == 0 ? "Q" : "GF(" + std::to_string(p) + ")"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string cache_file(const std::string& dir, int l, Kind kind, int p) {
  return (std::filesystem::path(dir) / (kind_name(kind) + std::to_string(l) + "-" + std::to_string(p) + ".json"))
      .string();
}

/// Structure table of a spin algebra, read from and written to $SPINLAB_CACHE when set.
Json spin_table(int l, Kind kind, FieldSpec f, std::string& cache_note) {
  const char* dir = std::getenv("SPINLAB_CACHE");
  if (dir && *dir) {
    auto path = cache_file(dir, l, kind, static_cast<int>(f.characteristic()));
    if (std::ifstream in(path); in) {
      try {
        auto j = Json::parse(in);
        import_structure(j);
        cache_note = "hit";
        return j;
      } catch (const std::exception&) {
        cache_note = "stale";
      }
    }
    auto j = export_structure(build_superalgebra(l, kind, f));
    std::filesystem::create_directories(dir);
    std::ofstream(path) << j.dump() << '\n';
    if (cache_note.empty()) cache_note = "miss";
    return j;
  }
  return export_structure(build_superalgebra(l, kind, f));
}

struct Check {
  std::string name, field, expected, observed, detail;
};

Json check_json(const Check& c) {
  return Json{{"name", c.name},
              {"field", c.field},
              {"expected", c.expected},
              {"observed", c.observed},
              {"match", c.expected == c.observed},
              {"detail", c.detail}};
}

std::string pass_fail(bool b) { return b ? "pass" : "fail"; }

std::string dims_text(std::pair<std::size_t, std::size_t> d) {
  return std::to_string(d.first) + "+" + std::to_string(d.second);
}

std::string first_witness(const VerificationReport& r) {
  if (r.witnesses.empty()) return "";
  const auto& w = r.witnesses.front();
  return "(" + std::to_string(w.i) + "," + std::to_string(w.j) + "," + std::to_string(w.k) + ") " +
         sparse_json(w.value).dump();
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw UsageError("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
    return v;
  };
  while (std::getline(ss, part, ',')) {
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(part));
      continue;
    }
    int lo = to_int(part.substr(0, dots)), hi = to_int(part.substr(dots + 2));
    if (lo > hi) throw UsageError("empty range " + part);
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "markdown") return Format::markdown;
  throw UsageError("unknown format " + s);
}

PassSet PassSet::load(const std::string& path) {
  auto j = read_json_file(path);
  if (j.value("schema_version", 0) != kSchemaVersion) throw UsageError(path + ": unsupported schema_version");
  PassSet s;
  for (const auto& row : j.at("pass")) {
    std::optional<std::vector<int>> chars;
    if (!row.at("chars").is_string()) chars = row.at("chars").get<std::vector<int>>();
    s.rows_.emplace_back(row.at("l").get<int>(), chars);
  }
  return s;
}

bool PassSet::expects_pass(int l, int p) const {
  for (const auto& [rl, chars] : rows_)
    if (rl == l && (!chars || std::find(chars->begin(), chars->end(), p) != chars->end())) return true;
  return false;
}

std::string default_expected_path(Kind kind) {
  return std::string(SPINLAB_DATA_DIR) + "/expected_type_" + (kind == Kind::B ? "b" : "d") + ".json";
}

CommandResult verify_spin(Kind kind, const RunConfig& cfg) {
  auto ls = cfg.ls;
  if (ls.empty()) ls = kind == Kind::B ? parse_int_list("1..8") : parse_int_list("2..8");
  for (int l : ls) {
    if (l < 1 || (kind == Kind::D && l < 2)) throw UsageError("l out of range: " + std::to_string(l));
    if (l > 12) throw UsageError("l > 12 is not supported");
    if (l > 8 && cfg.mode && *cfg.mode != JacobiMode::generators)
      throw UsageError("l > 8 requires --mode generators");
  }
  if (cfg.mode == JacobiMode::generators && cfg.certify) throw UsageError("--certify needs a full scan");
  std::vector<FieldSpec> fields;
  for (int p : cfg.chars) fields.push_back(field_for(p));
  std::optional<PassSet> expected;
  if (!cfg.survey)
    expected = PassSet::load(cfg.expected_path.empty() ? default_expected_path(kind) : cfg.expected_path);

  Json cells = Json::array(), skipped = Json::array(), decompositions = Json::array();
  std::size_t mismatches = 0;
  for (int l : ls) {
    if (kind == Kind::D && l % 2 == 1) {
      skipped.push_back(l);
      continue;
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      ClassifyOptions opts;
      opts.mode = cfg.mode;
      opts.workers = cfg.workers;
      opts.certify = cfg.certify;
      auto r = classify(l, kind, fields[c], opts);
      Json cell{{"l", l}, {"characteristic", cfg.chars[c]}, {"observed", pass_fail(r.jacobi_pass)}};
      if (expected) {
        bool want = expected->expects_pass(l, cfg.chars[c]);
        cell["expected"] = pass_fail(want);
        cell["match"] = want == r.jacobi_pass;
        if (want != r.jacobi_pass) ++mismatches;
      } else {
        cell["expected"] = nullptr;
      }
      cell["report"] = report_json(r, cfg.timing);
      cells.push_back(std::move(cell));

      if (kind == Kind::D && l == 2) {
        auto d = decompose_type_d_l2(fields[c]);
        bool ok = d.first.size() == 5 && d.second.size() == 3 && d.closed && d.annihilate && d.spans_whole;
        if (!ok && expected) ++mismatches;
        decompositions.push_back({{"characteristic", cfg.chars[c]},
                                  {"ideal_dims", Json::array({d.first.size(), d.second.size()})},
                                  {"ideals", d.closed},
                                  {"commute", d.annihilate},
                                  {"direct_sum", d.spans_whole},
                                  {"pass", ok}});
      }
    }
  }
  Json out{{"schema_version", kSchemaVersion},
           {"command", "verify type-" + std::string(kind == Kind::B ? "b" : "d")},
           {"kind", kind_name(kind)},
           {"mode", cfg.mode ? mode_name(*cfg.mode) : "auto"},
           {"seed", cfg.seed},
           {"survey", cfg.survey},
           {"cells", std::move(cells)}};
  if (!skipped.empty()) out["skipped_odd_l"] = std::move(skipped);
  if (!decompositions.empty()) out["decomposition_l2"] = std::move(decompositions);
  out["mismatches"] = mismatches;
  out["status"] = cfg.survey ? "survey" : mismatches == 0 ? "ok" : "mismatch";
  return {mismatches == 0 ? 0 : 1, cfg.format == Format::json ? out.dump(2) + "\n" : markdown_for(out)};
}

CommandResult verify_tits(const RunConfig& cfg) {
  std::vector<int> chars = cfg.chars;
  std::vector<FieldSpec> fields;
  for (int p : chars) {
    if (p == 3) throw UsageError("the Kac superalgebra needs characteristic other than 3");
    fields.push_back(field_for(p));
  }
  std::vector<Check> checks;
  auto guarded = [&](const std::string& name, const std::string& field, const std::string& expected, auto&& body) {
    Check c{name, field, expected, "", ""};
    try {
      body(c);
    } catch (const std::exception& e) {
      c.observed = "error";
      c.detail = e.what();
    }
    checks.push_back(std::move(c));
  };
  const CompositionKind kinds[] = {CompositionKind::unit, CompositionKind::binarion, CompositionKind::quaternion,
                                   CompositionKind::octonion};
  const std::pair<std::size_t, std::size_t> tits_dims[] = {{6, 4}, {11, 8}, {24, 16}, {55, 32}};

  for (std::size_t c = 0; c < fields.size(); ++c) {
    auto f = fields[c];
    auto fl = f.name();
    bool five = chars[c] == 5;
    guarded("composition identities (octonion)", fl, "pass", [&](Check& k) {
      auto r = check_composition_identities(CompositionAlgebra(CompositionKind::octonion, f), 200, cfg.seed);
      k.observed = pass_fail(r.all());
      k.detail = r.failure;
    });
    guarded("Cayley algebra lemma", fl, "pass", [&](Check& k) {
      auto r = check_lemma_C(CompositionAlgebra(CompositionKind::octonion, f));
      k.observed = pass_fail(r.all());
      k.detail = r.failure.empty() ? "der " + std::to_string(r.der_dim) + ", ad " + std::to_string(r.ad_dim) +
                                         ", so " + std::to_string(r.so_dim)
                                   : r.failure;
    });
    guarded("ch3 scan", fl, five ? "pass" : "witness", [&](Check& k) {
      Ch3ScanOptions o;
      o.m = five ? 6 : 4;
      o.seed = cfg.seed;
      auto r = ch3_scan(f, o);
      k.observed = verdict_name(r.verdict);
      k.detail = "m=" + std::to_string(o.m) + ", " + std::to_string(r.evaluated) + " evaluated";
      if (r.verdict == Ch3Verdict::witness) k.detail += ", x=" + r.x + ", ch3(x)=" + r.value;
    });
    if (!five) {
      guarded("Jacobi T(octonion,J)", fl, "fail", [&](Check& k) {
        JacobiOptions o;
        o.workers = cfg.workers;
        o.witness_cap = 1;
        auto r = check_jacobi(build_tits(CompositionKind::octonion, f), o);
        k.observed = pass_fail(r.jacobi_pass);
        k.detail = first_witness(r);
      });
      continue;
    }
    for (std::size_t i = 0; i < 4; ++i)
      guarded("Jacobi T(" + composition_name(kinds[i]) + ",J)", fl, "pass " + dims_text(tits_dims[i]),
              [&](Check& k) {
                JacobiOptions o;
                o.workers = cfg.workers;
                auto t = build_tits(kinds[i], f);
                auto r = check_jacobi(t, o);
                k.observed = pass_fail(r.jacobi_pass) + " " + dims_text(t.dims());
                k.detail = first_witness(r);
              });
    guarded("T(unit,J) ideal split", fl, "5+5", [&](Check& k) {
      auto s = split_unit_tits(f);
      k.observed = std::to_string(s.first.size()) + "+" + std::to_string(s.second.size());
      if (!s.commute || !s.direct) k.observed += " (not a direct sum)";
    });
    std::optional<TitsAlgebra> t;
    guarded("Phi0 isomorphism onto so(M,Q)", fl, "pass", [&](Check& k) {
      t.emplace(CompositionKind::octonion, f);
      auto so = build_so_MQ(t->composition());
      auto d = isomorphism_defect(phi0(*t, so).map, even_subalgebra(t->algebra()), *so.algebra);
      k.observed = pass_fail(!d);
      k.detail = d.value_or("");
    });
    guarded("Phi1 intertwining", fl, "pass", [&](Check& k) {
      if (!t) t.emplace(CompositionKind::octonion, f);
      auto r = phi1_intertwine(*t);
      k.observed = pass_fail(r.pass);
      k.detail = r.pass ? std::to_string(r.checked) + " columns checked" : r.witness;
    });
    guarded("Phi1 negated control", fl, "fail", [&](Check& k) {
      if (!t) t.emplace(CompositionKind::octonion, f);
      auto r = phi1_intertwine(*t, true);
      k.observed = pass_fail(r.pass);
      k.detail = r.witness;
    });
    guarded("cross identification with type B l=5", fl, "verified", [&](Check& k) {
      auto r = cross_identify_with_typeB(f);
      k.observed = r.verified ? "verified" : r.status;
      k.detail = "multiplier " + r.multiplier.to_string() + (r.reflected ? ", reflected" : "") +
                 ", equivariant dim " + std::to_string(r.equivariant_dim);
    });
  }
  Json list = Json::array();
  std::size_t mismatches = 0;
  for (const auto& c : checks) {
    if (c.expected != c.observed) ++mismatches;
    list.push_back(check_json(c));
  }
  Json out{{"schema_version", kSchemaVersion}, {"command", "verify tits"}, {"seed", cfg.seed},
           {"chars", chars},                   {"checks", std::move(list)}, {"mismatches", mismatches},
           {"status", mismatches == 0 ? "ok" : "mismatch"}};
  return {mismatches == 0 ? 0 : 1, cfg.format == Format::json ? out.dump(2) + "\n" : markdown_for(out)};
}

CommandResult export_table(const RunConfig& cfg) {
  if (cfg.composition && !cfg.tits) return {0, composition_table_json(*cfg.composition).dump() + "\n"};
  if (cfg.chars.size() != 1) throw UsageError("export needs exactly one characteristic");
  auto f = field_for(cfg.chars[0]);
  if (cfg.tits) {
    if (!cfg.composition) throw UsageError("--tits needs --composition");
    return {0, export_structure(build_tits(*cfg.composition, f)).dump() + "\n"};
  }
  if (!cfg.kind) throw UsageError("export needs --kind or --composition");
  if (cfg.ls.size() != 1) throw UsageError("export needs exactly one l");
  int l = cfg.ls[0];
  if (l < (*cfg.kind == Kind::D ? 2 : 1) || l > 8) throw UsageError("l out of range for export");
  if (*cfg.kind == Kind::D && l % 2) throw UsageError("type D export needs even l");
  std::string cache_note;
  return {0, spin_table(l, *cfg.kind, f, cache_note).dump() + "\n"};
}

CommandResult render_report(const std::vector<Json>& inputs, bool include_missing) {
  if (inputs.empty()) throw UsageError("report needs at least one input");
  std::map<std::string, std::map<std::pair<int, int>, std::string>> cells;  // kind → (l, p) → text
  std::map<std::string, std::set<int>> seen_chars;
  std::vector<Json> tits_checks;
  std::vector<std::string> notes;
  for (const auto& in : inputs) {
    if (!in.is_object() || in.value("schema_version", 0) != kSchemaVersion || !in.contains("command"))
      throw UsageError("input is not a verify report");
    auto cmd = in.at("command").get<std::string>();
    if (cmd == "verify type-b" || cmd == "verify type-d") {
      auto kind = in.at("kind").get<std::string>();
      for (const auto& c : in.at("cells")) {
        int l = c.at("l"), p = c.at("characteristic");
        std::string text = c.at("observed").get<std::string>();
        const auto& r = c.at("report");
        text += " (" + std::to_string(r.at("dims")[0].get<int>()) + "+" + std::to_string(r.at("dims")[1].get<int>()) +
                ", " + r.at("mode").get<std::string>() + ")";
        if (c.contains("match") && !c.at("match").get<bool>()) text += " MISMATCH";
        cells[kind][{l, p}] = text;
        seen_chars[kind].insert(p);
      }
      if (in.contains("decomposition_l2"))
        for (const auto& d : in.at("decomposition_l2"))
          notes.push_back("Type D l=2 over " + char_label(d.at("characteristic")) + ": ideals of dims " +
                          std::to_string(d.at("ideal_dims")[0].get<int>()) + " and " +
                          std::to_string(d.at("ideal_dims")[1].get<int>()) + ", " +
                          (d.at("pass").get<bool>() ? "direct sum verified" : "decomposition FAILED"));
    } else if (cmd == "verify tits") {
      for (const auto& c : in.at("checks")) tits_checks.push_back(c);
    } else {
      throw UsageError("unknown report command " + cmd);
    }
  }
  std::ostringstream md;
  md << "# spinlab report\n";
  auto table = [&](const std::string& kind, const std::string& title, std::set<int> rows) {
    if (!include_missing && cells[kind].empty()) return;
    md << "\n## " << title << "\n\n";
    std::set<int> chars;
    if (include_missing) chars = {0, 3, 5, 7};
    else rows.clear();
    chars.insert(seen_chars[kind].begin(), seen_chars[kind].end());
    for (const auto& [key, _] : cells[kind]) rows.insert(key.first);
    md << "| l |";
    for (int p : chars) md << " " << char_label(p) << " |";
    md << "\n|---|";
    for (std::size_t i = 0; i < chars.size(); ++i) md << "---|";
    md << "\n";
    for (int l : rows) {
      md << "| " << l << " |";
      for (int p : chars) {
        auto it = cells[kind].find({l, p});
        md << " " << (it == cells[kind].end() ? "not-run" : it->second) << " |";
      }
      md << "\n";
    }
  };
  table("B", "so(2l+1) + spin module", {1, 2, 3, 4, 5, 6, 7, 8});
  table("D", "so(2l) + half-spin module", {2, 4, 6, 8});
  if (!notes.empty()) {
    md << "\n";
    for (const auto& n : notes) md << "- " << n << "\n";
  }
  if (!include_missing && tits_checks.empty()) return {0, md.str()};
  md << "\n## Tits construction\n\n| check | field | expected | observed | detail |\n|---|---|---|---|---|\n";
  if (tits_checks.empty()) md << "| not-run | | | | |\n";
  for (const auto& c : tits_checks) {
    auto obs = c.at("observed").get<std::string>();
    if (!c.at("match").get<bool>()) obs += " MISMATCH";
    auto detail = c.at("detail").get<std::string>();
    std::replace(detail.begin(), detail.end(), '|', '/');
    md << "| " << c.at("name").get<std::string>() << " | " << c.at("field").get<std::string>() << " | "
       << c.at("expected").get<std::string>() << " | " << obs << " | " << detail << " |\n";
  }
  return {0, md.str()};
}

CommandResult render_report_files(const RunConfig& cfg) {
  std::vector<Json> inputs;
  for (const auto& path : cfg.inputs) inputs.push_back(read_json_file(path));
  return render_report(inputs);
}

std::string markdown_for(const Json& report) { return render_report({report}, false).output; }

}  // namespace spinlab::cli
