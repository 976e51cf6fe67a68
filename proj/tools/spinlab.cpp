#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <thread>

#include "commands.hpp"

using namespace spinlab;
using namespace spinlab::cli;

namespace {

struct Flags {
  std::string l, chars, mode, format = "json", out, expected, kind, composition;
  std::uint64_t seed = 0;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  bool survey = false, timing = false, certify = false, tits = false;
  std::vector<std::string> inputs;
};

RunConfig to_config(const Flags& f) {
  RunConfig c;
  if (!f.l.empty()) c.ls = parse_int_list(f.l);
  if (!f.chars.empty()) c.chars = parse_int_list(f.chars);
  if (!f.mode.empty()) {
    try {
      c.mode = parse_mode(f.mode);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  c.seed = f.seed;
  c.workers = f.workers;
  c.format = parse_format(f.format);
  c.survey = f.survey;
  c.timing = f.timing;
  c.certify = f.certify;
  c.expected_path = f.expected;
  if (!f.kind.empty()) {
    if (f.kind == "B" || f.kind == "b") c.kind = Kind::B;
    else if (f.kind == "D" || f.kind == "d") c.kind = Kind::D;
    else throw UsageError("kind must be B or D");
  }
  if (!f.composition.empty()) {
    try {
      c.composition = parse_composition(f.composition);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  c.tits = f.tits;
  c.inputs = f.inputs;
  return c;
}

void add_verify_flags(CLI::App* app, Flags& f) {
  app->add_option("--l", f.l, "l values, e.g. 1..8 or 2,4,6");
  app->add_option("--chars", f.chars, "characteristics, 0 for Q (default 0,3,5,7)");
  app->add_option("--mode", f.mode, "full, odd-only or generators (default: full when the odd part has at most 128 "
                                    "elements, generators otherwise)");
  app->add_option("--seed", f.seed, "seed for randomized procedures");
  app->add_option("--workers", f.workers, "Jacobi scan threads");
  app->add_option("--format", f.format, "json or markdown");
  app->add_option("--out", f.out, "write the report here instead of stdout");
  app->add_option("--expected", f.expected, "pass-set file (default: the shipped data file)");
  app->add_flag("--survey", f.survey, "print verdicts without comparing against the pass set");
  app->add_flag("--timing", f.timing, "record elapsed times (reports are no longer byte-stable)");
  app->add_flag("--certify", f.certify, "also run the simplicity certificate");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of spin and Tits Lie superalgebras"};
  app.require_subcommand(1);
  Flags flags;

  auto* verify = app.add_subcommand("verify", "check the Jacobi identity and compare with the expected table");
  verify->require_subcommand(1);
  auto* vb = verify->add_subcommand("type-b", "so(2l+1) with the spin module");
  auto* vd = verify->add_subcommand("type-d", "so(2l) with a half-spin module");
  auto* vt = verify->add_subcommand("tits", "Tits construction with the Kac superalgebra");
  for (auto* s : {vb, vd, vt}) add_verify_flags(s, flags);

  auto* ex = app.add_subcommand("export", "structure constants as JSON");
  ex->add_option("--l", flags.l, "l");
  ex->add_option("--kind", flags.kind, "B or D");
  ex->add_option("--chars", flags.chars, "characteristic")->required();
  ex->add_option("--composition", flags.composition, "unit, binarion, quaternion or octonion");
  ex->add_flag("--tits", flags.tits, "export T(C, Kac) for the given composition algebra");
  ex->add_option("--out", flags.out, "output file");

  auto* rep = app.add_subcommand("report", "Markdown summary of verify reports");
  rep->add_option("--in", flags.inputs, "verify report JSON files");
  rep->add_option("--out", flags.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto cfg = to_config(flags);
    CommandResult r;
    if (vb->parsed()) r = verify_spin(Kind::B, cfg);
    else if (vd->parsed()) r = verify_spin(Kind::D, cfg);
    else if (vt->parsed()) {
      if (flags.chars.empty()) cfg.chars = {0, 5, 7};
      r = verify_tits(cfg);
    } else if (ex->parsed()) r = export_table(cfg);
    else r = render_report_files(cfg);
    if (flags.out.empty()) {
      std::cout << r.output;
    } else {
      std::ofstream out(flags.out, std::ios::binary);
      if (!out) throw UsageError("cannot write " + flags.out);
      out << r.output;
    }
    return r.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "spinlab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "spinlab: " << e.what() << "\n";
    return 1;
  }
}
