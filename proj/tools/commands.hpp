#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinlab/serialize.hpp"
#include "spinlab/spin_construct.hpp"

namespace spinlab::cli {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Format { json, markdown };

struct RunConfig {
  std::vector<int> ls;
  std::vector<int> chars{0, 3, 5, 7};
  std::optional<JacobiMode> mode;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  Format format = Format::json;
  bool survey = false;
  bool timing = false;
  bool certify = false;
  std::string expected_path;  // empty: the data file shipped with the repository

  // export
  std::optional<Kind> kind;
  std::optional<CompositionKind> composition;
  bool tits = false;

  // report
  std::vector<std::string> inputs;
};

struct CommandResult {
  int exit_code = 0;
  std::string output;
};

/// "1..8", "2,4,6" or a mix such as "1..3,7".
std::vector<int> parse_int_list(const std::string& text);
Format parse_format(const std::string& s);

/// Which (l, char) cells are expected to pass.
class PassSet {
 public:
  static PassSet load(const std::string& path);
  bool expects_pass(int l, int p) const;

 private:
  std::vector<std::pair<int, std::optional<std::vector<int>>>> rows_;
};

std::string default_expected_path(Kind kind);

/// Classification table. Exit 1 when an observed verdict differs from the pass set
/// (never in survey mode).
CommandResult verify_spin(Kind kind, const RunConfig& cfg);
CommandResult verify_tits(const RunConfig& cfg);
/// Structure-constant table of a spin algebra (kind + one l + one char), a Tits superalgebra
/// (composition + tits), or a composition multiplication table (composition alone).
CommandResult export_table(const RunConfig& cfg);
/// Markdown summary of previously written verify reports. With `include_missing`, every
/// table is rendered and cells that were not run say so.
CommandResult render_report(const std::vector<Json>& inputs, bool include_missing = true);
CommandResult render_report_files(const RunConfig& cfg);

std::string markdown_for(const Json& report);

}  // namespace spinlab::cli
