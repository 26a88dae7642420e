#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace caseforge {

struct CliConfig {
  std::string command;  // export | check | query
  std::string case_path;
  std::optional<std::string> rules_path;
  std::vector<std::string> check_names;
  std::optional<std::string> html_path;
  std::string query_text;
  std::size_t max_answers = 10;
  std::size_t depth_limit = 10000;
};

// Exit codes: 0 success / all checks pass, 2 semantic failure found,
// 1 usage, IO, or parse error. Reports go to out, diagnostics to err.
int cmd_export(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_check(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_query(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses arguments (without argv[0]) and dispatches. Reads
/// CASEFORGE_DEPTH_LIMIT from the environment for the solver depth limit.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace caseforge
