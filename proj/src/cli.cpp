#include "caseforge/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "caseforge/case_model.hpp"
#include "caseforge/checks.hpp"
#include "caseforge/engine.hpp"
#include "caseforge/parser.hpp"
#include "caseforge/printer.hpp"
#include "caseforge/report.hpp"
#include "caseforge/translator.hpp"

namespace caseforge {

namespace {

const std::vector<std::string> kCheckOrder = {
    "indefeasibility", "theory-application", "consistency",
    "adequacy",        "completeness",       "harmony"};

bool needs_rules(const std::string& check) {
  return check == "consistency" || check == "adequacy" || check == "completeness" ||
         check == "harmony";
}

std::string export_base(const std::string& case_path) {
  const std::string case_suffix = ".case.json";
  const std::string json_suffix = ".json";
  if (case_path.size() > case_suffix.size() &&
      case_path.compare(case_path.size() - case_suffix.size(), case_suffix.size(), case_suffix) == 0) {
    return case_path.substr(0, case_path.size() - case_suffix.size());
  }
  if (case_path.size() > json_suffix.size() &&
      case_path.compare(case_path.size() - json_suffix.size(), json_suffix.size(), json_suffix) == 0) {
    return case_path.substr(0, case_path.size() - json_suffix.size());
  }
  return case_path;
}

std::string base_name(const std::string& path) {
  std::size_t slash = path.find_last_of("/\\");
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

AssuranceCase load_valid_case(const CliConfig& cfg, std::ostream& err) {
  AssuranceCase c = load_case_file(cfg.case_path);
  std::vector<Diagnostic> diagnostics = validate_case(c);
  bool failed = false;
  for (const Diagnostic& d : diagnostics) {
    if (d.severity == Diagnostic::Severity::error) failed = true;
    err << (d.severity == Diagnostic::Severity::error ? "error" : "warning") << " [" << d.rule
        << "]";
    if (!d.node_id.empty()) err << " at " << d.node_id;
    err << ": " << d.message << "\n";
  }
  if (failed) throw CaseError("case fails validation");
  return c;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CaseError("cannot write file: " + path);
  out << content;
}

}  // namespace

int cmd_export(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    AssuranceCase c = load_valid_case(cfg, err);
    ExportBundle bundle = translate_case(c);
    std::string base = export_base(cfg.case_path);
    const std::vector<std::pair<std::string, std::string>> files = {
        {base + ".rules.lp", render_program(bundle.core)},
        {base + ".query.lp", render_query(bundle.positive_query)},
        {base + ".nquery.lp", render_query(bundle.negative_query)},
        {base + ".theories.lp", render_program(bundle.theories)},
        {base + ".defeaters.lp", render_program(bundle.defeater_constraints)},
    };
    for (const auto& [path, content] : files) {
      write_file(path, content);
      out << path << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_check(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    AssuranceCase c = load_valid_case(cfg, err);

    std::optional<SemanticRuleSet> rules;
    if (cfg.rules_path) rules = load_rule_set_file(*cfg.rules_path);

    std::vector<std::string> requested = cfg.check_names;
    bool defaulted = requested.empty();
    if (defaulted) {
      for (const std::string& name : kCheckOrder) {
        if (!needs_rules(name) || rules) requested.push_back(name);
      }
    }
    for (const std::string& name : requested) {
      if (std::find(kCheckOrder.begin(), kCheckOrder.end(), name) == kCheckOrder.end()) {
        err << "error: unknown check '" << name << "'\n";
        return 1;
      }
      if (needs_rules(name) && !rules) {
        err << "error: check '" << name << "' requires --rules\n";
        return 1;
      }
    }
    if (defaulted && !rules) {
      err << "note: no --rules file; running structural checks only\n";
    }

    SolveOptions opts;
    opts.depth_limit = cfg.depth_limit;
    opts.max_answers = cfg.max_answers;

    std::vector<Verdict> verdicts;
    for (const std::string& name : requested) {
      if (name == "indefeasibility") {
        verdicts.push_back(check_indefeasibility(c, opts));
      } else if (name == "theory-application") {
        verdicts.push_back(check_theory_application(c));
      } else if (name == "consistency") {
        verdicts.push_back(check_consistency(c, *rules, opts));
      } else if (name == "adequacy") {
        for (Verdict& v : check_adequacy(c, *rules, opts)) verdicts.push_back(std::move(v));
      } else if (name == "completeness") {
        for (Verdict& v : check_completeness(c, *rules, opts)) verdicts.push_back(std::move(v));
      } else if (name == "harmony") {
        verdicts.push_back(check_theory_harmony(c, *rules, opts));
      }
    }

    bool all_passed = true;
    for (const Verdict& v : verdicts) all_passed = all_passed && v.passed;

    Report report = make_report("semantic analysis of " + base_name(cfg.case_path), c.root(),
                                std::move(verdicts));
    out << render_text(report);
    if (cfg.html_path) write_file(*cfg.html_path, render_html(report));
    return all_passed ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_query(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    AssuranceCase c = load_valid_case(cfg, err);
    Program program = analysis_program(c);

    SolveOptions opts;
    opts.depth_limit = cfg.depth_limit;
    opts.max_answers = cfg.max_answers;

    std::string text = cfg.query_text;
    std::size_t begin = text.find_first_not_of(" \t");
    if (begin != std::string::npos) text = text.substr(begin);

    if (text.rfind("not ", 0) == 0) {
      Query q = parse_query(text.substr(4));
      std::optional<Answer> negation = prove_negation(program, q, opts);
      if (!negation) {
        out << "negation fails: the positive query succeeds.\n";
        return 2;
      }
      out << "negation holds.\n";
      out << render_justification(negation->justification);
      return 0;
    }

    Query q = parse_query(text);
    std::vector<Answer> answers = solve(program, q, opts);
    if (answers.empty()) {
      out << "no answers.\n";
      return 2;
    }
    for (std::size_t i = 0; i < answers.size(); ++i) {
      out << "answer " << (i + 1) << ": " << render_witness(answers[i].bindings) << "\n";
      out << render_justification(answers[i].justification);
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"assurance case translation and semantic analysis"};
  app.require_subcommand(1);

  CliConfig cfg;
  if (const char* env = std::getenv("CASEFORGE_DEPTH_LIMIT")) {
    char* end = nullptr;
    unsigned long long value = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && value > 0) cfg.depth_limit = static_cast<std::size_t>(value);
  }

  CLI::App* cmd_export_app = app.add_subcommand("export", "translate a case into five .lp files");
  cmd_export_app->add_option("case", cfg.case_path, "case document (JSON)")->required();

  CLI::App* cmd_check_app = app.add_subcommand("check", "run semantic checks");
  cmd_check_app->add_option("case", cfg.case_path, "case document (JSON)")->required();
  cmd_check_app->add_option("--rules", cfg.rules_path, "semantic rule-set file");
  cmd_check_app->add_option("--check", cfg.check_names,
                            "check to run (repeatable): indefeasibility, theory-application, "
                            "consistency, adequacy, completeness, harmony");
  cmd_check_app->add_option("--html", cfg.html_path, "write an HTML report to this path");
  cmd_check_app->add_option("--max-answers", cfg.max_answers, "answer cap per query");

  CLI::App* cmd_query_app = app.add_subcommand("query", "run a query against the translated case");
  cmd_query_app->add_option("case", cfg.case_path, "case document (JSON)")->required();
  cmd_query_app->add_option("query", cfg.query_text, "query text; prefix with 'not ' to negate")
      ->required();
  cmd_query_app->add_option("--max-answers", cfg.max_answers, "answer cap");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (cmd_export_app->parsed()) {
    cfg.command = "export";
    return cmd_export(cfg, out, err);
  }
  if (cmd_check_app->parsed()) {
    cfg.command = "check";
    return cmd_check(cfg, out, err);
  }
  cfg.command = "query";
  return cmd_query(cfg, out, err);
}

}  // namespace caseforge
