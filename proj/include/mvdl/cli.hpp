#ifndef MVDL_CLI_HPP
#define MVDL_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvdl/core.hpp"
#include "mvdl/learner.hpp"
#include "mvdl/oracles.hpp"
#include "mvdl/reductions.hpp"
#include "mvdl/relations.hpp"
#include "mvdl/text.hpp"

namespace mvdl::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInvalidInput = 2, kContract = 3, kBound = 4 };

struct CliConfig {
  std::string command;
  std::string target;
  std::string oracle = "exhaustive";  // exhaustive | random | script
  std::uint64_t seed = 0;
  std::string script;
  std::string trace;
  std::size_t max_vars = kDefaultEnumerationCap;
  std::string format = "text";  // text | trace
  std::string examples = "entailments";
  std::string relation;
  std::string mvd;
  std::string formula;
  std::string clause;
  std::string kind = "mvd";  // clause kind for `entails`: mvd | horn | quasi2
};

class UsageError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Prefixes parse diagnostics with the file they came from.
template <class F>
auto in_file(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

inline Strategy strategy_of(const CliConfig& c) {
  if (c.oracle == "exhaustive") return Strategy::exhaustive;
  if (c.oracle == "random") return Strategy::random;
  return Strategy::scripted;
}

/// Non-comment lines of a script, each parsed by `parse`.
template <class E, class Parse>
std::vector<ScriptEntry<E>> line_script(const std::string& path, Parse&& parse) {
  std::istringstream in(read_file(path));
  std::vector<ScriptEntry<E>> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto body = mvdl::detail::trim(mvdl::detail::strip_comment(raw));
    if (body.empty()) continue;
    out.push_back({in_file(path, [&] { return parse(body, line); }), line});
  }
  return out;
}

/// CSV blocks separated by lines holding only `---`; each block has a header.
inline std::vector<ScriptEntry<Relation>> relation_script(const std::string& path, const SchemaPtr& schema) {
  std::istringstream in(read_file(path));
  std::vector<ScriptEntry<Relation>> out;
  std::string raw, block;
  std::size_t line = 0, block_start = 1;
  auto flush = [&] {
    if (mvdl::detail::trim(block).empty()) return;
    try {
      out.push_back({read_csv_text(block, schema), block_start});
    } catch (const ParseError& e) {
      throw InvalidInput(path + ": line " + std::to_string(block_start + e.line() - 1) + " (block starting at line " +
                         std::to_string(block_start) + "): " + e.what());
    }
  };
  while (std::getline(in, raw)) {
    ++line;
    if (mvdl::detail::trim(raw) == "---") {
      flush();
      block.clear();
      block_start = line + 1;
      continue;
    }
    block += raw + "\n";
  }
  flush();
  return out;
}

struct Session {
  const CliConfig& config;
  std::ostream& out;
  std::vector<std::string> trace;

  LearnerOptions options(std::size_t target_size) {
    LearnerOptions o;
    o.target_size = target_size;
    o.observer = [this](const IterationRecord& r, const LearnerState& s) {
      std::string line = format(r) + " P=" + std::to_string(s.positives.size()) +
                         " L=" + std::to_string(s.negatives.size()) +
                         " H=" + std::to_string(class_count(s.hypothesis)) +
                         " mem=" + std::to_string(r.stats.membership) + " eq=" + std::to_string(r.stats.equivalence);
      if (r.stats.potential) line += " E=" + std::to_string(*r.stats.potential);
      trace.push_back(std::move(line));
    };
    return o;
  }

  template <class Fw, class Target>
  Teacher<Fw> teacher(const Target& target, std::vector<ScriptEntry<typename Fw::Example>> script) {
    return Teacher<Fw>(target, strategy_of(config), config.seed, std::move(script), config.max_vars);
  }

  void finish(const std::string& result, const QueryStats& stats, const std::string& note = {}) {
    if (!config.trace.empty()) {
      std::ofstream t(config.trace, std::ios::binary);
      if (!t) throw InvalidInput("cannot write '" + config.trace + "'");
      for (const auto& l : trace) t << l << "\n";
    }
    if (config.format == "trace")
      for (const auto& l : trace) out << l << "\n";
    out << result;
    out << "# " << format(stats) << "\n";
    if (!note.empty()) out << "# " << note << "\n";
  }
};

inline MvdFormula load_mvd(const std::string& path) {
  return in_file(path, [&] { return parse_mvd_formula(read_file(path)); });
}

inline HornFormula load_horn(const std::string& path) {
  return in_file(path, [&] { return parse_horn_formula(read_file(path)); });
}

inline int cmd_learn(const CliConfig& c, std::ostream& out) {
  auto target = load_mvd(c.target);
  const auto& u = target.universe();
  require_enumerable(u, c.max_vars);
  std::vector<ScriptEntry<Interpretation>> script;
  if (!c.script.empty())
    script = line_script<Interpretation>(c.script, [&](std::string_view l, std::size_t n) { return parse_bitstring(l, u, n); });
  Session s{c, out, {}};
  auto teacher = s.teacher<InterpretationFramework>(target, std::move(script));
  auto result = learn(u, teacher.membership_oracle(), teacher.equivalence_oracle(), s.options(class_count(target)));
  s.finish(format(result.hypothesis), result.stats);
  return kOk;
}

inline int cmd_learn_mvd(const CliConfig& c, std::ostream& out) {
  auto target = load_mvd(c.target);
  const auto& u = target.universe();
  require_enumerable(u, c.max_vars);
  for (const auto& m : target)
    if (!m.is_proper())
      throw InvalidInput(c.target + ": relation targets may only hold proper dependencies, found '" + format(m) + "'");
  std::vector<ScriptEntry<Relation>> script;
  if (!c.script.empty()) script = relation_script(c.script, u);
  Session s{c, out, {}};
  auto teacher = s.teacher<RelationFramework>(target, std::move(script));
  auto result = learn_mvd_from_relations(u, teacher.membership_oracle(), teacher.equivalence_oracle(),
                                         s.options(class_count(target)));
  s.finish(format(result.hypothesis), result.stats);
  return kOk;
}

inline int cmd_learn_horn(const CliConfig& c, std::ostream& out) {
  auto target = load_horn(c.target);
  const auto& u = target.universe();
  require_enumerable(u, c.max_vars);
  const std::size_t m = class_count(horn_to_mvd(target));
  Session s{c, out, {}};
  HornLearnResult result{HornFormula(u), {MvdFormula(u), {}, LearnerState(u)}};
  if (c.examples == "interpretations") {
    std::vector<ScriptEntry<Interpretation>> script;
    if (!c.script.empty())
      script = line_script<Interpretation>(c.script, [&](std::string_view l, std::size_t n) { return parse_bitstring(l, u, n); });
    auto teacher = s.teacher<InterpretationFramework>(target, std::move(script));
    result = horn_i_via_mvdf(u, teacher.membership_oracle(), teacher.equivalence_oracle(), s.options(m), c.max_vars);
  } else {
    // The entailment translation never asks about the all-true interpretation.
    for (const auto& h : target)
      if (h.is_bottom())
        throw InvalidInput(c.target + ": learning from entailments needs a definite target, found '" + format(h) + "'");
    std::vector<ScriptEntry<HornClause>> script;
    if (!c.script.empty())
      script = line_script<HornClause>(c.script, [&](std::string_view l, std::size_t n) { return parse_horn_clause(l, u, n); });
    auto teacher = s.teacher<HornEntailmentFramework>(target, std::move(script));
    result = learn_horn_from_entailments(u, teacher.membership_oracle(), teacher.equivalence_oracle(), s.options(m),
                                         c.max_vars);
  }
  s.finish(format(result.formula), result.inner.stats);
  return kOk;
}

inline int cmd_learn_q(const CliConfig& c, std::ostream& out) {
  auto target = load_mvd(c.target);
  const auto& u = target.universe();
  require_enumerable(u, c.max_vars);
  std::vector<ScriptEntry<QuasiHorn2Clause>> script;
  if (!c.script.empty())
    script = line_script<QuasiHorn2Clause>(c.script, [&](std::string_view l, std::size_t n) { return parse_quasi2_clause(l, u, n); });
  Session s{c, out, {}};
  auto teacher = s.teacher<Quasi2Framework>(target, std::move(script));
  auto result = learn_mvdf_from_quasi2(u, teacher.membership_oracle(), teacher.equivalence_oracle(),
                                       s.options(class_count(target)), c.max_vars);
  s.finish(format(result.hypothesis), result.stats,
           "counterexample translation enumerates interpretations; query counts are not polynomially bounded");
  return kOk;
}

inline int cmd_check_mvd(const CliConfig& c, std::ostream& out, std::ostream& err) {
  std::ifstream in(c.relation, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + c.relation + "'");
  auto r = in_file(c.relation, [&] { return read_csv(in); });
  if (r.duplicates_dropped()) err << "warning: " << r.duplicates_dropped() << " duplicate rows dropped\n";
  auto m = in_file("--mvd", [&] { return parse_mvd_clause(c.mvd, r.schema()); });
  if (auto pair = find_violating_pair(r, m)) {
    out << "violated\n" << csv_row(pair->first) << "\n" << csv_row(pair->second) << "\n";
  } else {
    out << "holds\n";
  }
  return kOk;
}

inline int cmd_entails(const CliConfig& c, std::ostream& out) {
  const std::string text = read_file(c.formula);
  auto answer = [&](const auto& f) {
    const auto& u = f.universe();
    require_enumerable(u, c.max_vars);
    return in_file("--clause", [&] {
      if (c.kind == "horn") return entails(f, parse_horn_clause(c.clause, u), c.max_vars);
      if (c.kind == "quasi2") return entails(f, parse_quasi2_clause(c.clause, u), c.max_vars);
      return entails(f, parse_mvd_clause(c.clause, u), c.max_vars);
    });
  };
  bool yes;
  try {
    yes = answer(parse_mvd_formula(text));
  } catch (const ParseError& mvd_error) {
    // Horn files use a single head per line; try that reading before giving up.
    try {
      yes = answer(parse_horn_formula(text));
    } catch (const ParseError&) {
      throw InvalidInput(c.formula + ": " + mvd_error.what());
    }
  }
  out << (yes ? "yes" : "no") << "\n";
  return kOk;
}

}  // namespace detail

/// Runs one command. Diagnostics go to `err` as a single line.
inline int run(const CliConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.oracle != "exhaustive" && c.oracle != "random" && c.oracle != "script")
      throw UsageError("--oracle must be exhaustive, random or script");
    if ((c.oracle == "script") != !c.script.empty()) throw UsageError("--script is required exactly when --oracle script");
    if (c.format != "text" && c.format != "trace") throw UsageError("--format must be text or trace");
    if (c.command == "learn") return detail::cmd_learn(c, out);
    if (c.command == "learn-mvd") return detail::cmd_learn_mvd(c, out);
    if (c.command == "learn-horn") {
      if (c.examples != "entailments" && c.examples != "interpretations")
        throw UsageError("--examples must be entailments or interpretations");
      return detail::cmd_learn_horn(c, out);
    }
    if (c.command == "learn-q") return detail::cmd_learn_q(c, out);
    if (c.command == "check-mvd") return detail::cmd_check_mvd(c, out, err);
    if (c.command == "entails") {
      if (c.kind != "mvd" && c.kind != "horn" && c.kind != "quasi2")
        throw UsageError("--kind must be mvd, horn or quasi2");
      return detail::cmd_entails(c, out);
    }
    throw UsageError("unknown command '" + c.command + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const ContractViolation& e) {
    err << "oracle or contract violation: " << e.what() << "\n";
    return kContract;
  } catch (const BoundViolation& e) {
    err << "bound violation: " << e.what() << "\n";
    return kBound;
  }
}

/// Parses `argv` and runs the selected command.
inline int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact learning of multivalued dependency formulas with membership and equivalence queries", "mvdl"};
  app.require_subcommand(1);
  CliConfig c;

  auto add_learning = [&](CLI::App* sub) {
    sub->add_option("--target", c.target, "target formula file")->required();
    sub->add_option("--oracle", c.oracle, "exhaustive | random | script")->capture_default_str();
    sub->add_option("--seed", c.seed, "seed for --oracle random")->capture_default_str();
    sub->add_option("--script", c.script, "counterexample script for --oracle script");
    sub->add_option("--trace", c.trace, "write one trace record per iteration to this file");
    sub->add_option("--max-vars", c.max_vars, "enumeration cap on the number of variables")->capture_default_str();
    sub->add_option("--format", c.format, "text | trace")->capture_default_str();
  };
  auto* learn = app.add_subcommand("learn", "learn an mvd formula from interpretations");
  add_learning(learn);
  auto* learn_mvd = app.add_subcommand("learn-mvd", "learn multivalued dependencies from relations");
  add_learning(learn_mvd);
  auto* learn_horn = app.add_subcommand("learn-horn", "learn a Horn formula");
  add_learning(learn_horn);
  learn_horn->add_option("--examples", c.examples, "entailments | interpretations")->capture_default_str();
  auto* learn_q = app.add_subcommand("learn-q", "learn an mvd formula from 2-quasi-Horn clauses");
  add_learning(learn_q);
  auto* check = app.add_subcommand("check-mvd", "check a dependency against a CSV relation");
  check->add_option("--relation", c.relation, "CSV file with a header row")->required();
  check->add_option("--mvd", c.mvd, "dependency such as 'NAME -> BOOK | PET'")->required();
  auto* ent = app.add_subcommand("entails", "decide whether a formula entails a clause");
  ent->add_option("--formula", c.formula, "formula file")->required();
  ent->add_option("--clause", c.clause, "clause in the file syntax")->required();
  ent->add_option("--kind", c.kind, "mvd | horn | quasi2")->capture_default_str();
  ent->add_option("--max-vars", c.max_vars, "enumeration cap on the number of variables")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  c.command = app.get_subcommands().front()->get_name();
  return run(c, out, err);
}

}  // namespace mvdl::cli

#endif  // MVDL_CLI_HPP
