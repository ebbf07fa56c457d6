#ifndef MVDL_TEXT_HPP
#define MVDL_TEXT_HPP

// Line-oriented text format shared by formula files, scripts and the CLI:
//
//   vars: 1 2 3 4 5
//   2 3 4 5 -> 1 | -      # mvd clause, '-' marks an empty side
//   1 2 3 -> 4 | 5
//   * -> F                # V -> F
//
// In an antecedent, '*' stands for every variable not named elsewhere in the
// clause and '-' (or nothing) for the empty set. Horn lines have a single
// head (`1 3 5 -> 4`), 2-quasi-Horn lines one or two (`1 -> 2 4`).

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mvdl/core.hpp"

namespace mvdl {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::string_view strip_comment(std::string_view s) {
  auto h = s.find('#');
  return h == std::string_view::npos ? s : s.substr(0, h);
}

inline std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

/// One side of a clause. `star` is set when the side is '*'.
struct SideSpec {
  VarSet vars;
  bool star = false;
};

inline SideSpec parse_side(std::string_view text, const VariableUniverse& u, std::size_t line) {
  auto toks = tokens(text);
  SideSpec side;
  if (toks.empty() || (toks.size() == 1 && toks[0] == "-")) return side;
  if (toks.size() == 1 && toks[0] == "*") {
    side.star = true;
    return side;
  }
  for (auto t : toks) {
    if (t == "-" || t == "*") throw ParseError(line, "'" + std::string(t) + "' must stand alone");
    auto idx = u.index_of(t);
    if (!idx) throw ParseError(line, "unknown variable '" + std::string(t) + "'");
    if (side.vars.contains(*idx)) throw ParseError(line, "variable '" + std::string(t) + "' repeated");
    side.vars.insert(*idx);
  }
  return side;
}

struct Arrow {
  std::string_view lhs;
  std::string_view rhs;
};

inline Arrow split_arrow(std::string_view text, std::size_t line) {
  auto pos = text.find("->");
  if (pos == std::string_view::npos) throw ParseError(line, "expected '->'");
  if (text.find("->", pos + 2) != std::string_view::npos) throw ParseError(line, "more than one '->'");
  return {trim(text.substr(0, pos)), trim(text.substr(pos + 2))};
}

inline VarSet resolve_antecedent(const SideSpec& lhs, VarSet rest, const VariableUniverse& u) {
  return lhs.star ? u.all() - rest : lhs.vars;
}

template <class Build>
auto rethrow_with_line(std::size_t line, Build&& build) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ParseError(line, e.what());
  }
}

}  // namespace detail

/// Parses `vars: a b c`.
inline UniversePtr parse_vars_header(std::string_view line_text, std::size_t line = 1) {
  auto body = detail::trim(detail::strip_comment(line_text));
  if (body.substr(0, 5) != "vars:") throw ParseError(line, "expected 'vars:' header");
  std::vector<std::string> names;
  for (auto t : detail::tokens(body.substr(5))) names.emplace_back(t);
  return detail::rethrow_with_line(line, [&] { return VariableUniverse::make(std::move(names)); });
}

inline MvdClause parse_mvd_clause(std::string_view text, const UniversePtr& u, std::size_t line = 1) {
  auto [lhs_text, rhs_text] = detail::split_arrow(detail::trim(detail::strip_comment(text)), line);
  auto lhs = detail::parse_side(lhs_text, *u, line);
  if (rhs_text == "F") {
    if (!lhs.star && lhs.vars != u->all()) throw ParseError(line, "'-> F' requires the antecedent '*' or every variable");
    return MvdClause::bottom(u);
  }
  auto bar = rhs_text.find('|');
  detail::SideSpec y, z;
  if (bar == std::string_view::npos) {
    y = detail::parse_side(rhs_text, *u, line);
  } else {
    if (rhs_text.find('|', bar + 1) != std::string_view::npos) throw ParseError(line, "more than one '|'");
    y = detail::parse_side(rhs_text.substr(0, bar), *u, line);
    z = detail::parse_side(rhs_text.substr(bar + 1), *u, line);
  }
  if (y.star || z.star) throw ParseError(line, "'*' is only allowed in the antecedent");
  VarSet x = detail::resolve_antecedent(lhs, y.vars | z.vars, *u);
  return detail::rethrow_with_line(line, [&] { return MvdClause::make(u, x, y.vars, z.vars); });
}

inline HornClause parse_horn_clause(std::string_view text, const UniversePtr& u, std::size_t line = 1) {
  auto [lhs_text, rhs_text] = detail::split_arrow(detail::trim(detail::strip_comment(text)), line);
  auto lhs = detail::parse_side(lhs_text, *u, line);
  if (rhs_text == "F") {
    VarSet x = lhs.star ? u->all() : lhs.vars;
    return detail::rethrow_with_line(line, [&] { return HornClause::make(u, x, std::nullopt); });
  }
  auto head = detail::parse_side(rhs_text, *u, line);
  if (head.star || head.vars.size() != 1) throw ParseError(line, "a Horn clause needs exactly one head variable or F");
  VarSet x = detail::resolve_antecedent(lhs, head.vars, *u);
  return detail::rethrow_with_line(line, [&] { return HornClause::make(u, x, head.vars.lowest()); });
}

inline QuasiHorn2Clause parse_quasi2_clause(std::string_view text, const UniversePtr& u, std::size_t line = 1) {
  auto [lhs_text, rhs_text] = detail::split_arrow(detail::trim(detail::strip_comment(text)), line);
  auto lhs = detail::parse_side(lhs_text, *u, line);
  detail::SideSpec heads;
  if (rhs_text != "F") {
    heads = detail::parse_side(rhs_text, *u, line);
    if (heads.star || heads.vars.empty()) throw ParseError(line, "expected one or two head variables or F");
  }
  VarSet x = detail::resolve_antecedent(lhs, heads.vars, *u);
  return detail::rethrow_with_line(line, [&] { return QuasiHorn2Clause::make(u, x, heads.vars); });
}

namespace detail {

template <class Formula, class ParseLine>
Formula parse_with_header(std::string_view text, ParseLine&& parse_line) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  UniversePtr u;
  std::optional<Formula> out;
  while (std::getline(in, raw)) {
    ++line;
    auto body = trim(strip_comment(raw));
    if (body.empty()) continue;
    if (!u) {
      u = parse_vars_header(body, line);
      out.emplace(u);
      continue;
    }
    out->add(parse_line(body, u, line));
  }
  if (!u) throw ParseError(line == 0 ? 1 : line, "missing 'vars:' header");
  return std::move(*out);
}

}  // namespace detail

inline MvdFormula parse_mvd_formula(std::string_view text) {
  return detail::parse_with_header<MvdFormula>(
      text, [](std::string_view l, const UniversePtr& u, std::size_t n) { return parse_mvd_clause(l, u, n); });
}

inline HornFormula parse_horn_formula(std::string_view text) {
  return detail::parse_with_header<HornFormula>(
      text, [](std::string_view l, const UniversePtr& u, std::size_t n) { return parse_horn_clause(l, u, n); });
}

// --- formatting -------------------------------------------------------------

inline std::string format_vars(VarSet s, const VariableUniverse& u) {
  if (s.empty()) return "-";
  std::string out;
  for (std::size_t v : s) {
    if (!out.empty()) out += ' ';
    out += u.name(v);
  }
  return out;
}

inline std::string format_vars_header(const VariableUniverse& u) { return "vars: " + format_vars(u.all(), u); }

inline std::string format(const MvdClause& c) {
  const auto& u = *c.universe();
  if (c.is_bottom()) return "* -> F";
  return format_vars(c.antecedent(), u) + " -> " + format_vars(c.left(), u) + " | " + format_vars(c.right(), u);
}

inline std::string format(const HornClause& c) {
  const auto& u = *c.universe();
  if (c.is_bottom()) return "* -> F";
  return format_vars(c.antecedent(), u) + " -> " + u.name(*c.head());
}

inline std::string format(const QuasiHorn2Clause& c) {
  const auto& u = *c.universe();
  return format_vars(c.antecedent(), u) + " -> " + (c.heads().empty() ? std::string("F") : format_vars(c.heads(), u));
}

/// One canonical line per orientation class.
inline std::string format(const MvdFormula& f) {
  std::string out = format_vars_header(*f.universe()) + "\n";
  for (const auto& c : canonical_clauses(f)) out += format(c) + "\n";
  return out;
}

inline std::string format(const HornFormula& f) {
  std::string out = format_vars_header(*f.universe()) + "\n";
  for (const auto& c : f) out += format(c) + "\n";
  return out;
}

/// Bitstring in variable-declaration order: "11100" is {1,2,3} over 1..5.
inline std::string to_bitstring(const Interpretation& i) {
  std::string out(i.universe()->size(), '0');
  for (std::size_t v : i.true_set()) out[v] = '1';
  return out;
}

inline Interpretation parse_bitstring(std::string_view text, const UniversePtr& u, std::size_t line = 1) {
  auto s = detail::trim(detail::strip_comment(text));
  if (s.size() != u->size())
    throw ParseError(line, "bitstring of length " + std::to_string(s.size()) + " for " + std::to_string(u->size()) +
                               " variables");
  VarSet t;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      t.insert(i);
    else if (s[i] != '0')
      throw ParseError(line, "bitstring may only contain 0 and 1");
  }
  return {u, t};
}

}  // namespace mvdl

#endif  // MVDL_TEXT_HPP
