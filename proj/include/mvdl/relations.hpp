#ifndef MVDL_RELATIONS_HPP
#define MVDL_RELATIONS_HPP

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mvdl/core.hpp"

namespace mvdl {

/// Attribute schemas reuse the variable universe: attribute i of a relation
/// is variable i of the aligned universe.
using AttributeSchema = VariableUniverse;
using SchemaPtr = UniversePtr;

/// One text value per attribute.
using Tuple = std::vector<std::string>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& v : t) h ^= std::hash<std::string>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// A set of tuples over a schema. Row order is the order of first insertion.
class Relation {
 public:
  explicit Relation(SchemaPtr schema) : schema_(std::move(schema)) {
    if (!schema_) throw InvalidInput("relation without a schema");
  }

  /// Returns false when the tuple was already present.
  bool insert(Tuple t) {
    if (t.size() != schema_->size())
      throw InvalidInput("tuple of arity " + std::to_string(t.size()) + " for a schema of " +
                         std::to_string(schema_->size()) + " attributes");
    if (!index_.insert(t).second) {
      ++duplicates_;
      return false;
    }
    rows_.push_back(std::move(t));
    return true;
  }

  bool contains(const Tuple& t) const { return index_.count(t) != 0; }

  const SchemaPtr& schema() const { return schema_; }
  const SchemaPtr& universe() const { return schema_; }
  const std::vector<Tuple>& tuples() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  std::size_t duplicates_dropped() const { return duplicates_; }

 private:
  SchemaPtr schema_;
  std::vector<Tuple> rows_;
  std::unordered_set<Tuple, TupleHash> index_;
  std::size_t duplicates_ = 0;
};

namespace detail {

inline bool agree_on(const Tuple& a, const Tuple& b, VarSet attrs) {
  for (std::size_t i : attrs)
    if (a[i] != b[i]) return false;
  return true;
}

/// Tuple taking `from_b` attributes from b and the rest from a.
inline Tuple splice(const Tuple& a, const Tuple& b, VarSet from_b) {
  Tuple out = a;
  for (std::size_t i : from_b) out[i] = b[i];
  return out;
}

/// The unordered pair (a, b) breaks X ->> Y | Z in r.
inline bool pair_breaks(const Relation& r, const MvdClause& m, const Tuple& a, const Tuple& b) {
  if (!agree_on(a, b, m.antecedent())) return false;
  return !r.contains(splice(a, b, m.left())) || !r.contains(splice(a, b, m.right()));
}

}  // namespace detail

/// First pair of rows (row order) witnessing that m fails in r.
inline std::optional<std::pair<Tuple, Tuple>> find_violating_pair(const Relation& r, const MvdClause& m) {
  require_same_universe(r.schema(), m.universe());
  if (!m.is_proper()) return std::nullopt;  // a swap with an empty side reproduces an existing tuple
  const auto& rows = r.tuples();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (detail::pair_breaks(r, m, rows[i], rows[j])) return std::make_pair(rows[i], rows[j]);
  return std::nullopt;
}

/// For every t, t' agreeing on X, the tuple t[X] t'[Y] t[Z] is in r.
inline bool mvd_holds(const Relation& r, const MvdClause& m) { return !find_violating_pair(r, m).has_value(); }

inline bool mvd_holds(const Relation& r, const MvdFormula& f) {
  require_same_universe(r.schema(), f.universe());
  return std::all_of(f.begin(), f.end(), [&](const MvdClause& m) { return mvd_holds(r, m); });
}

/// The interpretation making true exactly the attributes on which t and t' agree.
inline Interpretation agreement_interp(const Tuple& t, const Tuple& t2, const UniversePtr& u) {
  if (t.size() != u->size() || t2.size() != u->size()) throw InvalidInput("tuple arity does not match the universe");
  VarSet agree;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] == t2[i]) agree.insert(i);
  return {u, agree};
}

/// Two tuples that agree exactly on true(I): all "0", and "0"/"1" where I is
/// true/false. Collapses to a single tuple when I is all-true.
inline Relation interp_to_pair(const Interpretation& i, const SchemaPtr& schema) {
  require_same_universe(i.universe(), schema);
  Relation r(schema);
  Tuple a(schema->size(), "0");
  Tuple b = a;
  for (std::size_t v : i.false_set()) b[v] = "1";
  r.insert(std::move(a));
  r.insert(std::move(b));
  return r;
}

// --- CSV ---------------------------------------------------------------------

namespace detail {

/// Splits CSV text into records; `first_line` receives the 1-based line on
/// which each record starts.
inline std::vector<std::vector<std::string>> csv_records(std::istream& in, std::vector<std::size_t>& first_line) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false, field_started = false, any = false;
  std::size_t line = 1, record_line = 1;
  auto end_record = [&] {
    if (field_started || !record.empty() || !field.empty()) {
      record.push_back(std::move(field));
      out.push_back(std::move(record));
      first_line.push_back(record_line);
    }
    record.clear();
    field.clear();
    field_started = false;
  };
  char c;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        record_line = line;
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) throw ParseError(record_line, "unterminated quoted field");
  end_record();
  if (!any) throw InvalidInput("empty CSV input");
  return out;
}

}  // namespace detail

/// Reads a CSV relation whose first record is the header. Duplicate rows are
/// collapsed (see Relation::duplicates_dropped).
inline Relation read_csv(std::istream& in, const SchemaPtr& expected_schema = nullptr) {
  std::vector<std::size_t> lines;
  auto records = detail::csv_records(in, lines);
  if (records.empty()) throw InvalidInput("empty CSV input");
  SchemaPtr schema;
  try {
    schema = AttributeSchema::make(records.front());
  } catch (const InvalidInput& e) {
    throw ParseError(lines.front(), std::string("bad header: ") + e.what());
  }
  if (expected_schema) {
    if (!same_universe(schema, expected_schema)) throw ParseError(lines.front(), "header does not match the schema");
    schema = expected_schema;
  }
  Relation r(schema);
  for (std::size_t k = 1; k < records.size(); ++k) {
    if (records[k].size() != schema->size())
      throw ParseError(lines[k], "expected " + std::to_string(schema->size()) + " fields, found " +
                                     std::to_string(records[k].size()));
    r.insert(std::move(records[k]));
  }
  return r;
}

inline Relation read_csv_text(const std::string& text, const SchemaPtr& expected_schema = nullptr) {
  std::istringstream in(text);
  return read_csv(in, expected_schema);
}

inline std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  return out;
}

inline std::string write_csv(const Relation& r) {
  std::string out = csv_row(r.schema()->names()) + "\n";
  for (const auto& t : r.tuples()) out += csv_row(t) + "\n";
  return out;
}

}  // namespace mvdl

#endif  // MVDL_RELATIONS_HPP
