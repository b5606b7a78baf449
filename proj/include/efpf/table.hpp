#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace efpf {

// Scalar cell of an output document. Reals render via %.17g (round-trip
// exact for IEEE doubles), integers via %lld, bools as true/false.
using Value = std::variant<std::string, double, long long, bool>;

// Ordered key/value scalars plus an optional rectangular table. Every CLI
// command renders one Doc; each format has a single canonical byte rendering
// so emitted artifacts can be pinned and re-parsed exactly.
struct Doc {
  std::vector<std::pair<std::string, Value>> scalars;
  std::vector<std::string> table_header;
  std::vector<std::vector<Value>> table_rows;

  bool has_table() const { return !table_header.empty(); }
  void add(std::string key, Value v) { scalars.emplace_back(std::move(key), std::move(v)); }
};

std::string format_real(double x);  // %.17g
std::string format_value(const Value& v);

// JSON: object with the scalars in insertion order, then "rows": [...] when
// a table is present (each row an object keyed by the header). 2-space
// indentation, "\n"-terminated.
std::string emit_json(const Doc& doc);

// CSV: tables render as header line + rows; scalar-only documents render as
// a key line + a value line. "\n" line endings, no quoting (emitted values
// never contain commas or newlines).
std::string emit_csv(const Doc& doc);

// Human-oriented aligned text rendering (also byte-stable).
std::string emit_table(const Doc& doc);

// Inverse of emit_json (accepts any JSON object of scalars with an optional
// "rows" array). Numbers parse as long long when the JSON token is an
// integer, double otherwise, so emit(parse(emit(doc))) == emit(doc).
Doc parse_json(const std::string& text);

// Inverse of emit_csv; always reconstructs a table-shaped document (a 2-line
// scalar CSV parses as a 1-row table, which re-emits identically). Cells
// parse as long long / double / bool when they render back identically,
// strings otherwise.
Doc parse_csv(const std::string& text);

}  // namespace efpf
