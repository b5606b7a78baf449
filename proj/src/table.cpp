#include "efpf/table.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "json.hpp"

namespace efpf {

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string json_value(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return "\"" + json_escape(*s) + "\"";
  return format_value(v);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(line.substr(start));
      return parts;
    }
    parts.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// Reconstruct the narrowest typed value whose canonical rendering is exactly
// the input cell, else keep the cell as a string.
Value infer_cell(const std::string& cell) {
  if (cell == "true") return Value{true};
  if (cell == "false") return Value{false};
  if (!cell.empty()) {
    char* end = nullptr;
    long long i = std::strtoll(cell.c_str(), &end, 10);
    if (end && *end == '\0' && format_value(Value{i}) == cell) return Value{i};
    end = nullptr;
    double d = std::strtod(cell.c_str(), &end);
    if (end && *end == '\0' && format_real(d) == cell) return Value{d};
  }
  return Value{cell};
}

Value from_json(const nlohmann::ordered_json& j) {
  if (j.is_string()) return Value{j.get<std::string>()};
  if (j.is_boolean()) return Value{j.get<bool>()};
  if (j.is_number_integer() || j.is_number_unsigned()) return Value{j.get<long long>()};
  if (j.is_number_float()) return Value{j.get<double>()};
  throw std::invalid_argument("parse_json: unsupported value type");
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_value(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* d = std::get_if<double>(&v)) return format_real(*d);
  if (const auto* i = std::get_if<long long>(&v)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", *i);
    return buf;
  }
  return std::get<bool>(v) ? "true" : "false";
}

std::string emit_json(const Doc& doc) {
  std::string out = "{\n";
  bool first = true;
  for (const auto& [key, value] : doc.scalars) {
    if (!first) out += ",\n";
    first = false;
    out += "  \"" + json_escape(key) + "\": " + json_value(value);
  }
  if (doc.has_table()) {
    if (!first) out += ",\n";
    first = false;
    out += "  \"rows\": [\n";
    for (std::size_t r = 0; r < doc.table_rows.size(); ++r) {
      out += "    {";
      for (std::size_t c = 0; c < doc.table_header.size(); ++c) {
        if (c) out += ", ";
        out += "\"" + json_escape(doc.table_header[c]) + "\": " + json_value(doc.table_rows[r][c]);
      }
      out += r + 1 < doc.table_rows.size() ? "},\n" : "}\n";
    }
    out += "  ]";
  }
  out += "\n}\n";
  return out;
}

std::string emit_csv(const Doc& doc) {
  std::string out;
  if (doc.has_table()) {
    for (std::size_t c = 0; c < doc.table_header.size(); ++c) {
      if (c) out += ",";
      out += doc.table_header[c];
    }
    out += "\n";
    for (const auto& row : doc.table_rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ",";
        out += format_value(row[c]);
      }
      out += "\n";
    }
    return out;
  }
  std::string keys, values;
  for (std::size_t i = 0; i < doc.scalars.size(); ++i) {
    if (i) {
      keys += ",";
      values += ",";
    }
    keys += doc.scalars[i].first;
    values += format_value(doc.scalars[i].second);
  }
  return keys + "\n" + values + "\n";
}

std::string emit_table(const Doc& doc) {
  std::string out;
  std::size_t key_w = 0;
  for (const auto& [key, value] : doc.scalars) key_w = std::max(key_w, key.size());
  for (const auto& [key, value] : doc.scalars) {
    out += key;
    out.append(key_w - key.size(), ' ');
    out += "  " + format_value(value) + "\n";
  }
  if (!doc.has_table()) return out;
  if (!doc.scalars.empty()) out += "\n";
  std::vector<std::size_t> w(doc.table_header.size());
  for (std::size_t c = 0; c < doc.table_header.size(); ++c) w[c] = doc.table_header[c].size();
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : doc.table_rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line.push_back(format_value(row[c]));
      w[c] = std::max(w[c], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto pad = [&](const std::string& s, std::size_t width, bool last) {
    std::string p = s;
    if (!last) p.append(width - s.size(), ' ');
    return p;
  };
  for (std::size_t c = 0; c < doc.table_header.size(); ++c) {
    if (c) out += "  ";
    out += pad(doc.table_header[c], w[c], c + 1 == doc.table_header.size());
  }
  out += "\n";
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) out += "  ";
      out += pad(line[c], w[c], c + 1 == line.size());
    }
    out += "\n";
  }
  return out;
}

Doc parse_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("parse_json: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("parse_json: top level must be an object");
  Doc doc;
  for (const auto& [key, value] : j.items()) {
    if (key == "rows") {
      if (!value.is_array()) throw std::invalid_argument("parse_json: rows must be an array");
      for (const auto& row : value) {
        if (!row.is_object())
          throw std::invalid_argument("parse_json: each row must be an object");
        if (doc.table_header.empty())
          for (const auto& [col, cell] : row.items()) doc.table_header.push_back(col);
        std::vector<Value> cells;
        for (const auto& [col, cell] : row.items()) cells.push_back(from_json(cell));
        doc.table_rows.push_back(std::move(cells));
      }
      continue;
    }
    doc.add(key, from_json(value));
  }
  return doc;
}

Doc parse_csv(const std::string& text) {
  Doc doc;
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t pos = text.find('\n', start);
    if (pos == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  if (lines.empty()) throw std::invalid_argument("parse_csv: empty input");
  doc.table_header = split(lines[0], ',');
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (lines[r].empty()) continue;
    std::vector<std::string> cells = split(lines[r], ',');
    if (cells.size() != doc.table_header.size())
      throw std::invalid_argument("parse_csv: row width mismatch at line " + std::to_string(r + 1));
    std::vector<Value> row;
    for (const std::string& cell : cells) row.push_back(infer_cell(cell));
    doc.table_rows.push_back(std::move(row));
  }
  return doc;
}

}  // namespace efpf
