#pragma once

// Tables of results and their csv / json / text renderings.

#include "lch/core.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace lch {

enum class Format { Text, Csv, Json };

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw Error(ErrorKind::Malformed, "unknown format '" + s + "' (expected json, csv or text)");
}

/// Cells are json scalars so that numbers stay numbers in the json rendering.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::ordered_json>> rows;

  void add(std::vector<nlohmann::ordered_json> row) {
    if (row.size() != columns.size()) throw Error(ErrorKind::Malformed, "row width does not match the header");
    rows.push_back(std::move(row));
  }
  bool operator==(const Table&) const = default;
};

namespace detail {

inline std::string cell_text(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string emit_table(const Table& t, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::Csv: {
      for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << detail::csv_field(t.columns[i]);
      out << "\n";
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << detail::csv_field(detail::cell_text(row[i]));
        out << "\n";
      }
      break;
    }
    case Format::Json: {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = row[i];
        arr.push_back(std::move(obj));
      }
      out << arr.dump(2) << "\n";
      break;
    }
    case Format::Text: {
      std::vector<std::size_t> width(t.columns.size());
      for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
      for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], detail::cell_text(row[i]).size());
      auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (i) s += "  ";
          s += cells[i];
          if (i + 1 < cells.size()) s.append(width[i] - cells[i].size(), ' ');
        }
        s.erase(s.find_last_not_of(' ') + 1);
        out << s << "\n";
      };
      line(t.columns);
      for (const auto& row : t.rows) {
        std::vector<std::string> cells;
        for (const auto& v : row) cells.push_back(detail::cell_text(v));
        line(cells);
      }
      break;
    }
  }
  return out.str();
}

/// Inverse of the csv rendering, for tables whose cells are all strings.
inline Table parse_csv_table(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') field += '"', ++i;
      else if (c == '"') quoted = false;
      else field += c;
    } else if (c == '"') {
      quoted = any = true;
    } else if (c == ',') {
      rec.push_back(std::move(field)), field.clear();
    } else if (c == '\n') {
      rec.push_back(std::move(field)), field.clear();
      records.push_back(std::move(rec)), rec.clear();
      any = false;
    } else {
      field += c, any = true;
    }
  }
  if (any || !rec.empty()) rec.push_back(field), records.push_back(rec);
  Table t;
  if (records.empty()) return t;
  t.columns = records.front();
  for (std::size_t r = 1; r < records.size(); ++r) {
    std::vector<nlohmann::ordered_json> row(records[r].begin(), records[r].end());
    t.add(std::move(row));
  }
  return t;
}

}  // namespace lch
