#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qflab/error.hpp"

namespace qflab::io {

using Value = std::variant<std::int64_t, double, std::string, bool>;

/// One output row; keys keep their insertion order.
class Record {
 public:
  template <class T>
  Record& add(std::string key, const T& v) {
    if constexpr (std::is_same_v<T, bool>)
      fields_.emplace_back(std::move(key), Value(v));
    else if constexpr (std::is_integral_v<T>)
      fields_.emplace_back(std::move(key), Value(static_cast<std::int64_t>(v)));
    else if constexpr (std::is_floating_point_v<T>)
      fields_.emplace_back(std::move(key), Value(static_cast<double>(v)));
    else if constexpr (std::is_same_v<T, Value>)
      fields_.emplace_back(std::move(key), v);
    else
      fields_.emplace_back(std::move(key), Value(std::string(v)));
    return *this;
  }

  const std::vector<std::pair<std::string, Value>>& fields() const noexcept { return fields_; }

  const Value& at(const std::string& key) const {
    for (const auto& [k, v] : fields_)
      if (k == key) return v;
    throw Error(ErrorKind::invalid_argument, "no field '" + key + "'");
  }

 private:
  std::vector<std::pair<std::string, Value>> fields_;
};

enum class Format { json, csv };

inline nlohmann::ordered_json to_json(const Record& r) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.fields()) std::visit([&](const auto& x) { j[k] = x; }, v);
  return j;
}

/// One JSON object per line. Doubles are written in shortest round-trip form,
/// so parsing a line gives back the same binary values.
inline void write_jsonl(std::ostream& os, const std::vector<Record>& rows) {
  for (const auto& r : rows) os << to_json(r).dump() << '\n';
}

inline std::string format_csv_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Header from the first record's keys, then one line per record; reals are
/// written with 6 significant digits.
inline void write_csv(std::ostream& os, const std::vector<Record>& rows) {
  if (rows.empty()) return;
  const auto& head = rows.front().fields();
  for (std::size_t i = 0; i < head.size(); ++i) os << (i ? "," : "") << csv_escape(head[i].first);
  os << '\n';
  for (const auto& r : rows) {
    if (r.fields().size() != head.size()) throw Error(ErrorKind::consistency, "CSV rows must share one schema");
    for (std::size_t i = 0; i < r.fields().size(); ++i) {
      if (r.fields()[i].first != head[i].first) throw Error(ErrorKind::consistency, "CSV rows must share one schema");
      os << (i ? "," : "");
      std::visit(
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>)
              os << format_csv_double(x);
            else if constexpr (std::is_same_v<T, bool>)
              os << (x ? "true" : "false");
            else if constexpr (std::is_same_v<T, std::string>)
              os << csv_escape(x);
            else
              os << x;
          },
          r.fields()[i].second);
    }
    os << '\n';
  }
}

inline void write(std::ostream& os, const std::vector<Record>& rows, Format f) {
  if (f == Format::json)
    write_jsonl(os, rows);
  else
    write_csv(os, rows);
}

/// Splits CSV text into rows of unquoted cells.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
      any = true;
    } else if (c == '\n') {
      row.push_back(std::move(cell));
      cell.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      cell += c;
      any = true;
    }
  }
  if (any) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qflab::io
