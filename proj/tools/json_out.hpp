#pragma once

// JSON writer with 17 significant digits for every double, so values
// survive a round trip through text unchanged.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

namespace maxsupp::cli {

using Json = nlohmann::ordered_json;

inline std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void indent_to(std::ostream& os, int depth) {
  os << '\n';
  for (int i = 0; i < depth; ++i) os << "  ";
}

// Arrays of scalars stay on one line; everything else is one entry per line.
inline bool flat(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

inline void write(std::ostream& os, const Json& j, int depth) {
  switch (j.type()) {
    case Json::value_t::number_float:
      os << format_real(j.get<double>());
      return;
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        indent_to(os, depth + 1);
        os << Json(it.key()).dump() << ": ";
        write(os, it.value(), depth + 1);
      }
      indent_to(os, depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool one_line = flat(j);
      os << '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << (one_line ? ", " : ",");
        first = false;
        if (!one_line) indent_to(os, depth + 1);
        write(os, e, depth + 1);
      }
      if (!one_line) indent_to(os, depth);
      os << ']';
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace detail

inline void write_json(std::ostream& os, const Json& j) {
  detail::write(os, j, 0);
  os << '\n';
}

}  // namespace maxsupp::cli
