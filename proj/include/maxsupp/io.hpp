#pragma once

// Plain-text instance files.
//
//   # free-form comments; "# key: value" lines are kept as metadata
//   basis n d          (n x d matrix whose columns span L)
//   kernel m n         (m x n matrix A, L = {x : A x = 0})
//   <one row per line, whitespace-separated reals>
//
// Blank lines and comments may appear anywhere. A matrix with zero columns
// has no row lines.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "maxsupp/generator.hpp"
#include "maxsupp/linalg.hpp"

namespace maxsupp {

class ParseError : public InvalidArgument {
 public:
  ParseError(long line, long column, const std::string& msg)
      : InvalidArgument("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  long line() const noexcept { return line_; }
  long column() const noexcept { return column_; }

 private:
  long line_;
  long column_;
};

enum class InputFormat { Basis, Kernel };

inline const char* to_string(InputFormat f) { return f == InputFormat::Basis ? "basis" : "kernel"; }

inline std::optional<InputFormat> parse_format(std::string_view s) {
  if (s == "basis") return InputFormat::Basis;
  if (s == "kernel") return InputFormat::Kernel;
  return std::nullopt;
}

struct InstanceFile {
  InputFormat format = InputFormat::Basis;
  Matrix payload;
  std::map<std::string, std::string> metadata;

  /// Ambient dimension of L.
  Index n() const { return format == InputFormat::Basis ? payload.rows() : payload.cols(); }
};

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

namespace detail {

struct Token {
  std::string_view text;
  long column;  // 1-based
};

inline std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), static_cast<long>(start) + 1});
  }
  return out;
}

inline double parse_real(const Token& t, long line) {
  double v = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  if (!t.text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(line, t.column, "expected a real number, got '" + std::string(t.text) + "'");
  }
  if (!std::isfinite(v)) throw ParseError(line, t.column, "non-finite entry");
  return v;
}

inline long parse_count(const Token& t, long line) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc{} || ptr != t.text.data() + t.text.size() || v < 0) {
    throw ParseError(line, t.column, "expected a nonnegative integer, got '" + std::string(t.text) + "'");
  }
  return v;
}

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace detail

/// Parses an instance file. `forced` overrides the format named in the
/// header; a mismatch between the two is an error.
inline InstanceFile parse_instance(std::string_view text, std::optional<InputFormat> forced = std::nullopt) {
  InstanceFile file;
  bool have_header = false;
  long rows = 0, cols = 0, row = 0;
  long line_no = 0;
  long last_line = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) {
      const std::string_view comment = line.substr(hash + 1);
      const std::size_t colon = comment.find(':');
      if (colon != std::string_view::npos) {
        const std::string key = detail::trim(comment.substr(0, colon));
        if (!key.empty() && key.find(' ') == std::string::npos) {
          file.metadata[key] = detail::trim(comment.substr(colon + 1));
        }
      }
    }
    const auto tokens = detail::split_tokens(line.substr(0, hash));
    if (tokens.empty()) continue;
    last_line = line_no;

    if (!have_header) {
      const auto fmt = parse_format(tokens[0].text);
      if (!fmt) {
        throw ParseError(line_no, tokens[0].column,
                         "expected header 'basis n d' or 'kernel m n', got '" + std::string(tokens[0].text) + "'");
      }
      if (tokens.size() != 3) throw ParseError(line_no, tokens[0].column, "header needs exactly two dimensions");
      if (forced && *forced != *fmt) {
        throw ParseError(line_no, tokens[0].column,
                         std::string("file says '") + to_string(*fmt) + "' but --format " + to_string(*forced) +
                             " was given");
      }
      file.format = *fmt;
      rows = detail::parse_count(tokens[1], line_no);
      cols = detail::parse_count(tokens[2], line_no);
      if (file.format == InputFormat::Basis) {
        if (rows < 1) throw ParseError(line_no, tokens[1].column, "ambient dimension n must be >= 1");
        if (cols > rows) throw ParseError(line_no, tokens[2].column, "basis has more columns than rows");
      } else {
        if (cols < 1) throw ParseError(line_no, tokens[2].column, "ambient dimension n must be >= 1");
      }
      file.payload.resize(rows, cols);
      have_header = true;
      continue;
    }

    if (row >= rows || cols == 0) {
      throw ParseError(line_no, tokens[0].column,
                       "unexpected data line; header announced " + std::to_string(rows) + " rows of " +
                           std::to_string(cols) + " entries");
    }
    if (static_cast<long>(tokens.size()) != cols) {
      const long col = static_cast<long>(tokens.size()) > cols ? tokens[static_cast<std::size_t>(cols)].column
                                                             : static_cast<long>(line.size()) + 1;
      throw ParseError(line_no, col,
                       "row has " + std::to_string(tokens.size()) + " entries, expected " + std::to_string(cols));
    }
    for (long j = 0; j < cols; ++j) {
      file.payload(row, j) = detail::parse_real(tokens[static_cast<std::size_t>(j)], line_no);
    }
    ++row;
  }

  if (!have_header) throw ParseError(line_no, 1, "missing header line");
  if (cols > 0 && row < rows) {
    throw ParseError(last_line + 1, 1,
                     "file ends after " + std::to_string(row) + " of " + std::to_string(rows) + " rows");
  }
  return file;
}

inline InstanceFile read_instance(std::istream& in, std::optional<InputFormat> forced = std::nullopt) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), forced);
}

/// L from a parsed file: the span of the basis columns, or ker A.
inline Subspace to_subspace(const InstanceFile& f) {
  return f.format == InputFormat::Basis ? orthonormalize(f.payload) : null_space(f.payload);
}

/// Planted support recorded by write_instance(), if present.
inline std::optional<IndexSet> planted_support(const InstanceFile& f) {
  const auto it = f.metadata.find("planted-support");
  if (it == f.metadata.end()) return std::nullopt;
  std::vector<Index> members;
  std::istringstream is(it->second);
  long k = 0;
  while (is >> k) {
    if (k < 1 || k > f.n()) throw InvalidArgument("planted-support: index out of range");
    members.push_back(static_cast<Index>(k - 1));
  }
  return IndexSet(f.n(), std::move(members));
}

inline void write_matrix(std::ostream& os, const Matrix& m) {
  const auto old = os.precision(17);
  for (Index i = 0; i < m.rows() && m.cols() > 0; ++i) {
    for (Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  os.precision(old);
}

inline void write_instance(std::ostream& os, const PlantedInstance& inst) {
  const Index n = inst.L.ambient_dim();
  os << "# maxsupp planted instance\n";
  os << "# seed: " << inst.spec.seed << '\n';
  os << "# interior-scale: " << std::setprecision(17) << inst.spec.interior_scale << '\n';
  os << "# planted-support:";
  for (Index k : inst.spec.support.one_based()) os << ' ' << k;
  os << '\n';
  os << "basis " << n << ' ' << inst.L.dim() << '\n';
  write_matrix(os, inst.L.basis());
}

}  // namespace maxsupp
