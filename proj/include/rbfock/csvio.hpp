#ifndef RBFOCK_CSVIO_HPP
#define RBFOCK_CSVIO_HPP

// Minimal CSV reading/writing for signal and point files: ',' separator,
// '.' decimal point, '#'-prefixed diagnostic lines, a mandatory header row
// naming the columns. Parse failures name the offending line.

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "numerics.hpp"

namespace rbfock::csvio {

/// Malformed input; line() is the 1-based physical line number.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline double parse_double(const std::string& s, int line) {
  if (s.empty()) throw FormatError("empty field", line);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == nullptr || *end != '\0')
    throw FormatError("cannot parse number '" + s + "'", line);
  return v;
}

/// Shortest representation that round-trips a double, C locale.
inline std::string fmt(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace detail

/// Reads a table whose header must match `header` exactly; returns one
/// vector of doubles per data row, all with the header's column count.
/// '#' lines and blank lines are skipped but still counted.
inline std::vector<std::vector<double>> read_rows(std::istream& in, const std::string& header) {
  const std::size_t ncols = detail::split(header).size();
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!seen_header) {
      if (t != header)
        throw FormatError("expected header '" + header + "', got '" + t + "'", lineno);
      seen_header = true;
      continue;
    }
    const std::vector<std::string> fields = detail::split(t);
    if (fields.size() != ncols)
      throw FormatError("expected " + std::to_string(ncols) + " fields, got " +
                            std::to_string(fields.size()),
                        lineno);
    std::vector<double> row;
    row.reserve(ncols);
    for (const std::string& f : fields) row.push_back(detail::parse_double(f, lineno));
    rows.push_back(std::move(row));
  }
  if (!seen_header) throw FormatError("missing header '" + header + "'", lineno == 0 ? 1 : lineno);
  return rows;
}

/// A signal file: either pointwise samples (x, re, im) or basis
/// coefficients (n, re, im), distinguished by the header row.
enum class SignalKind { Samples, Coeffs };

struct Signal {
  SignalKind kind = SignalKind::Coeffs;
  std::vector<double> x;  // sample abscissae (Samples only)
  std::vector<cplx> values;
};

inline Signal read_signal(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::string header;
  int header_line = 0;
  std::vector<std::pair<int, std::vector<std::string>>> raw;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (header.empty()) {
      header = t;
      header_line = lineno;
      continue;
    }
    raw.emplace_back(lineno, detail::split(t));
  }
  Signal sig;
  if (header == "x,re,im")
    sig.kind = SignalKind::Samples;
  else if (header == "n,re,im")
    sig.kind = SignalKind::Coeffs;
  else
    throw FormatError("expected header 'x,re,im' or 'n,re,im', got '" + header + "'",
                      header.empty() ? 1 : header_line);
  for (const auto& [ln, fields] : raw) {
    if (fields.size() != 3)
      throw FormatError("expected 3 fields, got " + std::to_string(fields.size()), ln);
    const double first = detail::parse_double(fields[0], ln);
    const cplx v(detail::parse_double(fields[1], ln), detail::parse_double(fields[2], ln));
    if (sig.kind == SignalKind::Coeffs) {
      const auto idx = static_cast<long long>(first);
      if (static_cast<double>(idx) != first || idx < 0)
        throw FormatError("coefficient index must be a non-negative integer", ln);
      if (static_cast<std::size_t>(idx) != sig.values.size())
        throw FormatError("coefficient indices must run 0, 1, 2, ... without gaps", ln);
    } else {
      sig.x.push_back(first);
    }
    sig.values.push_back(v);
  }
  return sig;
}

inline void write_signal(std::ostream& out, const Signal& sig,
                         const std::vector<std::string>& diagnostics = {}) {
  for (const std::string& d : diagnostics) out << "# " << d << "\n";
  if (sig.kind == SignalKind::Samples) {
    out << "x,re,im\n";
    for (std::size_t i = 0; i < sig.values.size(); ++i)
      out << detail::fmt(sig.x[i]) << ',' << detail::fmt(sig.values[i].real()) << ','
          << detail::fmt(sig.values[i].imag()) << "\n";
  } else {
    out << "n,re,im\n";
    for (std::size_t i = 0; i < sig.values.size(); ++i)
      out << i << ',' << detail::fmt(sig.values[i].real()) << ','
          << detail::fmt(sig.values[i].imag()) << "\n";
  }
}

}  // namespace rbfock::csvio

#endif  // RBFOCK_CSVIO_HPP
