#pragma once

#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "marker_tsp/instance.hpp"
#include "marker_tsp/tour.hpp"

// Reader and writer for the subset of TSPLIB used here: TYPE TSP with
// EUC_2D or EXPLICIT (FULL_MATRIX / UPPER_ROW) weights, and TYPE TOUR files.
// File indices are 1-based; everything in memory is 0-based.

namespace marker_tsp {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& cause,
             std::optional<TourDefect> defect = std::nullopt)
      : std::runtime_error("line " + std::to_string(line) + ": " + cause),
        line_(line),
        defect_(defect) {}

  std::size_t line() const { return line_; }
  std::optional<TourDefect> defect() const { return defect_; }

 private:
  std::size_t line_;
  std::optional<TourDefect> defect_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

template <class T>
std::optional<T> parse_number(std::string_view tok) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  T v{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

inline bool is_numeric_line(std::string_view line) {
  auto toks = split_ws(line);
  if (toks.empty()) return false;
  for (auto t : toks)
    if (!parse_number<double>(t)) return false;
  return true;
}

struct Line {
  std::size_t number;
  std::string_view text;  // trimmed
};

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  std::optional<Line> next() {
    while (pos_ <= text_.size()) {
      if (pos_ == text_.size() && (text_.empty() || text_.back() == '\n')) break;
      auto end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      Line l{++line_, trim(text_.substr(pos_, end - pos_))};
      pos_ = end + 1;
      if (!l.text.empty()) return l;
    }
    return std::nullopt;
  }

  std::size_t line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

inline bool is_section_name(std::string_view s) {
  return s.size() > 8 && s.substr(s.size() - 8) == "_SECTION";
}

// A keyword line "KEY: value" or "KEY : value".
inline std::optional<std::pair<std::string, std::string>> split_keyword(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  return std::pair{std::string(trim(s.substr(0, colon))), std::string(trim(s.substr(colon + 1)))};
}

inline void format_double(std::string& out, double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, r.ptr);
}

}  // namespace detail

/// Header keywords and the raw numeric body of a TSPLIB document.
struct ParsedDocument {
  std::map<std::string, std::string> keywords;
  std::string section;  // NODE_COORD_SECTION, EDGE_WEIGHT_SECTION or TOUR_SECTION
  std::size_t section_line = 0;
  std::vector<std::string> warnings;
};

inline Instance parse_instance(std::string_view text, std::vector<std::string>* warnings = nullptr) {
  using namespace detail;
  LineReader reader(text);
  ParsedDocument doc;
  std::optional<std::size_t> dimension;
  std::string name, type, weight_type, weight_format;
  std::vector<Point> coords;
  std::vector<double> weights;
  bool have_body = false;

  auto require_dimension = [&](std::size_t line) {
    if (!dimension) throw ParseError(line, "missing DIMENSION before data section");
    if (*dimension < 2) throw ParseError(line, "DIMENSION must be at least 2");
    return *dimension;
  };

  while (auto line = reader.next()) {
    const std::string_view s = line->text;
    if (s == "EOF") break;
    if (is_numeric_line(s))
      throw ParseError(line->number, "count mismatch: data line outside a section or beyond DIMENSION");
    if (auto kv = split_keyword(s)) {
      auto& [key, value] = *kv;
      doc.keywords[key] = value;
      if (key == "NAME") name = value;
      else if (key == "TYPE") {
        type = value;
        if (type != "TSP") throw ParseError(line->number, "unsupported TYPE '" + type + "'");
      } else if (key == "DIMENSION") {
        auto v = parse_number<long long>(value);
        if (!v || *v < 0) throw ParseError(line->number, "bad DIMENSION '" + value + "'");
        dimension = static_cast<std::size_t>(*v);
      } else if (key == "EDGE_WEIGHT_TYPE") {
        weight_type = value;
        if (value != "EUC_2D" && value != "EXPLICIT")
          throw ParseError(line->number, "unknown EDGE_WEIGHT_TYPE '" + value + "'");
      } else if (key == "EDGE_WEIGHT_FORMAT") {
        weight_format = value;
      } else if (key != "COMMENT") {
        doc.warnings.push_back("line " + std::to_string(line->number) + ": ignoring keyword '" + key + "'");
      }
      continue;
    }
    if (s == "NODE_COORD_SECTION") {
      const std::size_t n = require_dimension(line->number);
      if (weight_type != "EUC_2D")
        throw ParseError(line->number, "NODE_COORD_SECTION requires EDGE_WEIGHT_TYPE: EUC_2D");
      coords.assign(n, Point{});
      std::vector<bool> seen(n, false);
      for (std::size_t k = 0; k < n; ++k) {
        auto row = reader.next();
        if (!row || !is_numeric_line(row->text))
          throw ParseError(row ? row->number : reader.line(),
                           "count mismatch: DIMENSION " + std::to_string(n) + " but " +
                               std::to_string(k) + " coordinate entries");
        auto toks = split_ws(row->text);
        auto id = toks.size() == 3 ? parse_number<long long>(toks[0]) : std::nullopt;
        if (!id) throw ParseError(row->number, "coordinate line must be 'index x y'");
        if (*id < 1 || static_cast<std::size_t>(*id) > n)
          throw ParseError(row->number, "node index " + std::to_string(*id) + " outside 1.." + std::to_string(n));
        const std::size_t c = static_cast<std::size_t>(*id - 1);
        if (seen[c]) throw ParseError(row->number, "duplicate node index " + std::to_string(*id));
        seen[c] = true;
        coords[c] = Point{*parse_number<double>(toks[1]), *parse_number<double>(toks[2])};
      }
      doc.section = std::string(s);
      doc.section_line = line->number;
      have_body = true;
      continue;
    }
    if (s == "EDGE_WEIGHT_SECTION") {
      const std::size_t n = require_dimension(line->number);
      if (weight_type != "EXPLICIT")
        throw ParseError(line->number, "EDGE_WEIGHT_SECTION requires EDGE_WEIGHT_TYPE: EXPLICIT");
      std::size_t expected = 0;
      if (weight_format == "FULL_MATRIX") expected = n * n;
      else if (weight_format == "UPPER_ROW") expected = n * (n - 1) / 2;
      else throw ParseError(line->number, "unsupported EDGE_WEIGHT_FORMAT '" + weight_format + "'");
      std::vector<double> body;
      body.reserve(expected);
      std::size_t last_line = line->number;
      while (body.size() < expected) {
        auto row = reader.next();
        if (!row || !is_numeric_line(row->text))
          throw ParseError(row ? row->number : reader.line(),
                           "count mismatch: expected " + std::to_string(expected) +
                               " weights, found " + std::to_string(body.size()));
        for (auto t : split_ws(row->text)) {
          if (body.size() == expected)
            throw ParseError(row->number, "count mismatch: more than " + std::to_string(expected) + " weights");
          body.push_back(*parse_number<double>(t));
        }
        last_line = row->number;
      }
      weights.assign(n * n, 0.0);
      if (weight_format == "FULL_MATRIX") {
        weights = std::move(body);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            const double v = weights[i * n + j];
            if (v != weights[j * n + i])
              throw ParseError(last_line, "non-symmetric FULL_MATRIX at (" + std::to_string(i + 1) +
                                              "," + std::to_string(j + 1) + ")");
            if (i == j && v != 0.0)
              throw ParseError(last_line, "nonzero diagonal at " + std::to_string(i + 1));
            if (v < 0.0) throw ParseError(last_line, "negative weight");
          }
      } else {
        std::size_t t = 0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j, ++t) {
            if (body[t] < 0.0) throw ParseError(last_line, "negative weight");
            weights[i * n + j] = weights[j * n + i] = body[t];
          }
      }
      doc.section = std::string(s);
      doc.section_line = line->number;
      have_body = true;
      continue;
    }
    if (is_section_name(s)) throw ParseError(line->number, "unsupported section " + std::string(s));
    doc.warnings.push_back("line " + std::to_string(line->number) + ": ignoring '" + std::string(s) + "'");
  }

  if (warnings) *warnings = std::move(doc.warnings);
  if (!dimension) throw ParseError(reader.line(), "missing DIMENSION");
  if (weight_type.empty()) throw ParseError(reader.line(), "missing EDGE_WEIGHT_TYPE");
  if (!have_body) throw ParseError(reader.line(), "missing data section");
  if (weight_type == "EUC_2D")
    return Instance::from_coords(name, std::move(coords), WeightKind::euc2d_rounded);
  return Instance::from_matrix(name, CostMatrix(*dimension, std::move(weights)));
}

/// Inverse of parse_instance. Coordinates use the shortest round-tripping
/// decimal form. Exact-Euclidean instances are written as EUC_2D, so they
/// read back with rounded weights.
inline std::string render_instance(const Instance& inst) {
  std::string out;
  const std::size_t n = inst.size();
  out += "NAME : " + inst.name() + "\n";
  out += "TYPE : TSP\n";
  out += "DIMENSION : " + std::to_string(n) + "\n";
  if (inst.has_coords()) {
    out += "EDGE_WEIGHT_TYPE : EUC_2D\n";
    out += "NODE_COORD_SECTION\n";
    for (std::size_t i = 0; i < n; ++i) {
      out += std::to_string(i + 1) + " ";
      detail::format_double(out, inst.coords()[i].x);
      out += " ";
      detail::format_double(out, inst.coords()[i].y);
      out += "\n";
    }
  } else {
    out += "EDGE_WEIGHT_TYPE : EXPLICIT\n";
    out += "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n";
    out += "EDGE_WEIGHT_SECTION\n";
    const auto& m = inst.matrix();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j) out += " ";
        detail::format_double(out, m(i, j));
      }
      out += "\n";
    }
  }
  out += "EOF\n";
  return out;
}

inline std::string write_tour(const Tour& tour, std::string_view name) {
  std::string out;
  out += "NAME : ";
  out += name;
  out += "\nTYPE : TOUR\n";
  out += "DIMENSION : " + std::to_string(tour.size()) + "\n";
  out += "TOUR_SECTION\n";
  for (City c : tour.order()) out += std::to_string(c + 1) + "\n";
  out += "-1\nEOF\n";
  return out;
}

inline Tour parse_tour(std::string_view text, std::size_t n) {
  using namespace detail;
  LineReader reader(text);
  if (n < 2) throw ParseError(0, "tour needs at least 2 cities", TourDefect::too_small);
  std::optional<std::size_t> dimension;
  std::vector<City> order;
  std::vector<bool> seen(n, false);
  bool have_section = false;

  while (auto line = reader.next()) {
    const std::string_view s = line->text;
    if (s == "EOF") break;
    if (s == "TOUR_SECTION") {
      have_section = true;
      bool terminated = false;
      while (!terminated) {
        auto row = reader.next();
        if (!row || row->text == "EOF") break;
        for (auto tok : split_ws(row->text)) {
          auto v = parse_number<long long>(tok);
          if (!v) throw ParseError(row->number, "bad tour entry '" + std::string(tok) + "'");
          if (*v == -1) {
            terminated = true;
            break;
          }
          if (*v < 1 || static_cast<std::size_t>(*v) > n)
            throw ParseError(row->number,
                             "city index " + std::to_string(*v) + " outside 1.." + std::to_string(n),
                             TourDefect::index_out_of_range);
          const City c = static_cast<City>(*v - 1);
          if (seen[c])
            throw ParseError(row->number, "duplicate city " + std::to_string(*v),
                             TourDefect::duplicate_city);
          seen[c] = true;
          order.push_back(c);
        }
      }
      if (!terminated) break;
      continue;
    }
    if (auto kv = split_keyword(s)) {
      auto& [key, value] = *kv;
      if (key == "TYPE" && value != "TOUR")
        throw ParseError(line->number, "expected TYPE: TOUR, got '" + value + "'");
      if (key == "DIMENSION") {
        auto v = parse_number<long long>(value);
        if (!v || *v < 0) throw ParseError(line->number, "bad DIMENSION '" + value + "'");
        dimension = static_cast<std::size_t>(*v);
        if (*dimension != n)
          throw ParseError(line->number,
                           "count mismatch: tour DIMENSION " + value + " but instance has " +
                               std::to_string(n) + " cities",
                           TourDefect::count_mismatch);
      }
      continue;
    }
    if (is_section_name(s)) throw ParseError(line->number, "unsupported section " + std::string(s));
  }

  if (!have_section) throw ParseError(reader.line(), "missing TOUR_SECTION");
  if (order.size() != n) {
    if (dimension)
      for (City c = 0; c < n; ++c)
        if (!seen[c])
          throw ParseError(reader.line(), "missing city " + std::to_string(c + 1),
                           TourDefect::missing_city);
    throw ParseError(reader.line(),
                     "count mismatch: expected " + std::to_string(n) + " cities, got " +
                         std::to_string(order.size()),
                     TourDefect::count_mismatch);
  }
  return Tour(std::move(order));
}

}  // namespace marker_tsp
