#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "quasiwide/error.hpp"
#include "quasiwide/graph.hpp"

namespace quasiwide {

// Edge-list text format:
//   # comment            (ignored, but kept in EdgeListFile::comments)
//   n=<count>            (optional; otherwise n = max id + 1)
//   <u> <v>              (one edge per line, whitespace separated)

struct EdgeListFile {
  Graph graph;
  std::optional<std::size_t> declared_n;
  std::vector<std::string> comments;  // comment lines without the leading '#'
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
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

}  // namespace detail

inline EdgeListFile parse_edge_list(std::istream& in) {
  EdgeListFile out;
  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  bool any_edge = false;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw InputError("line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = detail::trim(line);
    if (s.empty()) continue;
    if (s.front() == '#') {
      out.comments.emplace_back(detail::trim(s.substr(1)));
      continue;
    }
    if (s.rfind("n=", 0) == 0) {
      auto n = detail::parse_uint(detail::trim(s.substr(2)));
      if (!n) fail("malformed vertex-count header '" + std::string(s) + "'");
      if (out.declared_n) fail("duplicate vertex-count header");
      out.declared_n = *n;
      continue;
    }
    auto fields = detail::split_ws(s);
    if (fields.size() != 2) fail("expected 'u v', got '" + std::string(s) + "'");
    auto u = detail::parse_uint(fields[0]);
    auto v = detail::parse_uint(fields[1]);
    if (!u || !v) fail("non-integer vertex id in '" + std::string(s) + "'");
    if (*u > 0xFFFFFFFEull || *v > 0xFFFFFFFEull) fail("vertex id too large");
    edges.emplace_back(static_cast<Vertex>(*u), static_cast<Vertex>(*v));
    max_id = std::max({max_id, *u, *v});
    any_edge = true;
  }
  std::size_t n = out.declared_n ? *out.declared_n : (any_edge ? max_id + 1 : 0);
  if (any_edge && max_id >= n) {
    throw InputError("edge endpoint " + std::to_string(max_id) + " exceeds declared n=" + std::to_string(n));
  }
  out.graph = Graph::from_edges(n, edges);
  return out;
}

inline EdgeListFile parse_edge_list_text(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

inline EdgeListFile read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  try {
    return parse_edge_list(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "n=" << g.num_vertices() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

/// Whitespace- or comma-separated vertex ids; '#' starts a comment line.
inline std::vector<Vertex> parse_id_list(std::istream& in) {
  std::vector<Vertex> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = detail::trim(line);
    if (s.empty() || s.front() == '#') continue;
    std::string copy(s);
    for (char& ch : copy) {
      if (ch == ',') ch = ' ';
    }
    for (auto field : detail::split_ws(copy)) {
      auto v = detail::parse_uint(field);
      if (!v || *v > 0xFFFFFFFEull) {
        throw InputError("line " + std::to_string(line_no) + ": bad vertex id '" + std::string(field) + "'");
      }
      ids.push_back(static_cast<Vertex>(*v));
    }
  }
  return ids;
}

inline std::vector<Vertex> parse_id_list_text(const std::string& text) {
  std::istringstream in(text);
  return parse_id_list(in);
}

inline std::vector<Vertex> read_id_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open id file '" + path + "'");
  return parse_id_list(in);
}

}  // namespace quasiwide
