#pragma once

// SteinLib STP reader/writer restricted to 1/2 metrics. Files are 1-based;
// weight-1 edges become adjacency, weight-2 edges are implied non-edges and
// ignored, any other weight is rejected.

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "stp12/core.hpp"

namespace stp12 {

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_count(std::string_view tok, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected a non-negative integer for ") + what + ", got '" +
                               std::string(tok) + "'");
  return value;
}

}  // namespace detail

inline Instance parse_stp(std::string_view text) {
  enum class Section { None, Graph, Terminals, Skipped };
  Section section = Section::None;
  std::optional<Instance> instance;
  std::optional<std::uint64_t> declared_edges;
  std::optional<std::uint64_t> declared_terminals;
  std::uint64_t seen_edges = 0;
  std::uint64_t seen_terminals = 0;
  bool graph_done = false;
  bool terminals_done = false;
  std::size_t section_line = 0;
  bool eof = false;

  std::size_t line_no = 0;
  std::size_t last_line = 0;  // last non-blank line
  std::size_t pos = 0;
  while (pos <= text.size() && !eof) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto toks = detail::tokens(raw);
    if (toks.empty()) continue;
    last_line = line_no;
    const std::string key = detail::lower(toks[0]);

    auto node = [&](std::string_view tok) -> NodeId {
      std::uint64_t id = detail::parse_count(tok, line_no, "node id");
      if (id < 1 || id > instance->node_count())
        throw ParseError(line_no, "node " + std::string(tok) + " out of range 1.." +
                                      std::to_string(instance->node_count()));
      return static_cast<NodeId>(id - 1);
    };

    switch (section) {
      case Section::None:
        if (key == "section") {
          if (toks.size() < 2) throw ParseError(line_no, "SECTION without a name");
          const std::string name = detail::lower(toks[1]);
          section_line = line_no;
          if (name == "graph") {
            if (graph_done) throw ParseError(line_no, "duplicate Graph section");
            section = Section::Graph;
          } else if (name == "terminals") {
            if (!graph_done) throw ParseError(line_no, "Terminals section before Graph section");
            if (terminals_done) throw ParseError(line_no, "duplicate Terminals section");
            section = Section::Terminals;
          } else {
            section = Section::Skipped;
          }
        } else if (key == "eof") {
          eof = true;
        } else if (line_no == 1 && key == "33d32945") {
          // magic header
        } else {
          throw ParseError(line_no, "unexpected '" + std::string(toks[0]) + "' outside a section");
        }
        break;

      case Section::Skipped:
        if (key == "end") section = Section::None;
        break;

      case Section::Graph:
        if (key == "nodes") {
          if (toks.size() != 2) throw ParseError(line_no, "expected 'Nodes <count>'");
          if (instance) throw ParseError(line_no, "duplicate Nodes line");
          instance.emplace(detail::parse_count(toks[1], line_no, "Nodes"));
        } else if (key == "edges") {
          if (toks.size() != 2) throw ParseError(line_no, "expected 'Edges <count>'");
          declared_edges = detail::parse_count(toks[1], line_no, "Edges");
        } else if (key == "e") {
          if (!instance) throw ParseError(line_no, "edge before Nodes line");
          if (toks.size() != 4) throw ParseError(line_no, "expected 'E <u> <v> <weight>'");
          NodeId u = node(toks[1]);
          NodeId v = node(toks[2]);
          std::uint64_t w = detail::parse_count(toks[3], line_no, "edge weight");
          if (w != 1 && w != 2)
            throw ParseError(line_no, "edge weight " + std::to_string(w) + " is not 1 or 2");
          if (u == v) throw ParseError(line_no, "self-loop on node " + std::string(toks[1]));
          if (w == 1) instance->add_edge(u, v);
          ++seen_edges;
        } else if (key == "a" || key == "arcs") {
          throw ParseError(line_no, "directed arcs are not supported");
        } else if (key == "end") {
          if (!instance) throw ParseError(line_no, "Graph section without a Nodes line");
          if (declared_edges && *declared_edges != seen_edges)
            throw ParseError(line_no, "Edges declares " + std::to_string(*declared_edges) + " but " +
                                          std::to_string(seen_edges) + " edge lines were given");
          graph_done = true;
          section = Section::None;
        } else {
          throw ParseError(line_no, "unexpected '" + std::string(toks[0]) + "' in Graph section");
        }
        break;

      case Section::Terminals:
        if (key == "terminals") {
          if (toks.size() != 2) throw ParseError(line_no, "expected 'Terminals <count>'");
          declared_terminals = detail::parse_count(toks[1], line_no, "Terminals");
        } else if (key == "t") {
          if (toks.size() != 2) throw ParseError(line_no, "expected 'T <node>'");
          instance->add_terminal(node(toks[1]));
          ++seen_terminals;
        } else if (key == "root") {
          // rooted variants carry a root terminal; the metric problem ignores it
        } else if (key == "end") {
          if (declared_terminals && *declared_terminals != seen_terminals)
            throw ParseError(line_no, "Terminals declares " + std::to_string(*declared_terminals) +
                                          " but " + std::to_string(seen_terminals) + " were given");
          terminals_done = true;
          section = Section::None;
        } else {
          throw ParseError(line_no, "unexpected '" + std::string(toks[0]) + "' in Terminals section");
        }
        break;
    }
  }
  if (section != Section::None) throw ParseError(section_line, "section is not closed by END");
  if (!graph_done) throw ParseError(last_line, "missing Graph section");
  if (!terminals_done) throw ParseError(last_line, "missing Terminals section");
  return std::move(*instance);
}

inline Instance read_stp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_stp(buf.str());
}

inline std::string write_stp(const Instance& instance, const std::string& name = "stp12") {
  std::ostringstream out;
  out << "33D32945 STP File, STP Format Version 1.0\n\n";
  out << "SECTION Comment\nName \"" << name << "\"\nEND\n\n";
  out << "SECTION Graph\nNodes " << instance.node_count() << "\nEdges " << instance.edge_count() << "\n";
  for (const auto& e : instance.edges()) out << "E " << e.u + 1 << " " << e.v + 1 << " 1\n";
  out << "END\n\n";
  out << "SECTION Terminals\nTerminals " << instance.terminals().size() << "\n";
  for (NodeId t : instance.terminals()) out << "T " << t + 1 << "\n";
  out << "END\n\nEOF\n";
  return out.str();
}

inline void write_stp_file(const Instance& instance, const std::string& path, const std::string& name = "stp12") {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << write_stp(instance, name);
}

}  // namespace stp12
