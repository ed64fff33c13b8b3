#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ncfeyn/model.hpp"
#include "ncfeyn/ribbon.hpp"

namespace ncfeyn {

struct GraphFile {
  RibbonGraph graph;
  ModelParams params;
};

namespace detail {

inline std::vector<std::string> split_words(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> words;
  for (std::string w; is >> w;) words.push_back(w);
  return words;
}

}  // namespace detail

/// Reads the line-oriented graph format:
///
///     model GW|LSZ
///     omega <rational>        theta <rational>        D <rational>
///     vertex <vid> <h1> <h2> <h3> <h4>    (cyclic order, h1 antifield)
///     line <eid> <hA> <hB>
///     external <xid> <h>
///     root <vid>              (defaults to the first vertex)
///
/// '#' starts a comment. Every error carries the offending line number.
inline GraphFile parse_graph(std::istream& in) {
  RibbonGraph::Builder b;
  ModelParams p;
  bool have_root = false, have_model = false;
  std::optional<std::string> first_vertex;
  std::set<std::string> vertex_ids;
  std::string root_id;
  int root_line = 0, last_line = 0;
  std::string text;
  for (int lineno = 1; std::getline(in, text); ++lineno) {
    last_line = lineno;
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    auto w = detail::split_words(text);
    if (w.empty()) continue;
    const std::string& d = w[0];
    auto arity = [&](std::size_t n) {
      if (w.size() != n + 1)
        throw ParseError(lineno, "'" + d + "' expects " + std::to_string(n) + " argument(s), got " +
                                     std::to_string(w.size() - 1));
    };
    auto rational = [&](const std::string& s) {
      try {
        return parse_rational(s);
      } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
      }
    };
    try {
      if (d == "model") {
        arity(1);
        if (have_model) throw ParseError(lineno, "model given twice");
        if (w[1] == "GW") p.model = Model::GW;
        else if (w[1] == "LSZ") p.model = Model::LSZ;
        else throw ParseError(lineno, "unknown model '" + w[1] + "'");
        have_model = true;
      } else if (d == "omega") {
        arity(1);
        p.omega = rational(w[1]);
      } else if (d == "theta") {
        arity(1);
        p.theta = rational(w[1]);
      } else if (d == "D") {
        arity(1);
        p.D_default = rational(w[1]);
      } else if (d == "vertex") {
        if (w.size() != 6) throw ParseError(lineno, "vertex needs an id and exactly 4 half-edges");
        b.add_vertex(w[1], {w[2], w[3], w[4], w[5]});
        if (!first_vertex) first_vertex = w[1];
        vertex_ids.insert(w[1]);
      } else if (d == "line") {
        arity(3);
        b.add_line(w[1], w[2], w[3]);
      } else if (d == "external") {
        arity(2);
        b.add_external(w[1], w[2]);
      } else if (d == "root") {
        arity(1);
        if (have_root) throw ParseError(lineno, "root given twice");
        root_line = lineno;
        root_id = w[1];
        b.set_root(w[1]);
        have_root = true;
      } else {
        throw ParseError(lineno, "unknown directive '" + d + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!first_vertex) throw ParseError(0, "graph has no vertices");
  if (!have_root) b.set_root(*first_vertex);
  else if (!vertex_ids.count(root_id)) throw ParseError(root_line, "unknown root vertex '" + root_id + "'");
  GraphFile gf{[&] {
                 try {
                   return b.build();
                 } catch (const Error& e) {
                   throw ParseError(0, e.what());
                 }
               }(),
               p};
  try {
    p.validate();
  } catch (const Error& e) {
    throw ParseError(last_line, e.what());
  }
  return gf;
}

inline GraphFile parse_graph_string(const std::string& text) {
  std::istringstream is(text);
  return parse_graph(is);
}

inline GraphFile parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_graph(in);
}

/// Writes a file that parse_graph reads back to an identical structure.
inline std::string serialize_graph(const RibbonGraph& g, const ModelParams& p) {
  std::ostringstream os;
  os << "model " << to_string(p.model) << "\n";
  os << "omega " << p.omega.get_str() << "\n";
  os << "theta " << p.theta.get_str() << "\n";
  os << "D " << p.D_default.get_str() << "\n";
  for (int v = 0; v < g.num_vertices(); ++v) {
    os << "vertex " << g.vertex_name(v);
    for (int k = 0; k < 4; ++k) os << " " << g.half_edge_name(4 * v + k);
    os << "\n";
  }
  for (const auto& l : g.lines())
    os << "line " << l.name << " " << g.half_edge_name(l.a) << " " << g.half_edge_name(l.b) << "\n";
  for (const auto& x : g.externals()) os << "external " << x.name << " " << g.half_edge_name(x.half_edge) << "\n";
  os << "root " << g.vertex_name(g.root()) << "\n";
  return os.str();
}

}  // namespace ncfeyn
