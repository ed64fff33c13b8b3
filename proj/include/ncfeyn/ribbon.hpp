#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ncfeyn/errors.hpp"

namespace ncfeyn {

/// Plain union-find over 0..n-1.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n), components_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    --components_;
    return true;
  }
  int components() const { return components_; }

 private:
  std::vector<int> parent_;
  int components_;
};

/// Undirected multigraph; loops and parallel edges allowed.
struct Multigraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;

  /// True when the edges selected by `use` connect every vertex.
  template <class Pred>
  bool spans(Pred&& use) const {
    if (num_vertices <= 1) return true;
    DisjointSets ds(num_vertices);
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (use(e)) ds.unite(edges[e].first, edges[e].second);
    return ds.components() == 1;
  }
};

/// A Feynman graph of a quartic theory drawn as a ribbon graph.
///
/// Half-edges are numbered densely: half-edge 4*v + k sits in slot k
/// (0-based) of vertex v, and the cyclic order at a vertex is slot order.
/// Slots 0 and 2 carry the antifield, slots 1 and 3 the field.
class RibbonGraph {
 public:
  struct Line {
    std::string name;
    int a;  ///< first half-edge as written
    int b;
  };
  struct External {
    std::string name;
    int half_edge;
  };

  class Builder;

  int num_vertices() const { return static_cast<int>(vertex_names_.size()); }
  int num_half_edges() const { return 4 * num_vertices(); }
  int num_lines() const { return static_cast<int>(lines_.size()); }
  int num_externals() const { return static_cast<int>(externals_.size()); }

  const std::vector<Line>& lines() const { return lines_; }
  const std::vector<External>& externals() const { return externals_; }
  const std::string& vertex_name(int v) const { return vertex_names_.at(v); }
  const std::string& half_edge_name(int h) const { return half_edge_names_.at(h); }
  int root() const { return root_; }

  static int vertex_of(int h) { return h / 4; }
  static int slot_of(int h) { return h % 4; }
  static bool is_antifield(int h) { return h % 4 % 2 == 0; }
  /// Successor of h in the cyclic order of its vertex.
  static int rotate(int h) { return 4 * (h / 4) + (h % 4 + 1) % 4; }

  /// Partner of h under the line pairing; h itself for external half-edges.
  int pair(int h) const { return partner_.at(h) < 0 ? h : partner_[h]; }
  bool is_external(int h) const { return partner_.at(h) < 0; }
  /// Index of the line through h, or -1.
  int line_of(int h) const { return line_of_.at(h); }
  /// Index of the external leg at h, or -1.
  int external_of(int h) const { return external_of_.at(h); }

  std::optional<int> find_vertex(const std::string& name) const {
    for (int v = 0; v < num_vertices(); ++v)
      if (vertex_names_[v] == name) return v;
    return std::nullopt;
  }

  /// Copy of this graph rooted at vertex v.
  RibbonGraph with_root(int v) const {
    if (v < 0 || v >= num_vertices()) throw StructuralError("root vertex out of range");
    RibbonGraph g = *this;
    g.root_ = v;
    return g;
  }

  /// Graph with vertices as vertices and one edge per line.
  Multigraph direct_graph() const {
    Multigraph m{num_vertices(), {}};
    for (const auto& l : lines_) m.edges.emplace_back(vertex_of(l.a), vertex_of(l.b));
    return m;
  }

  friend bool operator==(const RibbonGraph& x, const RibbonGraph& y) {
    if (x.vertex_names_ != y.vertex_names_ || x.half_edge_names_ != y.half_edge_names_ ||
        x.partner_ != y.partner_ || x.root_ != y.root_ || x.lines_.size() != y.lines_.size() ||
        x.externals_.size() != y.externals_.size())
      return false;
    for (std::size_t i = 0; i < x.lines_.size(); ++i)
      if (x.lines_[i].name != y.lines_[i].name || x.lines_[i].a != y.lines_[i].a || x.lines_[i].b != y.lines_[i].b)
        return false;
    for (std::size_t i = 0; i < x.externals_.size(); ++i)
      if (x.externals_[i].name != y.externals_[i].name || x.externals_[i].half_edge != y.externals_[i].half_edge)
        return false;
    return true;
  }

 private:
  std::vector<std::string> vertex_names_;
  std::vector<std::string> half_edge_names_;
  std::vector<int> partner_;
  std::vector<int> line_of_;
  std::vector<int> external_of_;
  std::vector<Line> lines_;
  std::vector<External> externals_;
  int root_ = 0;
};

/// Incremental, validating constructor for RibbonGraph.
class RibbonGraph::Builder {
 public:
  Builder& add_vertex(const std::string& name, const std::array<std::string, 4>& half_edges) {
    if (vertex_index_.count(name)) throw StructuralError("duplicate vertex '" + name + "'");
    int v = static_cast<int>(g_.vertex_names_.size());
    vertex_index_[name] = v;
    g_.vertex_names_.push_back(name);
    for (int k = 0; k < 4; ++k) {
      const auto& h = half_edges[k];
      if (half_edge_index_.count(h)) throw StructuralError("half-edge '" + h + "' used twice");
      half_edge_index_[h] = 4 * v + k;
      g_.half_edge_names_.push_back(h);
    }
    return *this;
  }

  Builder& add_line(const std::string& name, const std::string& ha, const std::string& hb) {
    if (line_names_.count(name)) throw StructuralError("duplicate line '" + name + "'");
    line_names_.insert(name);
    pending_lines_.push_back({name, ha, hb});
    return *this;
  }

  Builder& add_external(const std::string& name, const std::string& h) {
    if (external_names_.count(name)) throw StructuralError("duplicate external '" + name + "'");
    external_names_.insert(name);
    pending_externals_.push_back({name, h});
    return *this;
  }

  Builder& set_root(const std::string& vertex) {
    root_name_ = vertex;
    return *this;
  }

  /// Declares every half-edge not used by a line as an external leg, named
  /// after the half-edge.
  Builder& auto_externals() {
    auto_externals_ = true;
    return *this;
  }

  RibbonGraph build() const {
    RibbonGraph g = g_;
    const int nh = g.num_half_edges();
    if (g.num_vertices() == 0) throw StructuralError("graph has no vertices");
    g.partner_.assign(nh, -1);
    g.line_of_.assign(nh, -1);
    g.external_of_.assign(nh, -1);
    std::vector<bool> used(nh, false);
    auto resolve = [&](const std::string& h) {
      auto it = half_edge_index_.find(h);
      if (it == half_edge_index_.end()) throw StructuralError("unknown half-edge '" + h + "'");
      if (used[it->second]) throw StructuralError("half-edge '" + h + "' used twice");
      used[it->second] = true;
      return it->second;
    };
    for (const auto& pl : pending_lines_) {
      if (pl.a == pl.b) throw StructuralError("line '" + pl.name + "' pairs half-edge '" + pl.a + "' with itself");
      int a = resolve(pl.a), b = resolve(pl.b);
      g.partner_[a] = b;
      g.partner_[b] = a;
      g.line_of_[a] = g.line_of_[b] = static_cast<int>(g.lines_.size());
      g.lines_.push_back({pl.name, a, b});
    }
    for (const auto& pe : pending_externals_) {
      int h = resolve(pe.h);
      g.external_of_[h] = static_cast<int>(g.externals_.size());
      g.externals_.push_back({pe.name, h});
    }
    for (int h = 0; h < nh; ++h) {
      if (used[h]) continue;
      if (!auto_externals_) throw StructuralError("half-edge '" + g.half_edge_names_[h] + "' is neither paired nor external");
      g.external_of_[h] = static_cast<int>(g.externals_.size());
      g.externals_.push_back({g.half_edge_names_[h], h});
    }
    if (root_name_) {
      auto it = vertex_index_.find(*root_name_);
      if (it == vertex_index_.end()) throw StructuralError("unknown root vertex '" + *root_name_ + "'");
      g.root_ = it->second;
    }
    if (!g.direct_graph().spans([](std::size_t) { return true; }))
      throw DisconnectedError("graph is disconnected");
    return g;
  }

 private:
  struct PendingLine {
    std::string name, a, b;
  };
  struct PendingExternal {
    std::string name, h;
  };

  RibbonGraph g_;
  std::map<std::string, int> vertex_index_;
  std::map<std::string, int> half_edge_index_;
  std::set<std::string> line_names_;
  std::set<std::string> external_names_;
  std::vector<PendingLine> pending_lines_;
  std::vector<PendingExternal> pending_externals_;
  std::optional<std::string> root_name_;
  bool auto_externals_ = false;
};

/// Faces of the rotation system together with the derived topology.
struct FaceData {
  std::vector<std::vector<int>> faces;  ///< half-edge corner walks
  std::vector<int> face_of;             ///< face index per half-edge
  std::vector<int> broken;              ///< faces visiting an external half-edge
  int F = 0;
  int genus = 0;
  int N = 0;
};

/// Traces the faces with next(h) = rotate(pair(h)); external half-edges are
/// fixed points of the pairing.
inline FaceData trace_faces(const RibbonGraph& g) {
  const int nh = g.num_half_edges();
  FaceData fd;
  fd.face_of.assign(nh, -1);
  for (int h = 0; h < nh; ++h) {
    int p = g.pair(h);
    if (p < 0 || p >= nh || g.pair(p) != h)
      throw StructuralError("pairing is not an involution at half-edge '" + g.half_edge_name(h) + "'");
  }
  for (int start = 0; start < nh; ++start) {
    if (fd.face_of[start] >= 0) continue;
    const int face = static_cast<int>(fd.faces.size());
    std::vector<int> walk;
    bool broken = false;
    int h = start;
    do {
      if (fd.face_of[h] >= 0)
        throw StructuralError("face walk revisits half-edge '" + g.half_edge_name(h) + "'");
      fd.face_of[h] = face;
      walk.push_back(h);
      broken = broken || g.is_external(h);
      h = RibbonGraph::rotate(g.pair(h));
    } while (h != start);
    if (broken) fd.broken.push_back(face);
    fd.faces.push_back(std::move(walk));
  }
  fd.F = static_cast<int>(fd.faces.size());
  fd.N = g.num_externals();
  const int euler = 2 - g.num_vertices() + g.num_lines() - fd.F;
  if (euler < 0 || euler % 2 != 0)
    throw StructuralError("Euler characteristic gives a non-integral or negative genus");
  fd.genus = euler / 2;
  return fd;
}

inline int genus(const RibbonGraph& g) { return trace_faces(g).genus; }

/// One vertex per face, one edge per line joining the faces on its two sides.
inline Multigraph dual_graph(const RibbonGraph& g, const FaceData& fd) {
  Multigraph m{fd.F, {}};
  for (const auto& l : g.lines()) m.edges.emplace_back(fd.face_of[l.a], fd.face_of[l.b]);
  return m;
}

inline Multigraph dual_graph(const RibbonGraph& g) { return dual_graph(g, trace_faces(g)); }

/// True iff every line joins an antifield slot to a field slot.
inline bool check_orientable(const RibbonGraph& g) {
  for (const auto& l : g.lines())
    if (RibbonGraph::is_antifield(l.a) == RibbonGraph::is_antifield(l.b)) return false;
  return true;
}

struct HyperTree {
  std::vector<int> lines;  ///< sorted line indices
  int k = 0;               ///< |J| - F + 1

  friend bool operator==(const HyperTree& a, const HyperTree& b) { return a.lines == b.lines && a.k == b.k; }
  friend bool operator<(const HyperTree& a, const HyperTree& b) { return a.lines < b.lines; }
};

/// All line subsets J whose lines span the dual graph while the remaining
/// lines span the direct graph, in lexicographic order of the index sets.
///
/// Depth-first over lines; a branch is cut as soon as either spanning
/// condition can no longer be met by the undecided lines.
inline std::vector<HyperTree> hypertrees(const RibbonGraph& g, const FaceData& fd) {
  if (!check_orientable(g)) throw OrientabilityError("hyper-trees are only defined for orientable graphs");
  const Multigraph dual = dual_graph(g, fd);
  const Multigraph direct = g.direct_graph();
  const int L = g.num_lines();
  const int max_size = L - (g.num_vertices() - 1);
  std::vector<int> state(L, 0);  // 0 undecided, 1 in J, -1 out of J
  std::vector<HyperTree> out;

  auto feasible = [&]() {
    bool dual_ok = dual.spans([&](std::size_t e) { return state[e] >= 0; });
    bool direct_ok = direct.spans([&](std::size_t e) { return state[e] <= 0; });
    return dual_ok && direct_ok;
  };

  auto recurse = [&](auto&& self, int line, int chosen) -> void {
    if (chosen > max_size || !feasible()) return;
    if (line == L) {
      HyperTree ht;
      for (int l = 0; l < L; ++l)
        if (state[l] == 1) ht.lines.push_back(l);
      ht.k = static_cast<int>(ht.lines.size()) - fd.F + 1;
      out.push_back(std::move(ht));
      return;
    }
    state[line] = 1;
    self(self, line + 1, chosen + 1);
    state[line] = -1;
    self(self, line + 1, chosen);
    state[line] = 0;
  };
  recurse(recurse, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<HyperTree> hypertrees(const RibbonGraph& g) { return hypertrees(g, trace_faces(g)); }

}  // namespace ncfeyn
