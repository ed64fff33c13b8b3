#pragma once

#include <random>
#include <string>
#include <vector>

#include "ncfeyn/ncfeyn.hpp"

#ifndef NCFEYN_DATA_DIR
#define NCFEYN_DATA_DIR "data/graphs"
#endif

namespace suite {

struct Entry {
  std::string name;
  bool vacuum = false;
};

inline const std::vector<Entry>& topologies() {
  static const std::vector<Entry> list = {
      {"vertex", false},        {"tadpole", false},       {"bubble", false},           {"chain3", false},
      {"planar_vacuum", true},  {"genus1_vacuum", true},  {"genus1_four_point", false},
  };
  return list;
}

inline std::string path(const std::string& name, ncfeyn::Model m) {
  return std::string(NCFEYN_DATA_DIR) + "/" + name + (m == ncfeyn::Model::GW ? "_gw" : "_lsz") + ".graph";
}

inline ncfeyn::GraphFile load(const std::string& name, ncfeyn::Model m) { return ncfeyn::parse_graph_file(path(name, m)); }

inline std::vector<ncfeyn::Rational> omegas() {
  return {ncfeyn::frac(1, 4), ncfeyn::frac(1, 2), ncfeyn::Rational(1)};
}

inline ncfeyn::ModelParams params(ncfeyn::Model m, const ncfeyn::Rational& omega) {
  ncfeyn::ModelParams p;
  p.model = m;
  p.omega = omega;
  p.theta = 1;
  return p;
}

// Orientable random ribbon graph: every line joins an antifield slot to a
// field slot; unused slots become external legs.
inline ncfeyn::RibbonGraph random_graph(std::mt19937& rng, int V, int L) {
  for (;;) {
    std::vector<std::string> anti, field;
    ncfeyn::RibbonGraph::Builder b;
    for (int v = 1; v <= V; ++v) {
      std::string n = "v" + std::to_string(v);
      b.add_vertex(n, {n + "a", n + "b", n + "c", n + "d"});
      anti.push_back(n + "a");
      anti.push_back(n + "c");
      field.push_back(n + "b");
      field.push_back(n + "d");
    }
    std::shuffle(anti.begin(), anti.end(), rng);
    std::shuffle(field.begin(), field.end(), rng);
    for (int l = 0; l < L; ++l) b.add_line("l" + std::to_string(l + 1), anti[l], field[l]);
    b.auto_externals();
    try {
      return b.build();
    } catch (const ncfeyn::DisconnectedError&) {
    }
  }
}

inline std::vector<ncfeyn::Rational> random_point(std::mt19937& rng, int L) {
  std::uniform_int_distribution<long> num(1, 96);
  std::vector<ncfeyn::Rational> t;
  for (int l = 0; l < L; ++l) t.push_back(ncfeyn::frac(num(rng), 97));
  return t;
}

}  // namespace suite
