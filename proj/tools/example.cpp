// Library walk-through on a graph file: topology, HU, bound and one amplitude value.
//
//   ncfeyn_example data/graphs/bubble_gw.graph

#include <iostream>

#include "ncfeyn/ncfeyn.hpp"

int main(int argc, char** argv) {
  using namespace ncfeyn;
  if (argc != 2) {
    std::cerr << "usage: " << argv[0] << " <graph file>\n";
    return 1;
  }
  try {
    const GraphFile gf = parse_graph_file(argv[1]);
    const FaceData fd = trace_faces(gf.graph);
    std::cout << "V=" << gf.graph.num_vertices() << " L=" << gf.graph.num_lines() << " F=" << fd.F
              << " g=" << fd.genus << " N=" << fd.N << "\n";

    const GaussianModel gm = build_gaussian(gf.graph, gf.params);
    const RealPoly hu = compute_HU(gm);
    std::cout << "HU = " << hu.str() << "\n";

    const auto hts = hypertrees(gf.graph, fd);
    const BoundReport r = gf.params.model == Model::GW
                              ? gw_bound_check(hu, hts, fd.genus, gf.params, BoundMode::Projective)
                              : lsz_bound_check(hu, hts, fd.genus, fd.F, gf.params, BoundMode::Projective);
    std::cout << hts.size() << " hyper-trees, lambda = " << (r.lambda ? r.lambda->get_str() : "none") << "\n";

    const NCPolynomials nc = compute_HV(gm, hu);
    const std::vector<std::array<Rational, 4>> zero(nc.num_external(), {0, 0, 0, 0});
    const MellinRepresentation m = decompose(nc, zero);
    const Rational D(1);
    const FeasibilityResult fr = delta_feasible(m, D);
    if (!fr.feasible) {
      std::cout << "strip empty at D = 1\n";
      return 0;
    }
    try {
      const EvaluationReport ev = evaluate_mellin(m, D, *fr.witness);
      std::cout << "A(D=1, x=0) = " << ev.value.real() << " +- " << ev.error << "\n";
    } catch (const ContourDimensionExceeded& e) {
      std::cout << "strip non-empty at D = 1; no contour value: " << e.what() << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
