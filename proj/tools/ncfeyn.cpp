// ncfeyn command-line driver.
//
// Exit status: 0 when every check passes, 2 when a check fails or the
// computation is rejected by the library, 1 on usage or parse errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "ncfeyn/ncfeyn.hpp"

using namespace ncfeyn;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kPass = 0;
constexpr int kUsage = 1;
constexpr int kFail = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

Json complex_json(std::complex<double> z) { return Json{{"re", fmt(z.real())}, {"im", fmt(z.imag())}}; }

std::string exponent_str(const Exponent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return "(" + s + ")";
}

Json lines_json(const std::vector<int>& lines, const RibbonGraph& g) {
  Json a = Json::array();
  for (int l : lines) a.push_back(g.lines()[l].name);
  return a;
}

void render_text(const Json& j, std::ostream& os, int indent = 0) {
  const std::string pad(indent, ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    if (v.is_object()) {
      os << pad << it.key() << ":\n";
      render_text(v, os, indent + 2);
    } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
      os << pad << it.key() << ":\n";
      for (const auto& item : v) {
        if (item.is_object()) {
          std::string line;
          for (auto f = item.begin(); f != item.end(); ++f)
            line += (line.empty() ? "" : "  ") + f.key() + "=" + (f->is_string() ? f->get<std::string>() : f->dump());
          os << pad << "  - " << line << "\n";
        } else {
          os << pad << "  - " << item.dump() << "\n";
        }
      }
    } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const Json& x) {
                 return x.is_string() && x.get<std::string>().find(' ') != std::string::npos;
               })) {
      os << pad << it.key() << ":\n";
      for (const auto& item : v) os << pad << "  - " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
    } else if (v.is_array()) {
      std::string line;
      for (const auto& item : v) line += (line.empty() ? "" : " ") + (item.is_string() ? item.get<std::string>() : item.dump());
      os << pad << it.key() << " = [" << line << "]\n";
    } else {
      os << pad << it.key() << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

struct Context {
  GraphFile file;
  ModelParams params;
};

Context load(const std::string& path, const std::string& omega, const std::string& theta) {
  Context c{parse_graph_file(path), {}};
  c.params = c.file.params;
  try {
    if (!omega.empty()) c.params.omega = parse_rational(omega);
    if (!theta.empty()) c.params.theta = parse_rational(theta);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  c.params.validate();
  return c;
}

Rational rational_option(const std::string& text, const Rational& fallback) {
  if (text.empty()) return fallback;
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// "x1=a,b,c,d;x2=..." against the external labels; unnamed labels stay zero.
std::vector<std::array<Rational, 4>> parse_externals(const std::string& text, const std::vector<std::string>& labels) {
  std::vector<std::array<Rational, 4>> out(labels.size(), {0, 0, 0, 0});
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ';');) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("external '" + item + "' needs the form label=a,b,c,d");
    std::string name = item.substr(0, eq);
    auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) throw UsageError("unknown external label '" + name + "'");
    std::stringstream cs(item.substr(eq + 1));
    std::array<Rational, 4> v;
    int k = 0;
    for (std::string comp; std::getline(cs, comp, ',');) {
      if (k == 4) throw UsageError("external '" + name + "' has more than 4 components");
      v[k++] = rational_option(comp, Rational(0));
    }
    if (k != 4) throw UsageError("external '" + name + "' needs 4 components");
    out[static_cast<std::size_t>(it - labels.begin())] = v;
  }
  return out;
}

Json cmd_info(const Context& c, bool& pass) {
  const auto& g = c.file.graph;
  const auto fd = trace_faces(g);
  Json r;
  r["model"] = to_string(c.params.model);
  r["omega"] = c.params.omega.get_str();
  r["theta"] = c.params.theta.get_str();
  r["V"] = g.num_vertices();
  r["L"] = g.num_lines();
  r["F"] = fd.F;
  r["g"] = fd.genus;
  r["N"] = fd.N;
  r["root"] = g.vertex_name(g.root());
  Json broken = Json::array();
  for (int f : fd.broken) broken.push_back(f);
  r["broken_faces"] = broken;
  Json faces = Json::array();
  for (std::size_t f = 0; f < fd.faces.size(); ++f) {
    Json walk = Json::array();
    for (int h : fd.faces[f]) walk.push_back(g.half_edge_name(h));
    faces.push_back(Json{{"face", f}, {"walk", walk}});
  }
  r["faces"] = faces;
  r["orientable"] = check_orientable(g);
  pass = check_orientable(g);
  return r;
}

Json cmd_hypertrees(const Context& c, bool& pass) {
  const auto& g = c.file.graph;
  const auto fd = trace_faces(g);
  Json r, list = Json::array();
  for (const auto& ht : hypertrees(g, fd)) list.push_back(Json{{"k", ht.k}, {"lines", lines_json(ht.lines, g)}});
  r["count"] = list.size();
  r["hypertrees"] = list;
  pass = true;
  return r;
}

Json matrix_json(const Matrix<RealPoly>& m, const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) {
      if (m(i, j).is_zero()) continue;
      out.push_back(Json{{"row", labels[i / 4] + "." + std::to_string(i % 4)},
                         {"col", labels[j / 4] + "." + std::to_string(j % 4)},
                         {"poly", m(i, j).str()}});
    }
  return out;
}

Json cmd_polynomials(const Context& c, bool& pass) {
  const auto gm = build_gaussian(c.file.graph, c.params);
  const auto hu = compute_HU(gm);
  Json r;
  r["variables"] = c.file.graph.num_lines();
  r["HU"] = hu.str();
  if (hu.is_zero()) {
    r["note"] = "HU vanishes identically; HV is undefined";
  } else {
    const auto nc = compute_HV(gm, hu);
    r["externals"] = nc.labels;
    r["HVR"] = matrix_json(nc.HVR(), nc.labels);
    r["HVI"] = matrix_json(nc.HVI(), nc.labels);
  }
  pass = true;
  return r;
}

Json bound_json(const BoundReport& b, const RibbonGraph& g) {
  Json r;
  r["mode"] = to_string(b.mode);
  r["pass"] = b.pass;
  r["lambda"] = b.lambda ? b.lambda->get_str() : "none";
  r["coefficient_lambda"] = b.coefficient_lambda ? b.coefficient_lambda->get_str() : "none";
  Json rows = Json::array();
  for (const auto& row : b.rows) {
    std::vector<int> lines;
    for (std::size_t l = 0; l < row.support.size(); ++l)
      if (row.support[l]) lines.push_back(static_cast<int>(l));
    Json lj = lines_json(lines, g);
    std::string names;
    for (const auto& n : lj) names += (names.empty() ? "" : ",") + n.get<std::string>();
    rows.push_back(Json{{"J", "{" + names + "}"},
                        {"coefficient", row.coefficient.get_str()},
                        {"bound", row.bound.get_str()},
                        {"charged_to", row.charged_to ? exponent_str(*row.charged_to) : "none"}});
  }
  r["rows"] = rows;
  r["notes"] = b.notes;
  return r;
}

Json cmd_bounds(const Context& c, const std::string& mode_s, const std::string& lsz_constant, bool& pass) {
  BoundMode mode;
  if (mode_s == "strict") mode = BoundMode::Strict;
  else if (mode_s == "projective") mode = BoundMode::Projective;
  else throw UsageError("--mode must be strict or projective");
  const auto& g = c.file.graph;
  const auto fd = trace_faces(g);
  const auto hu = compute_HU(build_gaussian(g, c.params));
  const auto hts = hypertrees(g, fd);
  BoundReport b;
  if (c.params.model == Model::GW) {
    b = gw_bound_check(hu, hts, fd.genus, c.params, mode);
  } else {
    std::optional<Rational> product;
    if (!lsz_constant.empty()) product = rational_option(lsz_constant, Rational(1));
    if (mode == BoundMode::Strict && !product) throw UsageError("strict LSZ bound needs --lsz-constant");
    b = lsz_bound_check(hu, hts, fd.genus, fd.F, c.params, mode, product);
  }
  pass = b.pass;
  Json r;
  r["model"] = to_string(c.params.model);
  r["s"] = c.params.s().get_str();
  r["bound"] = bound_json(b, g);
  return r;
}

Json cmd_power(const Context& c, bool& pass) {
  const auto pc = power_counting(c.file.graph, c.params);
  Json r;
  r["omega"] = pc.omega.get_str();
  r["g"] = pc.g;
  r["N"] = pc.N;
  r["F"] = pc.F;
  r["L"] = pc.L;
  r["min_degree_HU"] = pc.min_degree_HU;
  r["degree_matches_F_minus_1"] = pc.degree_matches;
  r["euler_matches"] = pc.euler_matches;
  pass = pc.consistent();
  return r;
}

struct Prepared {
  NCPolynomials nc;
  std::vector<std::array<Rational, 4>> externals;
};

Prepared prepare(const Context& c, const std::string& externals) {
  const auto gm = build_gaussian(c.file.graph, c.params);
  auto nc = compute_HV(gm, compute_HU(gm));
  auto ext = parse_externals(externals, nc.labels);
  return {std::move(nc), std::move(ext)};
}

Json evaluation_json(const EvaluationReport& ev) {
  Json r = complex_json(ev.value);
  r["error"] = fmt(ev.error);
  r["tail"] = fmt(ev.tail);
  r["dimension"] = ev.dimension;
  r["points"] = ev.points;
  return r;
}

Json cmd_mellin(const Context& c, const Rational& D, const std::string& externals, bool feasibility_only, bool& pass) {
  auto p = prepare(c, externals);
  const auto m = decompose(p.nc, p.externals, {!feasibility_only});
  Json r;
  r["D"] = D.get_str();
  r["hu_monomials"] = m.hu.size();
  r["hvr_monomials"] = m.hvr.size();
  r["hvi_monomials"] = m.hvi.size();
  r["notices"] = m.notices;
  const auto fr = delta_feasible(m, D);
  r["feasible"] = fr.feasible;
  r["max_slack"] = fr.max_slack.get_str();
  if (fr.witness) {
    Json w = Json::array();
    for (const auto& v : fr.witness->point) w.push_back(v.get_str());
    r["witness"] = w;
    r["witness_verified"] = verify_witness(m, D, *fr.witness);
  } else if (fr.certificate) {
    Json w = Json::array();
    for (const auto& v : fr.certificate->weights) w.push_back(v.get_str());
    r["certificate_weights"] = w;
    r["certificate_hyperplane"] = fr.certificate->hyperplane.get_str();
    r["certificate_verified"] = verify_certificate(m, D, *fr.certificate);
  }
  pass = fr.feasible;
  if (fr.feasible && !feasibility_only) r["value"] = evaluation_json(evaluate_mellin(m, D, *fr.witness));
  return r;
}

Json cmd_evaluate(const Context& c, const Rational& D, const std::string& externals, const std::string& method,
                  int points, bool& pass) {
  if (method != "mellin" && method != "direct" && method != "both" && method != "smeared")
    throw UsageError("--method must be mellin, direct, both or smeared");
  auto p = prepare(c, externals);
  Json r;
  r["D"] = D.get_str();
  pass = true;
  std::optional<EvaluationReport> ev;
  std::optional<oracle::QuadratureResult> di;
  if (method == "mellin" || method == "both") {
    const auto m = decompose(p.nc, p.externals);
    const auto fr = delta_feasible(m, D);
    if (!fr.feasible) throw ModelViolation("D = " + D.get_str() + " lies outside the Mellin domain");
    ev = evaluate_mellin(m, D, *fr.witness);
    r["mellin"] = evaluation_json(*ev);
  }
  if (method == "direct" || method == "both") {
    di = oracle::direct_integrate(p.nc, D, p.externals, {oracle::QuadratureConfig::Scheme::TensorGaussLegendre, points});
    Json d = complex_json(di->value);
    d["error"] = fmt(di->error);
    d["evaluations"] = di->evaluations;
    r["direct"] = d;
  }
  if (method == "smeared") {
    const auto sm = oracle::smeared_integrate(p.nc, D, {oracle::QuadratureConfig::Scheme::TensorGaussLegendre, points});
    Json d = complex_json(sm.value);
    d["error"] = fmt(sm.error);
    r["smeared"] = d;
  }
  if (ev && di) {
    const double rel = std::abs(ev->value - di->value) / std::abs(di->value);
    r["relative_difference"] = fmt(rel);
    pass = rel <= 1e-3;
  }
  return r;
}


std::pair<Rational, Rational> parse_range(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("--range needs the form lo:hi");
  return {rational_option(s.substr(0, colon), Rational(0)), rational_option(s.substr(colon + 1), Rational(0))};
}

Json cmd_poles(const Context& c, const std::string& range, const std::string& resolution, bool& pass) {
  auto [lo, hi] = parse_range(range);
  const Rational res = rational_option(resolution, Rational(1, 64));
  if (sgn(res) <= 0 || hi <= lo) throw UsageError("need lo < hi and a positive resolution");
  auto p = prepare(c, "");
  const auto m = decompose(p.nc, p.externals);
  Json r;
  r["range"] = "(" + lo.get_str() + ", " + hi.get_str() + ")";
  r["resolution"] = res.get_str();
  Json list = Json::array();
  for (const auto& cand : pole_scan(m, lo, hi, res)) {
    std::string tags;
    for (const auto& t : cand.tags) tags += (tags.empty() ? "" : ",") + t;
    list.push_back(Json{{"D", cand.exact() ? cand.lo.get_str() : "[" + cand.lo.get_str() + ", " + cand.hi.get_str() + "]"},
                        {"tags", tags}});
  }
  r["count"] = list.size();
  r["candidates"] = list;
  pass = true;
  return r;
}

Json cmd_verify(const Context& c, bool& pass) {
  const auto& g = c.file.graph;
  const auto fd = trace_faces(g);
  const auto gm = build_gaussian(g, c.params);
  const auto hu = compute_HU(gm);
  Json checks = Json::array();
  pass = true;
  auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
    Json j{{"check", name}, {"pass", ok}};
    if (!detail.empty()) j["detail"] = detail;
    checks.push_back(j);
    pass = pass && ok;
  };

  check("orientable", check_orientable(g));
  check("euler", g.num_vertices() - g.num_lines() + fd.F == 2 - 2 * fd.genus);
  bool degree_ok = true;
  for (int l = 0; l < hu.nvars(); ++l) degree_ok = degree_ok && hu.degree_in(l) <= 2;
  check("degree_per_variable_le_2", degree_ok);
  if (c.params.model == Model::GW) {
    bool positive = true;
    for (const auto& [e, coeff] : hu.terms()) positive = positive && sgn(coeff) >= 0;
    check("gw_coefficients_nonnegative", positive);
  }
  check("elimination_equals_interpolation", hu == compute_HU_interpolated(gm));
  if (g.num_lines() <= 16) check("hypertrees_match_exhaustive", hypertrees(g, fd) == oracle::hypertrees_exhaustive(g));

  if (hu.is_zero() && g.num_lines() > 0) {
    check("hu_nonzero", false, "HU vanishes identically at these parameters");
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<long> num(1, 96);
    std::vector<std::vector<Rational>> pts;
    for (int k = 0; k < 20; ++k) {
      std::vector<Rational> t;
      for (int l = 0; l < g.num_lines(); ++l) t.push_back(frac(num(rng), 97));
      pts.push_back(t);
    }
    const double residual = oracle::numeric_det_check(gm, hu, pts);
    check("numeric_determinant", residual <= 1e-10, "max residual " + fmt(residual));

    const auto hts = hypertrees(g, fd);
    const auto b = c.params.model == Model::GW
                       ? gw_bound_check(hu, hts, fd.genus, c.params, BoundMode::Projective)
                       : lsz_bound_check(hu, hts, fd.genus, fd.F, c.params, BoundMode::Projective);
    check("bound_projective", b.pass, "lambda " + (b.lambda ? b.lambda->get_str() : std::string("none")));

    const auto pc = power_counting(g, fd, hu);
    check("power_counting", pc.consistent(), "omega " + pc.omega.get_str());

    if (g.num_vertices() > 1) check("root_invariance", root_invariance_check(g, c.params).invariant);

    const auto nc = compute_HV(gm, hu);
    const auto m = decompose(nc, std::vector<std::array<Rational, 4>>(nc.num_external(), {0, 0, 0, 0}));
    for (const Rational& D : {frac(1, 2), Rational(1), frac(3, 2)}) {
      const auto fr = delta_feasible(m, D);
      check("strip_feasible_D=" + D.get_str(), fr.feasible && verify_witness(m, D, *fr.witness),
            "slack " + fr.max_slack.get_str());
    }
  }
  Json r;
  r["checks"] = checks;
  r["pass"] = pass;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parametric and Mellin representations of Feynman amplitudes on Moyal space"};
  app.require_subcommand(1);
  bool json = false;
  std::string omega, theta;
  app.add_flag("--json", json, "Machine-readable output");
  app.add_option("--omega", omega, "Override the oscillator frequency");
  app.add_option("--theta", theta, "Override the noncommutativity parameter");

  std::string file, mode = "projective", lsz_constant, D_s, externals, method = "both", range = "0:4", resolution = "1/64";
  bool feasibility_only = false;
  int points = 48;
  auto with_file = [&](CLI::App* sub) {
    sub->add_option("file", file, "Graph file")->required()->check(CLI::ExistingFile);
    return sub;
  };
  auto* info = with_file(app.add_subcommand("info", "Topology: V, L, F, g, N, broken faces"));
  auto* hts = with_file(app.add_subcommand("hypertrees", "List the hyper-trees"));
  auto* polys = with_file(app.add_subcommand("polynomials", "HU, HVR and HVI"));
  auto* bounds = with_file(app.add_subcommand("bounds", "Lower bound on HU by hyper-tree monomials"));
  bounds->add_option("--mode", mode, "strict or projective");
  bounds->add_option("--lsz-constant", lsz_constant, "Product of 2(Omega +- 1) factors (strict LSZ)");
  auto* power = with_file(app.add_subcommand("power", "Power counting"));
  auto* mellin = with_file(app.add_subcommand("mellin", "Mellin representation, domain feasibility and value"));
  mellin->add_option("--D", D_s, "Dimension (default from the file)");
  mellin->add_option("--externals", externals, "label=a,b,c,d;... (default all zero)");
  mellin->add_flag("--feasibility-only", feasibility_only, "Skip the contour integral");
  auto* evaluate = with_file(app.add_subcommand("evaluate", "Numerical amplitude"));
  evaluate->add_option("--D", D_s, "Dimension (default from the file)");
  evaluate->add_option("--externals", externals, "label=a,b,c,d;... (default all zero)");
  evaluate->add_option("--method", method, "mellin, direct, both or smeared");
  evaluate->add_option("--points", points, "Gauss-Legendre points per panel for direct integration");
  auto* poles = with_file(app.add_subcommand("poles", "Pole candidates in D"));
  poles->add_option("--range", range, "lo:hi (open interval)");
  poles->add_option("--resolution", resolution, "Grid spacing");
  auto* verify = with_file(app.add_subcommand("verify", "Full invariant suite"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  Json report;
  bool pass = true;
  std::string command;
  try {
    const Context c = load(file, omega, theta);
    const Rational D = rational_option(D_s, c.params.D_default);
    if (*info) command = "info", report = cmd_info(c, pass);
    else if (*hts) command = "hypertrees", report = cmd_hypertrees(c, pass);
    else if (*polys) command = "polynomials", report = cmd_polynomials(c, pass);
    else if (*bounds) command = "bounds", report = cmd_bounds(c, mode, lsz_constant, pass);
    else if (*power) command = "power", report = cmd_power(c, pass);
    else if (*mellin) command = "mellin", report = cmd_mellin(c, D, externals, feasibility_only, pass);
    else if (*evaluate) command = "evaluate", report = cmd_evaluate(c, D, externals, method, points, pass);
    else if (*poles) command = "poles", report = cmd_poles(c, range, resolution, pass);
    else if (*verify) command = "verify", report = cmd_verify(c, pass);
  } catch (const ParseError& e) {
    std::cerr << "error: " << file << ": " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigurationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }

  Json out;
  out["command"] = command;
  out["pass"] = pass;
  out["report"] = report;
  if (json) {
    std::cout << out.dump(2) << "\n";
  } else {
    render_text(report, std::cout);
    if (command != "verify") std::cout << "status = " << (pass ? "pass" : "fail") << "\n";
  }
  return pass ? kPass : kFail;
}
