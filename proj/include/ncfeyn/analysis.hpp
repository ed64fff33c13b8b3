#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ncfeyn/amplitude.hpp"
#include "ncfeyn/ribbon.hpp"

namespace ncfeyn {

enum class BoundMode { Strict, Projective };

inline std::string to_string(BoundMode m) { return m == BoundMode::Strict ? "strict" : "projective"; }

struct BoundRow {
  Exponent support;      ///< indicator vector of the hyper-tree
  Rational coefficient;  ///< coefficient of the monomial in HU
  Rational bound;        ///< bound value (strict) or bound shape (projective)
  bool pass = false;     ///< coefficient-wise comparison of this row
  std::optional<Exponent> charged_to;  ///< HU monomial dividing the support that covers it
};

/// lambda is the largest certified constant with HU(t) >= lambda * bound(t)
/// on (0,1]^L: every row is charged to a positive HU monomial whose exponent
/// is componentwise <= the row support (so that monomial dominates it there).
/// Strict mode passes iff lambda >= 1, projective mode iff lambda > 0.
struct BoundReport {
  BoundMode mode = BoundMode::Projective;
  std::vector<BoundRow> rows;
  std::optional<Rational> lambda;
  std::optional<Rational> coefficient_lambda;  ///< min coefficient / bound over the rows
  bool pass = true;
  std::vector<std::string> notes;
};

namespace detail {

inline Exponent indicator(const std::vector<int>& lines, int L) {
  Exponent e(L, 0);
  for (int l : lines) e[l] = 1;
  return e;
}

inline bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline void finish_report(BoundReport& r, const RealPoly& hu) {
  for (const auto& row : r.rows) {
    Rational q = row.coefficient / row.bound;
    if (!r.coefficient_lambda || q < *r.coefficient_lambda) r.coefficient_lambda = q;
  }
  if (r.rows.empty()) return;
  bool nonnegative = true;
  for (const auto& [e, c] : hu.terms()) nonnegative = nonnegative && sgn(c) >= 0;
  if (!nonnegative) {
    r.notes.push_back("HU has negative coefficients; no pointwise certificate");
    r.pass = false;
    return;
  }
  std::map<Exponent, Rational> load;
  bool covered = true;
  for (auto& row : r.rows) {
    if (sgn(row.coefficient) > 0) {
      row.charged_to = row.support;
    } else {
      // Heaviest HU monomial dividing the support.
      for (const auto& [e, c] : hu.terms())
        if (sgn(c) > 0 && divides(e, row.support) && (!row.charged_to || c > hu.coeff(*row.charged_to)))
          row.charged_to = e;
    }
    if (!row.charged_to) {
      covered = false;
      continue;
    }
    load[*row.charged_to] += row.bound;
  }
  if (covered)
    for (const auto& [e, b] : load) {
      Rational q = hu.coeff(e) / b;
      if (!r.lambda || q < *r.lambda) r.lambda = q;
    }
  else
    r.notes.push_back("some hyper-tree monomial is not dominated by any HU monomial");
  if (r.coefficient_lambda && sgn(*r.coefficient_lambda) <= 0)
    r.notes.push_back("coefficient-wise comparison fails on some hyper-tree monomial");
  r.pass = r.lambda && (r.mode == BoundMode::Strict ? *r.lambda >= 1 : sgn(*r.lambda) > 0);
}

}  // namespace detail

/// Checks HU >= lambda sum_J (2s)^{2g - k_J} prod_{l in J} t_l on (0,1]^L.
inline BoundReport gw_bound_check(const RealPoly& hu, const std::vector<HyperTree>& hts, int g,
                                  const ModelParams& p, BoundMode mode) {
  BoundReport r;
  r.mode = mode;
  const int L = hu.nvars();
  if (L == 0) return r;
  const Rational two_s = 2 * p.s();
  for (const auto& ht : hts) {
    BoundRow row;
    row.support = detail::indicator(ht.lines, L);
    row.coefficient = hu.coeff(row.support);
    row.bound = pow(two_s, 2 * g - ht.k);
    row.pass = mode == BoundMode::Strict ? row.coefficient >= row.bound : sgn(row.coefficient) > 0;
    r.rows.push_back(std::move(row));
  }
  detail::finish_report(r, hu);
  r.notes.push_back("s = 1/Omega is used literally");
  return r;
}

/// Lowest-order check of the LSZ bound. Each hyper-tree J0 contributes
/// s^{2(g+F-1)} (2^g P)^2 2^{-|K|} prod_{l in J0} t_l with K the complement
/// of J0 and P the topology-dependent product of 2(Omega +- 1) factors,
/// which strict mode takes from the caller.
inline BoundReport lsz_bound_check(const RealPoly& hu, const std::vector<HyperTree>& hts, int g, int F,
                                   const ModelParams& p, BoundMode mode,
                                   const std::optional<Rational>& omega_product = std::nullopt) {
  if (mode == BoundMode::Strict && !omega_product)
    throw ConfigurationError("strict LSZ bound needs the (Omega +- 1) product of the graph");
  BoundReport r;
  r.mode = mode;
  const int L = hu.nvars();
  if (L == 0) return r;
  const Rational s = p.s();
  Rational P2 = omega_product ? *omega_product * *omega_product : Rational(1);
  for (const auto& ht : hts) {
    BoundRow row;
    row.support = detail::indicator(ht.lines, L);
    row.coefficient = hu.coeff(row.support);
    int K = L - static_cast<int>(ht.lines.size());
    row.bound = pow(s, 2 * (g + F - 1)) * pow(Rational(2), 2 * g - K);
    if (mode == BoundMode::Strict) row.bound *= P2;
    row.pass = mode == BoundMode::Strict ? row.coefficient >= row.bound : sgn(row.coefficient) > 0;
    r.rows.push_back(std::move(row));
  }
  detail::finish_report(r, hu);
  if (mode == BoundMode::Projective) r.notes.push_back("lambda absorbs the (2^g prod 2(Omega +- 1))^2 constant");
  return r;
}

struct PowerCounting {
  Rational omega;
  int min_degree_HU = 0;
  int F = 0;
  int L = 0;
  int g = 0;
  int N = 0;
  bool degree_matches = false;  ///< min degree of HU equals F - 1
  bool euler_matches = false;   ///< 2(F-1) - L == -omega
  bool consistent() const { return degree_matches && euler_matches; }
};

inline PowerCounting power_counting(const RibbonGraph& graph, const FaceData& fd, const RealPoly& hu) {
  PowerCounting pc;
  pc.g = fd.genus;
  pc.N = fd.N;
  pc.F = fd.F;
  pc.L = graph.num_lines();
  pc.omega = Rational(4 * pc.g) + frac(pc.N - 4, 2);
  pc.min_degree_HU = hu.is_zero() ? -1 : hu.min_total_degree();
  pc.degree_matches = pc.min_degree_HU == pc.F - 1;
  pc.euler_matches = Rational(2 * (pc.F - 1) - pc.L) == -pc.omega;
  return pc;
}

inline PowerCounting power_counting(const RibbonGraph& graph, const ModelParams& p) {
  return power_counting(graph, trace_faces(graph), compute_HU(build_gaussian(graph, p)));
}

struct RootInvarianceReport {
  std::vector<int> roots;
  std::vector<std::set<Exponent>> supports;  ///< minimal-degree support per root
  bool invariant = true;
  bool full_polynomials_differ = false;
};

inline std::set<Exponent> leading_support(const RealPoly& hu) {
  std::set<Exponent> s;
  for (const auto& [e, c] : leading_terms(hu)) s.insert(e);
  return s;
}

/// Recomputes HU for every root and compares the minimal-degree supports.
inline RootInvarianceReport root_invariance_check(const RibbonGraph& graph, const ModelParams& p) {
  RootInvarianceReport r;
  std::optional<RealPoly> first;
  for (int v = 0; v < graph.num_vertices(); ++v) {
    RealPoly hu = compute_HU(build_gaussian(graph.with_root(v), p));
    r.roots.push_back(v);
    r.supports.push_back(leading_support(hu));
    if (!first) first = hu;
    else if (!(hu == *first)) r.full_polynomials_differ = true;
  }
  for (const auto& s : r.supports) r.invariant = r.invariant && s == r.supports.front();
  return r;
}

}  // namespace ncfeyn
