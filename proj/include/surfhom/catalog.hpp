#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfhom/curve_diagram.hpp"
#include "surfhom/error.hpp"
#include "surfhom/homology.hpp"
#include "surfhom/hyperbolic.hpp"
#include "surfhom/int_matrix.hpp"
#include "surfhom/rational.hpp"
#include "surfhom/ribbon_graph.hpp"

namespace surfhom {

struct NamedWalk {
  std::string name;
  ClosedWalk walk;
};

struct ExampleBundle {
  std::string name;
  RibbonGraph ribbon;  // boundary faces marked where the surface is bordered
  std::vector<std::string> edge_labels;
  std::vector<NamedWalk> curves;
  std::optional<ReferenceBasis> reference_basis;
  std::vector<std::string> coordinate_rows;  // curve names, one per row of coordinates
  IntMatrix coordinates;                     // expected classes in the reference basis
  std::optional<std::vector<Rational>> weights;
  std::optional<GluingWord> word;    // printed single-polygon word, when there is one
  std::optional<IntMatrix> class_model;  // closed-surface homology model (example3)
  nlohmann::json expected;

  const ClosedWalk& curve(const std::string& n) const {
    for (const auto& c : curves)
      if (c.name == n) return c.walk;
    throw ValidationError("bundle '" + name + "' has no curve '" + n + "'");
  }
  Chain chain(const std::string& n) const { return walk_chain(ribbon, curve(n)); }
  std::vector<ClosedWalk> walks(const std::vector<std::string>& names) const {
    std::vector<ClosedWalk> out;
    for (const auto& n : names) out.push_back(curve(n));
    return out;
  }
  IntVector expected_coordinates(const std::string& n) const {
    for (std::size_t i = 0; i < coordinate_rows.size(); ++i)
      if (coordinate_rows[i] == n) return coordinates.row(i);
    throw ValidationError("bundle '" + name + "' has no coordinate row '" + n + "'");
  }
  std::vector<std::pair<std::string, ClosedWalk>> named_walks() const {
    std::vector<std::pair<std::string, ClosedWalk>> out;
    for (const auto& c : curves) out.push_back({c.name, c.walk});
    return out;
  }
};

inline const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names = {"example1", "example2G", "example2H", "example3",
                                                 "example4", "remark45G", "remark45H"};
  return names;
}

namespace catalog {

inline const char* kExample1Word = "1 2 1' 3 4 5 2' 5' 6 3' 7 8 7' 9 6' 10 8' 10' 4' 9'";

/// The twenty-sided word with the arc alpha1 added: side 2 is split at its crossing with alpha1 (into 2a, 2b)
/// and the arc x cuts the 20-gon into two polygons.
inline const char* kExample1Cut[] = {"2b 1' 3 4 5 2b' x", "2a' 5' 6 3' 7 8 7' 9 6' 10 8' 10' 4' 9' 1 2a x'"};

inline ExampleBundle example1() {
  ExampleBundle b;
  b.name = "example1";
  b.word = GluingWord::parse(kExample1Word);
  GluedSurface s = glue_polygons({GluingWord::parse(kExample1Cut[0]), GluingWord::parse(kExample1Cut[1])});
  b.ribbon = s.ribbon;
  b.edge_labels = s.edge_labels;
  b.curves = {{"alpha1", s.walk("x")},      {"beta1", s.walk("2a 2b")},      {"beta2", s.walk("8")},
              {"beta3", s.walk("4 6")},     {"gamma", s.walk("3 9'")},       {"delta", s.walk("1 5' 10 7'")}};
  auto c = [&](const std::string& n) { return b.chain(n); };
  // alpha2 = alpha1 - beta2 + gamma - delta, alpha3 = gamma - beta2
  b.reference_basis = ReferenceBasis(
      "canonical", b.ribbon,
      {{"alpha1", c("alpha1"), b.curve("alpha1")},
       {"beta1", c("beta1"), b.curve("beta1")},
       {"alpha2", combine({{1, c("alpha1")}, {-1, c("beta2")}, {1, c("gamma")}, {-1, c("delta")}}), std::nullopt},
       {"beta2", c("beta2"), b.curve("beta2")},
       {"alpha3", combine({{1, c("gamma")}, {-1, c("beta2")}}), std::nullopt},
       {"beta3", c("beta3"), b.curve("beta3")}});
  b.coordinate_rows = {"alpha1", "beta1", "beta2", "beta3", "gamma", "delta"};
  b.coordinates = IntMatrix::from_rows({{1, 0, 0, 0, 0, 0},
                                        {0, 1, 0, 0, 0, 0},
                                        {0, 0, 0, 1, 0, 0},
                                        {0, 0, 0, 0, 0, 1},
                                        {0, 0, 0, 1, 1, 0},
                                        {1, 0, -1, 0, 1, 0}});
  b.expected = {{"genus", 3},
                {"word_faces", 1},
                {"word_sides", 20},
                {"word_edges", 10},
                {"five_curve_components", 1},
                {"six_curve_components", 2},
                {"abs_det_six_classes", 1},
                {"intersections", {{"alpha1", "beta1", 1}}}};
  return b;
}

inline std::vector<std::pair<std::string, std::vector<std::string>>> soul_curves(bool dummy) {
  if (dummy)
    return {{"alpha", {"X", "Y"}}, {"beta", {"X", "D"}}, {"gamma", {"Y", "Z"}}, {"delta", {"X", "Z"}}};
  return {{"alpha", {"ab", "ag"}}, {"beta", {"ab", "bd"}}, {"gamma", {"ag", "gd"}}, {"delta", {"bd", "gd"}}};
}

/// The graph G: four curves, each pair of consecutive ones crossing once at a 4-valent vertex.
inline CurveDiagram diagram_G() {
  return build_curve_diagram(soul_curves(false), {{"ab", crossing("alpha", "beta", 1)},
                                                  {"ag", crossing("alpha", "gamma", -1)},
                                                  {"bd", crossing("beta", "delta", 1)},
                                                  {"gd", crossing("gamma", "delta", 1)}});
}

/// The graph H: alpha, beta, delta meet at one 6-valent vertex X; beta carries a dummy vertex D.
inline CurveDiagram diagram_H() {
  return build_curve_diagram(
      soul_curves(true),
      {{"X",
        {{"alpha", End::out}, {"beta", End::out}, {"delta", End::out}, {"alpha", End::in}, {"beta", End::in},
         {"delta", End::in}}},
       {"Y", crossing("alpha", "gamma", -1)},
       {"Z", crossing("gamma", "delta", 1)},
       {"D", {{"beta", End::out}, {"beta", End::in}}}});
}

inline ExampleBundle soul_bundle(const std::string& name, bool H) {
  CurveDiagram d = H ? diagram_H() : diagram_G();
  ExampleBundle b;
  b.name = name;
  std::vector<int> all_faces(d.ribbon.num_faces());
  for (int f = 0; f < d.ribbon.num_faces(); ++f) all_faces[f] = f;
  b.ribbon = d.ribbon.with_boundary_faces(all_faces);
  b.edge_labels = d.edge_labels;
  for (std::size_t i = 0; i < d.curve_names.size(); ++i) b.curves.push_back({d.curve_names[i], d.curve_walks[i]});
  // eta runs along one edge of each curve and is homologous to alpha2.
  ClosedWalk eta = H ? ClosedWalk{{d.curve_dart("alpha", 0), d.curve_dart("gamma", 0), d.curve_dart("delta", 1)}}
                     : ClosedWalk{{d.curve_dart("alpha", 0), d.curve_dart("gamma", 0), d.curve_dart("delta", 1),
                                   d.curve_dart("beta", 1)}};
  validate_walk(b.ribbon, eta);
  const std::string eta_name = H ? "eta_H" : "eta_G";
  b.curves.push_back({eta_name, eta});
  auto c = [&](const std::string& n) { return b.chain(n); };
  b.reference_basis = ReferenceBasis("canonical", b.ribbon,
                                     {{"alpha1", c("alpha"), b.curve("alpha")},
                                      {"beta1", c("beta"), b.curve("beta")},
                                      {"alpha2", c(eta_name), eta},
                                      {"beta2", combine({{-1, c("beta")}, {-1, c("gamma")}}), std::nullopt}});
  b.coordinate_rows = {"alpha", "beta", "gamma", "delta", eta_name};
  b.coordinates = IntMatrix::from_rows({{1, 0, 0, 0},
                                        {0, 1, 0, 0},
                                        {0, -1, 0, -1},
                                        H ? IntVector{-1, 1, 2, 1} : IntVector{-1, 0, 2, 1},
                                        {0, 0, 1, 0}});
  b.weights = std::vector<Rational>(d.ribbon.num_edges(), Rational(1));
  b.expected = {{"genus", 2},
                {"boundary_count", 2},
                {"index", 2},
                {"curve_edges", 2},
                {"eta_edges", H ? 3 : 4},
                {"systole_count", 4},
                {"pairwise_unit_triple", H}};
  return b;
}

inline ExampleBundle example2G() { return soul_bundle("example2G", false); }
inline ExampleBundle example2H() { return soul_bundle("example2H", true); }

/// Homology model of the genus-12 surface: the four soul classes in the canonical basis of the
/// genus-2 part, followed by a_k, b_k on each of the two crowns.
inline IntMatrix example3_class_model() {
  const std::size_t n = 24;
  IntMatrix m(n, n);
  IntMatrix soul = IntMatrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, -1, 0, -1}, {-1, 0, 2, 1}});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = soul(i, j);
  for (std::size_t k = 4; k < n; ++k) m(k, k) = 1;
  return m;
}

inline ExampleBundle example3() {
  ExampleBundle b = soul_bundle("example3", false);
  b.class_model = example3_class_model();
  b.expected = {{"closed_genus", 12},     {"crown_h", 5},       {"crown_sides", 20},
                {"model_index", 2},       {"s", 1.061},         {"w", 2.234},
                {"crown_geodesic", 2.656}, {"crown_limit", 2.633}, {"residual_tol", 1e-9}};
  return b;
}

inline CurveDiagram diagram_K() {
  auto X = [](const std::string& a, const std::string& b, int s) { return crossing(a, b, s); };
  return build_curve_diagram(
      {{"u1", {"T1_2_9", "x1_8"}},
       {"u2", {"T2_3_10", "T1_2_9"}},
       {"u3", {"T2_3_10", "x3_5", "x3_8", "x3_6"}},
       {"u4", {"x4_5", "x4_9"}},
       {"u5", {"x3_5", "x4_5"}},
       {"u6", {"x3_6", "x6_10", "x6_7"}},
       {"u7", {"x6_7", "x7_9"}},
       {"u8", {"x1_8", "x3_8"}},
       {"u9", {"T1_2_9", "x4_9", "x7_9"}},
       {"u10", {"T2_3_10", "x6_10"}}},
      {{"T2_3_10",
        {{"u2", End::out}, {"u3", End::out}, {"u10", End::out}, {"u2", End::in}, {"u3", End::in}, {"u10", End::in}}},
       {"T1_2_9",
        {{"u1", End::out}, {"u9", End::in}, {"u2", End::in}, {"u1", End::in}, {"u9", End::out}, {"u2", End::out}}},
       {"x1_8", X("u1", "u8", 1)},
       {"x3_5", X("u3", "u5", 1)},
       {"x3_6", X("u3", "u6", -1)},
       {"x3_8", X("u3", "u8", -1)},
       {"x4_5", X("u4", "u5", 1)},
       {"x4_9", X("u4", "u9", -1)},
       {"x6_7", X("u6", "u7", 1)},
       {"x6_10", X("u6", "u10", 1)},
       {"x7_9", X("u7", "u9", -1)}});
}

inline ExampleBundle example4() {
  CurveDiagram d = diagram_K();
  ExampleBundle b;
  b.name = "example4";
  b.ribbon = d.ribbon;
  b.edge_labels = d.edge_labels;
  for (std::size_t i = 0; i < d.curve_names.size(); ++i) b.curves.push_back({d.curve_names[i], d.curve_walks[i]});
  auto c = [&](const std::string& n) { return b.chain(n); };
  auto w = [&](const std::string& n) { return std::optional<ClosedWalk>(b.curve(n)); };
  b.reference_basis = ReferenceBasis(
      "canonical", b.ribbon,
      {{"alpha1", c("u1"), w("u1")},
       {"beta1", c("u8"), w("u8")},
       {"alpha2", combine({{1, c("u10")}, {1, c("u2")}, {1, c("u8")}, {-1, c("u7")}}), std::nullopt},
       {"beta2", combine({{-1, c("u2")}, {-1, c("u8")}}), std::nullopt},
       {"alpha3", c("u4"), w("u4")},
       {"beta3", c("u5"), w("u5")},
       {"alpha4", c("u6"), w("u6")},
       {"beta4", c("u7"), w("u7")}});
  b.coordinate_rows = {"u1", "u2", "u3", "u4", "u5", "u6", "u7", "u8", "u9", "u10"};
  b.coordinates = IntMatrix::from_rows({{1, 0, 0, 0, 0, 0, 0, 0},
                                        {0, -1, 0, -1, 0, 0, 0, 0},
                                        {-1, 0, 2, 1, 1, 0, 0, 1},
                                        {0, 0, 0, 0, 1, 0, 0, 0},
                                        {0, 0, 0, 0, 0, 1, 0, 0},
                                        {0, 0, 0, 0, 0, 0, 1, 0},
                                        {0, 0, 0, 0, 0, 0, 0, 1},
                                        {0, 1, 0, 0, 0, 0, 0, 0},
                                        {0, -1, -1, 0, 0, -1, 1, 0},
                                        {0, 0, 1, 1, 0, 0, 0, 1}});
  // iota_k = 1 + k/200 spread evenly over the m_k edges of u_k
  std::vector<Rational> lengths(b.ribbon.num_edges());
  for (std::size_t k = 0; k < b.curves.size(); ++k) {
    const auto& walk = b.curves[k].walk;
    Rational iota(200 + static_cast<std::int64_t>(k) + 1, 200);
    for (Dart h : walk.darts) lengths[b.ribbon.edge(h)] = iota / Rational(static_cast<std::int64_t>(walk.size()));
  }
  b.weights = lengths;
  b.expected = {{"genus", 4},
                {"dets",
                 {{{"rows", {1, 2, 3, 4, 5, 6, 7, 8}}, {"det", 2}},
                  {{"rows", {1, 2, 3, 4, 5, 6, 7, 9}}, {"det", -3}},
                  {{"rows", {1, 2, 3, 4, 5, 6, 7, 10}}, {"det", -1}},
                  {{"rows", {2, 3, 4, 5, 6, 7, 8, 9}}, {"det", 1}}}},
                {"bound", "13/12"},
                {"short_cycles", {"u1", "u2", "u3", "u4", "u5", "u6", "u7", "u8", "u9", "u10"}},
                {"procedure_II", {{"selected", {"u1", "u2", "u3", "u4", "u5", "u6", "u7", "u10"}},
                                  {"rejected", {"u8", "u9"}}}},
                {"witness", {"u2", "u3", "u4", "u5", "u6", "u7", "u8", "u9"}},
                {"edge_counts", {2, 2, 4, 2, 2, 3, 2, 2, 3, 2}}};
  return b;
}

/// Perturbed lengths: one edge of each curve, the last one off eta, is lengthened by 1/1000, 2/1000,
/// 3/1000, 4/1000 for alpha, beta, gamma, delta. All other edges keep length 1.
inline ExampleBundle remark45(bool H) {
  ExampleBundle b = soul_bundle(H ? "remark45H" : "remark45G", H);
  const std::string eta_name = H ? "eta_H" : "eta_G";
  std::vector<bool> on_eta(b.ribbon.num_edges(), false);
  for (Dart h : b.curve(eta_name).darts) on_eta[b.ribbon.edge(h)] = true;
  std::vector<Rational> lengths(b.ribbon.num_edges(), Rational(1));
  const std::vector<std::string> order = {"alpha", "beta", "gamma", "delta"};
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& darts = b.curve(order[k]).darts;
    auto it = std::find_if(darts.rbegin(), darts.rend(), [&](Dart h) { return !on_eta[b.ribbon.edge(h)]; });
    lengths[b.ribbon.edge(*it)] = Rational(1000 + static_cast<std::int64_t>(k) + 1, 1000);
  }
  b.weights = lengths;
  b.expected = {{"global_minimum", {"alpha", "beta", "gamma", eta_name}},
                {"procedure_I", {"alpha", "beta", "gamma", "delta"}},
                {"eta_length", H ? "3/1" : "4/1"},
                {"bound", H ? "3/1" : "4/1"}};
  return b;
}

}  // namespace catalog

inline ExampleBundle load_example(const std::string& name) {
  if (name == "example1") return catalog::example1();
  if (name == "example2G") return catalog::example2G();
  if (name == "example2H") return catalog::example2H();
  if (name == "example3") return catalog::example3();
  if (name == "example4") return catalog::example4();
  if (name == "remark45G") return catalog::remark45(false);
  if (name == "remark45H") return catalog::remark45(true);
  throw ValidationError("unknown example '" + name + "'");
}

inline nlohmann::json bundle_to_json(const ExampleBundle& b) {
  nlohmann::json j;
  j["name"] = b.name;
  j["surface"] = ribbon_to_json(b.ribbon);
  j["edge_labels"] = b.edge_labels;
  j["curves"] = nlohmann::json::array();
  for (const auto& c : b.curves) j["curves"].push_back({{"name", c.name}, {"darts", c.walk.darts}});
  if (b.word) j["word"] = b.word->str();
  if (b.weights) {
    std::vector<std::string> w;
    for (const auto& x : *b.weights) w.push_back(x.str());
    j["weights"] = w;
  }
  if (b.reference_basis) {
    nlohmann::json rb = nlohmann::json::array();
    for (const auto& e : b.reference_basis->elements()) rb.push_back({{"name", e.name}, {"chain", e.chain}});
    j["reference_basis"] = rb;
  }
  j["coordinates"] = nlohmann::json::object();
  for (std::size_t i = 0; i < b.coordinate_rows.size(); ++i) j["coordinates"][b.coordinate_rows[i]] = b.coordinates.row(i);
  if (b.class_model) j["class_model"] = *b.class_model;
  j["expected"] = b.expected;
  return j;
}

}  // namespace surfhom
