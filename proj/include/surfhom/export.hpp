#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfhom/catalog.hpp"
#include "surfhom/hyperbolic.hpp"

namespace surfhom {

/// Curve system as an undirected multigraph. Edges on a curve carry its name and color; other edges are gray.
inline std::string bundle_to_dot(const ExampleBundle& b) {
  static const char* palette[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan4",
                                  "gold3", "navy", "olivedrab", "salmon"};
  const RibbonGraph& R = b.ribbon;
  std::vector<std::vector<std::string>> on(R.num_edges());
  std::map<std::string, std::string> color;
  for (std::size_t k = 0; k < b.curves.size(); ++k) {
    color[b.curves[k].name] = palette[k % (sizeof palette / sizeof *palette)];
    for (Dart h : b.curves[k].walk.darts) on[R.edge(h)].push_back(b.curves[k].name);
  }
  std::ostringstream out;
  out << "graph \"" << b.name << "\" {\n";
  for (int v = 0; v < R.num_vertices(); ++v) out << "  v" << v << ";\n";
  for (int e = 0; e < R.num_edges(); ++e) {
    Dart h = R.edge_dart(e);
    std::string label = e < static_cast<int>(b.edge_labels.size()) ? b.edge_labels[e] : std::to_string(e);
    std::string c = "gray";
    if (!on[e].empty()) {
      c = color[on[e].front()];
      label += " [";
      for (std::size_t i = 0; i < on[e].size(); ++i) label += (i ? "," : "") + on[e][i];
      label += "]";
    }
    out << "  v" << R.vertex(h) << " -- v" << R.head(h) << " [label=\"" << label << "\", color=" << c << "];\n";
  }
  out << "}\n";
  return out.str();
}

/// Bundle JSON; example3 also carries the hyperbolic parameter report.
inline nlohmann::json export_json(const ExampleBundle& b) {
  nlohmann::json j = bundle_to_json(b);
  if (b.name == "example3") j["hyperbolic"] = hyperbolic::report(hyperbolic::example3_assembly());
  return j;
}

}  // namespace surfhom
