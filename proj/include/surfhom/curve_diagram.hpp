#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "surfhom/error.hpp"
#include "surfhom/ribbon_graph.hpp"

namespace surfhom {

enum class End { out, in };

/// One strand end at a vertex: the curve leaving (out) or arriving (in).
struct Strand {
  std::string curve;
  End end;
};

/// Counterclockwise order at a transversal crossing of a and b. With sign +1 the pair (a, b) is
/// positively oriented, i.e. a's algebraic intersection with b is +1.
inline std::vector<Strand> crossing(const std::string& a, const std::string& b, int sign) {
  if (sign > 0) return {{a, End::out}, {b, End::out}, {a, End::in}, {b, End::in}};
  return {{a, End::out}, {b, End::in}, {a, End::in}, {b, End::out}};
}

/// A ribbon graph formed by a system of closed curves. Curve c with cyclic vertex list
/// (v0, ..., v_{m-1}) contributes edges v_i -> v_{i+1}; edges are numbered curve by curve.
struct CurveDiagram {
  RibbonGraph ribbon;
  std::vector<std::string> vertex_names;
  std::vector<std::string> curve_names;
  std::vector<ClosedWalk> curve_walks;
  std::vector<std::string> edge_labels;  // "curve:i"

  const ClosedWalk& walk(const std::string& curve) const {
    for (std::size_t i = 0; i < curve_names.size(); ++i)
      if (curve_names[i] == curve) return curve_walks[i];
    throw ValidationError("unknown curve '" + curve + "'");
  }
  int vertex_index(const std::string& v) const {
    for (std::size_t i = 0; i < vertex_names.size(); ++i)
      if (vertex_names[i] == v) return static_cast<int>(i);
    throw ValidationError("unknown vertex '" + v + "'");
  }
  /// Edge i of a curve (from its i-th vertex to the next), as the dart in curve direction.
  Dart curve_dart(const std::string& curve, std::size_t i) const { return walk(curve).darts.at(i); }
};

inline CurveDiagram build_curve_diagram(const std::vector<std::pair<std::string, std::vector<std::string>>>& curves,
                                        const std::vector<std::pair<std::string, std::vector<Strand>>>& rotations) {
  CurveDiagram d;
  std::map<std::string, int> vid;
  for (const auto& [name, strands] : rotations) {
    if (vid.count(name)) throw ValidationError("vertex '" + name + "' listed twice");
    vid[name] = static_cast<int>(d.vertex_names.size());
    d.vertex_names.push_back(name);
  }
  std::map<std::pair<std::string, std::string>, Dart> out_dart, in_dart;
  int E = 0;
  for (const auto& [name, verts] : curves) {
    if (verts.empty()) throw ValidationError("curve '" + name + "' has no vertices");
    ClosedWalk w;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const std::string& v = verts[i];
      const std::string& u = verts[(i + 1) % verts.size()];
      if (!vid.count(v)) throw ValidationError("curve '" + name + "' visits unknown vertex '" + v + "'");
      if (!out_dart.emplace(std::make_pair(name, v), 2 * E).second)
        throw ValidationError("curve '" + name + "' visits vertex '" + v + "' twice");
      in_dart[{name, u}] = 2 * E + 1;
      w.darts.push_back(2 * E);
      d.edge_labels.push_back(name + ":" + std::to_string(i));
      ++E;
    }
    d.curve_names.push_back(name);
    d.curve_walks.push_back(std::move(w));
  }
  std::vector<Dart> twin(2 * E);
  for (int h = 0; h < 2 * E; ++h) twin[h] = h ^ 1;
  std::vector<std::vector<Dart>> rotation;
  for (const auto& [name, strands] : rotations) {
    std::vector<Dart> r;
    for (const auto& s : strands) {
      const auto& table = s.end == End::out ? out_dart : in_dart;
      auto it = table.find({s.curve, name});
      if (it == table.end())
        throw ValidationError("vertex '" + name + "' lists a strand of curve '" + s.curve + "' that does not pass there");
      r.push_back(it->second);
    }
    rotation.push_back(std::move(r));
  }
  d.ribbon = RibbonGraph(std::move(rotation), std::move(twin));
  for (const auto& w : d.curve_walks) validate_walk(d.ribbon, w);
  return d;
}

}  // namespace surfhom
