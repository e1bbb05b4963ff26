#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfhom/error.hpp"

namespace surfhom {

using Dart = int;

/// Directed half-edge sequence, cyclically closed.
struct ClosedWalk {
  std::vector<Dart> darts;

  std::size_t size() const { return darts.size(); }
  bool empty() const { return darts.empty(); }
  friend bool operator==(const ClosedWalk&, const ClosedWalk&) = default;
};

struct SurfaceInvariants {
  int V = 0;
  int E = 0;
  int F = 0;  // interior (non-boundary) faces
  int euler_char = 0;
  int genus = 0;
  bool orientable = true;
  int boundary_count = 0;
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
  int components() {
    int c = 0;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i)
      if (find(i) == i) ++c;
    return c;
  }
};

}  // namespace detail

/// Oriented combinatorial surface. Darts are 0..2E-1; each vertex carries the counterclockwise
/// cyclic order of its outgoing darts. Faces lie to the left of their darts:
/// next(h) = rot_prev(twin(h)).
class RibbonGraph {
 public:
  RibbonGraph() = default;

  /// rotation[v] lists the darts leaving v in counterclockwise order; twin is an involution on darts.
  /// boundary_darts: any dart of each face to be marked as boundary.
  RibbonGraph(std::vector<std::vector<Dart>> rotation, std::vector<Dart> twin, std::vector<Dart> boundary_darts = {})
      : rotation_(std::move(rotation)), twin_(std::move(twin)) {
    const int n = static_cast<int>(twin_.size());
    if (n == 0) throw ValidationError("ribbon graph has no edges");
    if (n % 2 != 0) throw ValidationError("odd number of half-edges");
    for (int h = 0; h < n; ++h) {
      int t = twin_[h];
      if (t < 0 || t >= n) throw ValidationError("twin out of range");
      if (t == h) throw ValidationError("pairing has a fixed point at half-edge " + std::to_string(h));
      if (twin_[t] != h) throw ValidationError("pairing is not an involution");
    }
    vertex_.assign(n, -1);
    next_.assign(n, -1);
    prev_.assign(n, -1);
    for (int v = 0; v < static_cast<int>(rotation_.size()); ++v) {
      const auto& r = rotation_[v];
      if (r.empty()) throw ValidationError("vertex " + std::to_string(v) + " has no half-edges");
      for (std::size_t i = 0; i < r.size(); ++i) {
        Dart h = r[i];
        if (h < 0 || h >= n) throw ValidationError("rotation lists unknown half-edge");
        if (vertex_[h] != -1) throw ValidationError("half-edge " + std::to_string(h) + " appears twice in rotation");
        vertex_[h] = v;
        next_[h] = r[(i + 1) % r.size()];
        prev_[r[(i + 1) % r.size()]] = h;
      }
    }
    for (int h = 0; h < n; ++h)
      if (vertex_[h] == -1) throw ValidationError("half-edge " + std::to_string(h) + " missing from rotation");

    detail::UnionFind uf(rotation_.size());
    for (int h = 0; h < n; ++h) uf.unite(vertex_[h], vertex_[twin_[h]]);
    if (uf.components() != 1) throw ValidationError("underlying graph is disconnected");

    edge_.assign(n, -1);
    for (int h = 0; h < n; ++h)
      if (h < twin_[h]) {
        edge_[h] = edge_[twin_[h]] = static_cast<int>(edge_dart_.size());
        edge_dart_.push_back(h);
      }

    face_of_.assign(n, -1);
    for (int h = 0; h < n; ++h) {
      if (face_of_[h] != -1) continue;
      std::vector<Dart> f;
      for (int x = h; face_of_[x] == -1; x = face_next(x)) {
        face_of_[x] = static_cast<int>(faces_.size());
        f.push_back(x);
      }
      faces_.push_back(ClosedWalk{std::move(f)});
    }
    boundary_.assign(faces_.size(), false);
    for (Dart h : boundary_darts) {
      if (h < 0 || h >= n) throw ValidationError("boundary mark names unknown half-edge");
      boundary_[face_of_[h]] = true;
    }
  }

  int num_vertices() const { return static_cast<int>(rotation_.size()); }
  int num_edges() const { return static_cast<int>(edge_dart_.size()); }
  int num_darts() const { return static_cast<int>(twin_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }

  Dart twin(Dart h) const { return twin_.at(h); }
  int vertex(Dart h) const { return vertex_.at(h); }
  int head(Dart h) const { return vertex_[twin_.at(h)]; }
  Dart rot_next(Dart h) const { return next_.at(h); }
  Dart rot_prev(Dart h) const { return prev_.at(h); }
  Dart face_next(Dart h) const { return prev_[twin_.at(h)]; }

  /// Edge index; edges are numbered by their smaller dart.
  int edge(Dart h) const { return edge_.at(h); }
  /// +1 when h runs along the edge's positive direction (it is the smaller dart), else -1.
  int edge_sign(Dart h) const { return h < twin_.at(h) ? 1 : -1; }
  Dart edge_dart(int e) const { return edge_dart_.at(e); }

  const std::vector<std::vector<Dart>>& rotation() const { return rotation_; }
  const std::vector<Dart>& twins() const { return twin_; }

  /// All face walks, each starting at its smallest dart, sorted by that dart.
  const std::vector<ClosedWalk>& faces() const { return faces_; }
  int face_of(Dart h) const { return face_of_.at(h); }
  bool is_boundary_face(int f) const { return boundary_.at(f); }
  int boundary_count() const { return static_cast<int>(std::count(boundary_.begin(), boundary_.end(), true)); }

  std::vector<int> boundary_faces() const {
    std::vector<int> out;
    for (int f = 0; f < num_faces(); ++f)
      if (boundary_[f]) out.push_back(f);
    return out;
  }
  std::vector<int> interior_faces() const {
    std::vector<int> out;
    for (int f = 0; f < num_faces(); ++f)
      if (!boundary_[f]) out.push_back(f);
    return out;
  }

  /// Same graph with every face treated as interior (boundary components capped by disks).
  RibbonGraph capped() const { return RibbonGraph(rotation_, twin_); }

  /// Same graph with the given faces marked as boundary.
  RibbonGraph with_boundary_faces(const std::vector<int>& faces) const {
    std::vector<Dart> marks;
    for (int f : faces) marks.push_back(faces_.at(f).darts.front());
    return RibbonGraph(rotation_, twin_, marks);
  }

  friend bool operator==(const RibbonGraph& a, const RibbonGraph& b) {
    return a.rotation_ == b.rotation_ && a.twin_ == b.twin_ && a.boundary_ == b.boundary_;
  }

 private:
  std::vector<std::vector<Dart>> rotation_;
  std::vector<Dart> twin_;
  std::vector<int> vertex_;
  std::vector<Dart> next_, prev_;
  std::vector<int> edge_;
  std::vector<Dart> edge_dart_;
  std::vector<ClosedWalk> faces_;
  std::vector<int> face_of_;
  std::vector<bool> boundary_;
};

inline std::vector<ClosedWalk> trace_faces(const RibbonGraph& R) { return R.faces(); }

inline SurfaceInvariants surface_invariants(const RibbonGraph& R) {
  SurfaceInvariants s;
  s.V = R.num_vertices();
  s.E = R.num_edges();
  s.boundary_count = R.boundary_count();
  s.F = R.num_faces() - s.boundary_count;
  s.euler_char = s.V - s.E + s.F;
  int twice_genus = 2 - s.boundary_count - s.euler_char;
  if (twice_genus < 0 || twice_genus % 2 != 0) throw ConsistencyError("Euler characteristic has the wrong parity");
  s.genus = twice_genus / 2;
  s.orientable = true;
  return s;
}

/// Checks a walk against R. Face walks may repeat edges, so edge simplicity is optional.
inline void validate_walk(const RibbonGraph& R, const ClosedWalk& w, bool edge_simple = true) {
  if (w.empty()) throw ValidationError("closed walk is empty");
  const std::size_t n = w.size();
  for (Dart h : w.darts)
    if (h < 0 || h >= R.num_darts()) throw ValidationError("walk uses unknown half-edge " + std::to_string(h));
  std::set<int> used;
  for (std::size_t i = 0; i < n; ++i) {
    Dart a = w.darts[i], b = w.darts[(i + 1) % n];
    if (R.head(a) != R.vertex(b)) throw ValidationError("walk is not head-to-tail at position " + std::to_string(i));
    if (n > 1 && b == R.twin(a)) throw ValidationError("walk reverses immediately at position " + std::to_string(i));
    if (edge_simple && !used.insert(R.edge(a)).second)
      throw ValidationError("walk uses edge " + std::to_string(R.edge(a)) + " twice");
  }
}

/// Number of components of the surface cut along the walks. Faces are merged across every edge the
/// system does not use.
inline int complement_components(const RibbonGraph& R, const std::vector<ClosedWalk>& system) {
  std::vector<bool> cut(R.num_edges(), false);
  for (const auto& w : system) {
    validate_walk(R, w);
    for (Dart h : w.darts) {
      if (cut[R.edge(h)]) throw ValidationError("walks in a curve system must be edge-disjoint");
      cut[R.edge(h)] = true;
    }
  }
  detail::UnionFind uf(R.num_faces());
  for (int e = 0; e < R.num_edges(); ++e) {
    if (cut[e]) continue;
    Dart h = R.edge_dart(e);
    uf.unite(R.face_of(h), R.face_of(R.twin(h)));
  }
  return uf.components();
}

// ---------------------------------------------------------------------------
// Gluing words

struct Side {
  std::string label;
  bool inverse = false;
  friend bool operator==(const Side&, const Side&) = default;
};

/// One polygon: sides in counterclockwise order, label k paired with k'.
struct GluingWord {
  std::vector<Side> sides;

  static GluingWord parse(const std::string& text) {
    GluingWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
      Side s;
      while (!tok.empty() && tok.back() == '\'') {
        if (s.inverse) throw ValidationError("side token '" + tok + "' has more than one prime");
        s.inverse = true;
        tok.pop_back();
      }
      if (tok.empty()) throw ValidationError("empty side label");
      s.label = tok;
      w.sides.push_back(s);
    }
    return w;
  }

  std::string str() const {
    std::string out;
    for (const auto& s : sides) {
      if (!out.empty()) out += ' ';
      out += s.label + (s.inverse ? "'" : "");
    }
    return out;
  }
};

/// Surface glued from one or more polygons, with side labels mapped to edges.
struct GluedSurface {
  RibbonGraph ribbon;
  std::vector<std::string> edge_labels;  // label of edge e (edge e has darts 2e, 2e+1)

  int edge_of_label(const std::string& label) const {
    auto it = std::find(edge_labels.begin(), edge_labels.end(), label);
    if (it == edge_labels.end()) throw ValidationError("unknown side label '" + label + "'");
    return static_cast<int>(it - edge_labels.begin());
  }
  /// "k" is the side read in its own direction, "k'" the reverse.
  Dart dart(const std::string& token) const {
    Side s = GluingWord::parse(token).sides.at(0);
    return 2 * edge_of_label(s.label) + (s.inverse ? 1 : 0);
  }
  ClosedWalk walk(const std::string& tokens) const {
    ClosedWalk w;
    for (const auto& s : GluingWord::parse(tokens).sides) w.darts.push_back(2 * edge_of_label(s.label) + (s.inverse ? 1 : 0));
    validate_walk(ribbon, w);
    return w;
  }
};

/// Identifies paired sides of the polygons orientably. Each polygon interior becomes one face.
inline GluedSurface glue_polygons(const std::vector<GluingWord>& polygons) {
  GluedSurface out;
  std::map<std::string, std::pair<int, int>> seen;  // label -> (unprimed count, primed count)
  for (const auto& p : polygons) {
    if (p.sides.empty()) throw ValidationError("polygon with no sides");
    for (const auto& s : p.sides) {
      auto& c = seen[s.label];
      if (c.first + c.second == 0) out.edge_labels.push_back(s.label);
      (s.inverse ? c.second : c.first)++;
    }
  }
  for (const auto& [label, c] : seen) {
    if (c.first + c.second != 2)
      throw ValidationError("label '" + label + "' occurs " + std::to_string(c.first + c.second) + " times, expected 2");
    if (c.first != 1)
      throw ValidationError("label '" + label + "' must occur once plain and once primed (orientable gluing)");
  }
  const int n = 2 * static_cast<int>(out.edge_labels.size());
  std::map<std::string, int> eid;
  for (int e = 0; e < n / 2; ++e) eid[out.edge_labels[e]] = e;
  std::vector<Dart> twin(n), next(n, -1);
  for (int h = 0; h < n; ++h) twin[h] = h ^ 1;
  for (const auto& p : polygons) {
    std::vector<Dart> d;
    for (const auto& s : p.sides) d.push_back(2 * eid[s.label] + (s.inverse ? 1 : 0));
    // The corner between sides i and i+1: rotating counterclockwise from d[i+1] reaches twin(d[i]).
    for (std::size_t i = 0; i < d.size(); ++i) next[d[(i + 1) % d.size()]] = twin[d[i]];
  }
  std::vector<std::vector<Dart>> rotation;
  std::vector<bool> done(n, false);
  for (Dart h = 0; h < n; ++h) {
    if (done[h]) continue;
    std::vector<Dart> orbit;
    for (Dart x = h; !done[x]; x = next[x]) {
      done[x] = true;
      orbit.push_back(x);
    }
    rotation.push_back(std::move(orbit));
  }
  out.ribbon = RibbonGraph(std::move(rotation), std::move(twin));
  return out;
}

inline RibbonGraph schema_to_ribbon(const GluingWord& word) {
  if (word.sides.empty() || word.sides.size() % 2 != 0) throw ValidationError("gluing word must be nonempty of even length");
  return glue_polygons({word}).ribbon;
}

// ---------------------------------------------------------------------------
// JSON surface format

inline nlohmann::json ribbon_to_json(const RibbonGraph& R) {
  nlohmann::json j;
  std::vector<int> verts(R.num_vertices());
  std::iota(verts.begin(), verts.end(), 0);
  j["vertices"] = verts;
  j["half_edges"] = nlohmann::json::array();
  for (Dart h = 0; h < R.num_darts(); ++h)
    j["half_edges"].push_back({{"id", h}, {"vertex", R.vertex(h)}, {"twin", R.twin(h)}});
  j["rotation"] = R.rotation();
  j["boundary_faces"] = nlohmann::json::array();
  for (int f : R.boundary_faces()) j["boundary_faces"].push_back(R.faces()[f].darts);
  return j;
}

inline RibbonGraph ribbon_from_json(const nlohmann::json& j) {
  try {
    const auto& he = j.at("half_edges");
    const std::size_t n = he.size();
    std::vector<Dart> twin(n, -1);
    std::vector<int> vert(n, -1);
    for (const auto& h : he) {
      int id = h.at("id").get<int>();
      if (id < 0 || static_cast<std::size_t>(id) >= n || twin[id] != -1)
        throw ValidationError("half-edge ids must be 0..n-1 without repeats");
      twin[id] = h.at("twin").get<int>();
      vert[id] = h.at("vertex").get<int>();
    }
    auto rotation = j.at("rotation").get<std::vector<std::vector<Dart>>>();
    if (j.contains("vertices") && j.at("vertices").size() != rotation.size())
      throw ValidationError("vertex list and rotation disagree in size");
    for (std::size_t v = 0; v < rotation.size(); ++v)
      for (Dart h : rotation[v])
        if (h < 0 || static_cast<std::size_t>(h) >= n || vert[h] != static_cast<int>(v))
          throw ValidationError("rotation of vertex " + std::to_string(v) + " disagrees with half-edge vertices");
    std::vector<Dart> marks;
    if (j.contains("boundary_faces"))
      for (const auto& f : j.at("boundary_faces")) {
        if (f.is_array()) {
          if (f.empty()) throw ValidationError("empty boundary face");
          marks.push_back(f.front().get<int>());
        } else {
          marks.push_back(f.get<int>());
        }
      }
    RibbonGraph R(std::move(rotation), std::move(twin), marks);
    if (j.contains("boundary_faces"))
      for (const auto& f : j.at("boundary_faces"))
        if (f.is_array()) {
          auto darts = f.get<std::vector<Dart>>();
          const auto& face = R.faces()[R.face_of(darts.front())].darts;
          if (darts.size() != face.size()) throw ValidationError("boundary face walk does not match a face");
          for (std::size_t i = 0; i + 1 < darts.size(); ++i)
            if (R.face_next(darts[i]) != darts[i + 1]) throw ValidationError("boundary face walk does not match a face");
        }
    return R;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed surface JSON: ") + e.what());
  }
}

}  // namespace surfhom
