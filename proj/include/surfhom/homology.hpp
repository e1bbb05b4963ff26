#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfhom/checked.hpp"
#include "surfhom/error.hpp"
#include "surfhom/int_matrix.hpp"
#include "surfhom/ribbon_graph.hpp"
#include "surfhom/zlattice.hpp"

namespace surfhom {

/// Integer 1-chain: one coefficient per edge, positive along the edge's smaller dart.
using Chain = IntVector;

inline Chain walk_chain(const RibbonGraph& R, const ClosedWalk& w) {
  Chain c(R.num_edges(), 0);
  for (Dart h : w.darts) c[R.edge(h)] = checked::add(c[R.edge(h)], R.edge_sign(h));
  return c;
}

inline Chain face_chain(const RibbonGraph& R, int f) { return walk_chain(R, R.faces().at(f)); }

/// sum of k_i * c_i
inline Chain combine(const std::vector<std::pair<std::int64_t, Chain>>& terms) {
  if (terms.empty()) throw ValidationError("combine: no terms");
  Chain out(terms.front().second.size(), 0);
  for (const auto& [k, c] : terms) {
    if (c.size() != out.size()) throw ValidationError("combine: chain length mismatch");
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = checked::add(out[i], checked::mul(k, c[i]));
  }
  return out;
}

struct ChainComplex {
  IntMatrix d1;  // V x E
  IntMatrix d2;  // E x F (interior faces only)
};

inline ChainComplex chain_complex(const RibbonGraph& R) {
  ChainComplex c{IntMatrix(R.num_vertices(), R.num_edges()), IntMatrix(R.num_edges(), 0)};
  for (int e = 0; e < R.num_edges(); ++e) {
    Dart h = R.edge_dart(e);
    c.d1(R.head(h), e) += 1;
    c.d1(R.vertex(h), e) -= 1;
  }
  auto interior = R.interior_faces();
  c.d2 = IntMatrix(R.num_edges(), interior.size());
  for (std::size_t k = 0; k < interior.size(); ++k) {
    Chain f = face_chain(R, interior[k]);
    for (int e = 0; e < R.num_edges(); ++e) c.d2(e, k) = f[e];
  }
  return c;
}

/// Rank of H_1 over Q (modulus 0) or Z/p, from the cellular complex of R.
inline std::size_t homology_rank(const RibbonGraph& R, Modulus mod = {}) {
  ChainComplex c = chain_complex(R);
  return static_cast<std::size_t>(R.num_edges()) - rank(c.d1, mod) - rank(c.d2, mod);
}

inline bool is_cycle(const RibbonGraph& R, const Chain& c) {
  if (c.size() != static_cast<std::size_t>(R.num_edges())) return false;
  std::vector<std::int64_t> bd(R.num_vertices(), 0);
  for (int e = 0; e < R.num_edges(); ++e) {
    Dart h = R.edge_dart(e);
    bd[R.head(h)] = checked::add(bd[R.head(h)], c[e]);
    bd[R.vertex(h)] = checked::sub(bd[R.vertex(h)], c[e]);
  }
  for (auto x : bd)
    if (x != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Intersection pairing

/// Algebraic intersection of two integer 1-cycles. b is pushed off to its left; at each vertex every
/// pass of b (arriving dart, leaving dart) picks up the coefficients of a on the darts strictly
/// between them counterclockwise.
inline std::int64_t intersection_number(const RibbonGraph& R, const Chain& a, const Chain& b) {
  if (!is_cycle(R, a) || !is_cycle(R, b)) throw ValidationError("intersection_number: arguments must be cycles");
  std::vector<std::vector<Dart>> ins(R.num_vertices()), outs(R.num_vertices());
  for (int e = 0; e < R.num_edges(); ++e) {
    Dart h = b[e] > 0 ? R.edge_dart(e) : R.twin(R.edge_dart(e));
    for (std::int64_t k = 0; k < checked::abs(b[e]); ++k) {
      outs[R.vertex(h)].push_back(h);
      ins[R.head(h)].push_back(R.twin(h));
    }
  }
  auto a_out = [&](Dart h) { return R.edge_sign(h) > 0 ? a[R.edge(h)] : checked::neg(a[R.edge(h)]); };
  std::int64_t total = 0;
  for (int v = 0; v < R.num_vertices(); ++v)
    for (std::size_t i = 0; i < outs[v].size(); ++i)
      for (Dart x = R.rot_next(outs[v][i]); x != ins[v][i]; x = R.rot_next(x)) total = checked::sub(total, a_out(x));
  return total;
}

/// Signed crossing count of two edge-disjoint walks from the local rotation at shared vertices.
/// At a pass of w1 its left side is the counterclockwise arc from the leaving dart to the arriving one;
/// a pass of w2 entering from the right and leaving to the left counts +1, the reverse -1.
inline std::int64_t algebraic_intersection(const RibbonGraph& R, const ClosedWalk& w1, const ClosedWalk& w2) {
  validate_walk(R, w1);
  validate_walk(R, w2);
  std::vector<bool> used(R.num_edges(), false);
  for (Dart h : w1.darts) used[R.edge(h)] = true;
  for (Dart h : w2.darts)
    if (used[R.edge(h)]) throw ValidationError("algebraic_intersection: walks share an edge");
  struct Pass {
    Dart in, out;
  };
  auto passes = [&](const ClosedWalk& w) {
    std::vector<std::vector<Pass>> p(R.num_vertices());
    for (std::size_t i = 0; i < w.size(); ++i) {
      Dart arrive = w.darts[i], leave = w.darts[(i + 1) % w.size()];
      p[R.vertex(leave)].push_back({R.twin(arrive), leave});
    }
    return p;
  };
  auto p1 = passes(w1), p2 = passes(w2);
  std::int64_t total = 0;
  for (int v = 0; v < R.num_vertices(); ++v) {
    if (p1[v].empty() || p2[v].empty()) continue;
    const auto& rot = R.rotation()[v];
    std::map<Dart, std::size_t> pos;
    for (std::size_t i = 0; i < rot.size(); ++i) pos[rot[i]] = i;
    const std::size_t n = rot.size();
    for (const auto& a : p1[v]) {
      auto on_left = [&](Dart x) {
        std::size_t off = (pos[x] + n - pos[a.out]) % n, span = (pos[a.in] + n - pos[a.out]) % n;
        return off > 0 && off < span;
      };
      for (const auto& b : p2[v]) {
        bool in_left = on_left(b.in), out_left = on_left(b.out);
        if (out_left && !in_left) ++total;
        if (in_left && !out_left) --total;
      }
    }
  }
  return total;
}

inline IntMatrix gram_matrix(const RibbonGraph& R, const std::vector<Chain>& chains) {
  IntMatrix G(chains.size(), chains.size());
  for (std::size_t i = 0; i < chains.size(); ++i)
    for (std::size_t j = i + 1; j < chains.size(); ++j) {
      G(i, j) = intersection_number(R, chains[i], chains[j]);
      G(j, i) = checked::neg(G(i, j));
    }
  return G;
}

// ---------------------------------------------------------------------------
// Bases and classes

struct BasisElement {
  std::string name;
  Chain chain;
  std::optional<ClosedWalk> walk;  // set when the element is a single closed walk
};

/// 2g cycles on a closed surface forming a basis of H_1(S; Z), checked through the intersection form.
class ReferenceBasis {
 public:
  ReferenceBasis() = default;
  ReferenceBasis(std::string name, const RibbonGraph& R, std::vector<BasisElement> elements)
      : name_(std::move(name)), surface_(R.capped()), elements_(std::move(elements)) {
    const int g = surface_invariants(surface_).genus;
    if (elements_.size() != static_cast<std::size_t>(2 * g))
      throw ValidationError("reference basis needs " + std::to_string(2 * g) + " classes, got " +
                            std::to_string(elements_.size()));
    std::vector<Chain> chains;
    for (const auto& e : elements_) {
      if (e.walk) validate_walk(surface_, *e.walk);
      if (!is_cycle(surface_, e.chain)) throw ValidationError("basis element '" + e.name + "' is not a cycle");
      chains.push_back(e.chain);
    }
    gram_ = gram_matrix(surface_, chains);
    if (g > 0 && checked::abs(det_int(gram_)) != 1)
      throw ValidationError("reference basis '" + name_ + "' is not a basis (intersection form not unimodular)");
    relations_ = IntMatrix::from_rows(chains, surface_.num_edges());
    for (int f = 0; f < surface_.num_faces(); ++f) relations_ = relations_.with_row(face_chain(surface_, f));
  }

  const std::string& name() const { return name_; }
  const RibbonGraph& surface() const { return surface_; }
  const std::vector<BasisElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const IntMatrix& intersection_matrix() const { return gram_; }
  std::vector<Chain> chains() const {
    std::vector<Chain> out;
    for (const auto& e : elements_) out.push_back(e.chain);
    return out;
  }
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& e : elements_) out.push_back(e.name);
    return out;
  }

  /// Coordinates of a cycle: the unique c with chain = sum c_i b_i + (face boundaries).
  IntVector coordinates(const Chain& chain) const {
    if (!is_cycle(surface_, chain)) throw ValidationError("class requested for a chain that is not a cycle");
    SpanResult r = in_span(relations_, chain);
    if (!r.member) throw ConsistencyError("cycle lies outside the span of basis '" + name_ + "'");
    return IntVector(r.witness.begin(), r.witness.begin() + static_cast<std::ptrdiff_t>(elements_.size()));
  }

 private:
  std::string name_;
  RibbonGraph surface_;
  std::vector<BasisElement> elements_;
  IntMatrix gram_;
  IntMatrix relations_;
};

struct HomologyClass {
  IntVector coords;
  Modulus modulus;
  std::string basis;
  friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
};

inline void to_json(nlohmann::json& j, const HomologyClass& c) {
  j = {{"basis", c.basis}, {"modulus", c.modulus.value()}, {"coords", c.coords}};
}

inline HomologyClass class_of_chain(const Chain& chain, const ReferenceBasis& basis, Modulus mod = {}) {
  HomologyClass c{basis.coordinates(chain), mod, basis.name()};
  if (!mod.is_integers())
    for (auto& x : c.coords) x = checked::mod(x, mod.value());
  return c;
}

inline void require_same_surface(const RibbonGraph& R, const ReferenceBasis& basis) {
  if (R.rotation() != basis.surface().rotation() || R.twins() != basis.surface().twins())
    throw ValidationError("walk and reference basis live on different surfaces");
}

inline HomologyClass class_of_walk(const RibbonGraph& R, const ClosedWalk& w, const ReferenceBasis& basis,
                                   Modulus mod = {}) {
  require_same_surface(R, basis);
  validate_walk(R, w, false);
  return class_of_chain(walk_chain(R, w), basis, mod);
}

/// Same coordinates computed from intersection numbers against the basis (independent route).
inline IntVector coordinates_by_pairing(const Chain& chain, const ReferenceBasis& basis) {
  IntVector x;
  for (const auto& e : basis.elements()) x.push_back(intersection_number(basis.surface(), chain, e.chain));
  // x_j = sum_i c_i G_ij, so c solves c * G = x.
  SpanResult r = in_span(basis.intersection_matrix(), x);
  if (!r.member) throw ConsistencyError("intersection form is not unimodular");
  return r.witness;
}

// ---------------------------------------------------------------------------
// Trees and cotrees

struct SpanningTree {
  std::vector<Dart> parent_dart;  // dart from the parent into v; -1 at the root
  std::vector<int> depth;
  std::vector<bool> in_tree;      // per edge
  bool spanning = false;
};

/// BFS tree from vertex 0 using only the allowed edges, darts taken in rotation order.
inline SpanningTree spanning_tree(const RibbonGraph& R, const std::vector<bool>& allowed) {
  SpanningTree t{std::vector<Dart>(R.num_vertices(), -1), std::vector<int>(R.num_vertices(), -1),
                 std::vector<bool>(R.num_edges(), false), false};
  std::deque<int> queue{0};
  t.depth[0] = 0;
  int reached = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (Dart h : R.rotation()[v]) {
      if (!allowed[R.edge(h)]) continue;
      int u = R.head(h);
      if (t.depth[u] != -1) continue;
      t.depth[u] = t.depth[v] + 1;
      t.parent_dart[u] = h;
      t.in_tree[R.edge(h)] = true;
      ++reached;
      queue.push_back(u);
    }
  }
  t.spanning = reached == R.num_vertices();
  return t;
}

/// The cycle formed by dart h and the tree path from head(h) back to vertex(h).
inline ClosedWalk fundamental_cycle(const RibbonGraph& R, const SpanningTree& t, Dart h) {
  int a = R.vertex(h), b = R.head(h);
  std::vector<Dart> up, down;  // up: b towards the common ancestor; down: ancestor towards a (reversed)
  while (a != b) {
    if (t.depth[b] >= t.depth[a]) {
      Dart p = t.parent_dart[b];
      up.push_back(R.twin(p));
      b = R.vertex(p);
    } else {
      Dart p = t.parent_dart[a];
      down.push_back(p);
      a = R.vertex(p);
    }
  }
  ClosedWalk w{{h}};
  w.darts.insert(w.darts.end(), up.begin(), up.end());
  w.darts.insert(w.darts.end(), down.rbegin(), down.rend());
  return w;
}

/// Edges whose removal keeps the faces connected: BFS tree over faces across allowed edges.
inline std::vector<bool> dual_spanning_tree(const RibbonGraph& R, const std::vector<bool>& allowed, bool* spanning) {
  std::vector<bool> in_tree(R.num_edges(), false), seen(R.num_faces(), false);
  std::deque<int> queue{0};
  seen[0] = true;
  int reached = 1;
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop_front();
    for (Dart h : R.faces()[f].darts) {
      int e = R.edge(h);
      int g = R.face_of(R.twin(h));
      if (!allowed[e] || seen[g]) continue;
      seen[g] = true;
      in_tree[e] = true;
      ++reached;
      queue.push_back(g);
    }
  }
  if (spanning) *spanning = reached == R.num_faces();
  return in_tree;
}

/// Tree-cotree decomposition of the capped surface: the 2g leftover edges give fundamental cycles
/// that form a basis of H_1.
inline std::vector<ClosedWalk> cotree_basis(const RibbonGraph& surface) {
  RibbonGraph R = surface.capped();
  SpanningTree t = spanning_tree(R, std::vector<bool>(R.num_edges(), true));
  std::vector<bool> off_tree(R.num_edges());
  for (int e = 0; e < R.num_edges(); ++e) off_tree[e] = !t.in_tree[e];
  std::vector<bool> cotree = dual_spanning_tree(R, off_tree, nullptr);
  std::vector<ClosedWalk> out;
  for (int e = 0; e < R.num_edges(); ++e)
    if (!t.in_tree[e] && !cotree[e]) out.push_back(fundamental_cycle(R, t, R.edge_dart(e)));
  return out;
}

inline ReferenceBasis cotree_reference_basis(const RibbonGraph& surface) {
  RibbonGraph R = surface.capped();
  std::vector<BasisElement> els;
  int k = 0;
  for (auto& w : cotree_basis(R)) els.push_back({"c" + std::to_string(++k), walk_chain(R, w), w});
  return ReferenceBasis("cotree", R, std::move(els));
}

/// Integer symplectic Gram-Schmidt on the cotree basis. Output pairs (a_i, b_i) with <a_i, b_i> = 1
/// and all other pairings zero.
inline ReferenceBasis symplectic_basis(const RibbonGraph& surface) {
  RibbonGraph R = surface.capped();
  std::vector<ClosedWalk> walks = cotree_basis(R);
  std::vector<Chain> chains;
  for (const auto& w : walks) chains.push_back(walk_chain(R, w));
  const std::size_t n = chains.size();
  IntMatrix G = gram_matrix(R, chains);
  auto omega = [&](const IntVector& x, const IntVector& y) { return dot(vec_mul(x, G), y); };
  auto axpy = [](IntVector& x, std::int64_t q, const IntVector& y) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = checked::add(x[i], checked::mul(q, y[i]));
  };
  std::vector<IntVector> pool;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    pool.push_back(e);
  }
  std::vector<IntVector> out;
  while (!pool.empty()) {
    IntVector e = pool.front();
    pool.erase(pool.begin());
    // Euclid on the values omega(e, x) until a single pool member pairs nontrivially with e.
    for (;;) {
      std::size_t best = pool.size();
      for (std::size_t j = 0; j < pool.size(); ++j) {
        std::int64_t v = omega(e, pool[j]);
        if (v != 0 && (best == pool.size() || checked::abs(v) < checked::abs(omega(e, pool[best])))) best = j;
      }
      if (best == pool.size()) throw ConsistencyError("intersection form is degenerate");
      std::int64_t m = omega(e, pool[best]);
      bool single = true;
      for (std::size_t j = 0; j < pool.size(); ++j) {
        if (j == best) continue;
        std::int64_t v = omega(e, pool[j]);
        if (v == 0) continue;
        axpy(pool[j], checked::neg(checked::floor_div(v, m)), pool[best]);
        if (omega(e, pool[j]) != 0) single = false;
      }
      if (single) {
        if (checked::abs(m) != 1) throw ConsistencyError("intersection form is not unimodular");
        IntVector f = pool[best];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
        if (m < 0)
          for (auto& x : f) x = checked::neg(x);
        for (auto& x : pool) {
          std::int64_t xf = omega(x, f), xe = omega(x, e);
          axpy(x, checked::neg(xf), e);
          axpy(x, xe, f);
        }
        out.push_back(e);
        out.push_back(f);
        break;
      }
    }
  }
  std::vector<BasisElement> els;
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::vector<std::pair<std::int64_t, Chain>> terms;
    std::optional<ClosedWalk> single_walk;
    int nonzero = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (out[k][i] != 0) {
        terms.push_back({out[k][i], chains[i]});
        ++nonzero;
        if (out[k][i] == 1) single_walk = walks[i];
      }
    if (nonzero != 1) single_walk.reset();
    std::string name = (k % 2 == 0 ? "a" : "b") + std::to_string(k / 2 + 1);
    els.push_back({name, combine(terms), single_walk});
  }
  return ReferenceBasis("symplectic", R, std::move(els));
}

/// Completion of a curve system with connected complement to a homology basis, following the
/// spanning-tree construction: a dual tree avoiding the curves, one edge removed from each curve,
/// then a spanning tree of what remains; its leftover edges give the q = 2g - n added cycles.
struct CurveCompletion {
  std::vector<ClosedWalk> curves;
  std::vector<ClosedWalk> added;
  std::size_t n = 0;
  std::size_t q = 0;
};

inline CurveCompletion cotree_completion(const RibbonGraph& surface, const std::vector<ClosedWalk>& curves) {
  RibbonGraph R = surface.capped();
  if (complement_components(R, curves) != 1)
    throw DomainError("cotree_completion: complement of the curve system is disconnected");
  std::vector<bool> on_curve(R.num_edges(), false);
  for (const auto& c : curves)
    for (Dart h : c.darts) on_curve[R.edge(h)] = true;
  std::vector<bool> off_curve(R.num_edges());
  for (int e = 0; e < R.num_edges(); ++e) off_curve[e] = !on_curve[e];
  bool ok = false;
  std::vector<bool> dual = dual_spanning_tree(R, off_curve, &ok);
  if (!ok) throw ConsistencyError("cotree_completion: no dual tree avoiding the curves");
  std::vector<bool> remaining(R.num_edges());
  for (int e = 0; e < R.num_edges(); ++e) remaining[e] = !dual[e];
  for (const auto& c : curves) remaining[R.edge(c.darts.front())] = false;
  SpanningTree t = spanning_tree(R, remaining);
  if (!t.spanning) throw ConsistencyError("cotree_completion: remaining graph is disconnected");
  CurveCompletion out{curves, {}, curves.size(), 0};
  for (int e = 0; e < R.num_edges(); ++e)
    if (remaining[e] && !t.in_tree[e]) out.added.push_back(fundamental_cycle(R, t, R.edge_dart(e)));
  out.q = out.added.size();
  return out;
}

}  // namespace surfhom
