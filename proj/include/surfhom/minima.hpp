#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfhom/error.hpp"
#include "surfhom/homology.hpp"
#include "surfhom/int_matrix.hpp"
#include "surfhom/rational.hpp"
#include "surfhom/ribbon_graph.hpp"
#include "surfhom/zlattice.hpp"

namespace surfhom {

struct WeightedGraph {
  RibbonGraph ribbon;
  std::vector<Rational> edge_length;

  WeightedGraph() = default;
  WeightedGraph(RibbonGraph r, std::vector<Rational> lengths) : ribbon(std::move(r)), edge_length(std::move(lengths)) {
    if (edge_length.size() != static_cast<std::size_t>(ribbon.num_edges()))
      throw ValidationError("one length per edge required");
    for (const auto& l : edge_length)
      if (l <= Rational(0)) throw ValidationError("edge lengths must be positive");
  }

  static WeightedGraph unit(const RibbonGraph& r) {
    return WeightedGraph(r, std::vector<Rational>(r.num_edges(), Rational(1)));
  }

  Rational length(const ClosedWalk& w) const {
    Rational s(0);
    for (Dart h : w.darts) s += edge_length.at(ribbon.edge(h));
    return s;
  }
};

struct WeightedCycle {
  ClosedWalk walk;
  Rational length;
  IntVector cls;      // coordinates in some reference basis; empty until attached
  std::string label;  // optional name
};

/// Name of a cycle for reports: its label, else its dart sequence.
inline std::string cycle_name(const WeightedCycle& c) {
  if (!c.label.empty()) return c.label;
  std::string s = "[";
  for (std::size_t i = 0; i < c.walk.size(); ++i) s += (i ? " " : "") + std::to_string(c.walk.darts[i]);
  return s + "]";
}

/// All edge-simple closed walks without immediate reversal of length <= bound, one representative per
/// rotation and reflection class, sorted by (length, dart sequence). The representative starts with
/// the smallest dart it uses, which is the positive dart of its smallest edge.
inline std::vector<WeightedCycle> enumerate_cycles(const WeightedGraph& G, const Rational& bound) {
  if (bound <= Rational(0)) throw DomainError("enumerate_cycles: bound must be positive");
  const RibbonGraph& R = G.ribbon;
  std::vector<WeightedCycle> out;
  std::vector<bool> used(R.num_edges(), false);
  std::vector<Dart> path;
  std::function<void(Dart, const Rational&)> extend = [&](Dart d0, const Rational& len) {
    Dart last = path.back();
    int v = R.head(last);
    for (Dart x : R.rotation()[v]) {
      if (x == R.twin(last) || used[R.edge(x)]) continue;
      if (std::min(x, R.twin(x)) < d0) continue;
      Rational nl = len + G.edge_length[R.edge(x)];
      if (nl > bound) continue;
      path.push_back(x);
      used[R.edge(x)] = true;
      if (R.head(x) == R.vertex(d0)) out.push_back({ClosedWalk{path}, nl, {}, {}});
      extend(d0, nl);
      used[R.edge(x)] = false;
      path.pop_back();
    }
  };
  for (int e = 0; e < R.num_edges(); ++e) {
    Dart d0 = R.edge_dart(e);
    Rational len = G.edge_length[e];
    if (len > bound) continue;
    path = {d0};
    used[e] = true;
    if (R.head(d0) == R.vertex(d0)) out.push_back({ClosedWalk{path}, len, {}, {}});
    extend(d0, len);
    used[e] = false;
  }
  std::sort(out.begin(), out.end(), [](const WeightedCycle& a, const WeightedCycle& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.walk.darts < b.walk.darts;
  });
  return out;
}

/// Rotation/reflection-invariant key of a walk, equal to the enumeration representative.
inline std::vector<Dart> canonical_walk(const RibbonGraph& R, const ClosedWalk& w) {
  std::vector<std::vector<Dart>> variants;
  std::vector<Dart> rev;
  for (auto it = w.darts.rbegin(); it != w.darts.rend(); ++it) rev.push_back(R.twin(*it));
  for (const std::vector<Dart>* seq : {&w.darts, static_cast<const std::vector<Dart>*>(&rev)})
    for (std::size_t s = 0; s < seq->size(); ++s) {
      std::vector<Dart> v(seq->begin() + static_cast<std::ptrdiff_t>(s), seq->end());
      v.insert(v.end(), seq->begin(), seq->begin() + static_cast<std::ptrdiff_t>(s));
      variants.push_back(v);
    }
  return *std::min_element(variants.begin(), variants.end());
}

inline void attach_classes(std::vector<WeightedCycle>& cycles, const ReferenceBasis& basis) {
  for (auto& c : cycles) c.cls = basis.coordinates(walk_chain(basis.surface(), c.walk));
}

/// Labels cycles that match the given named walks up to rotation and reflection.
inline void label_cycles(std::vector<WeightedCycle>& cycles, const RibbonGraph& R,
                         const std::vector<std::pair<std::string, ClosedWalk>>& named) {
  for (auto& c : cycles) {
    auto key = canonical_walk(R, c.walk);
    for (const auto& [name, w] : named)
      if (canonical_walk(R, w) == key) c.label = name;
  }
}

// ---------------------------------------------------------------------------
// Successive minima

enum class Decision { selected, rejected };

enum class Reason { independent, span_dependent, extendable, not_extendable };

inline const char* to_string(Reason r) {
  switch (r) {
    case Reason::independent: return "independent";
    case Reason::span_dependent: return "span-dependent";
    case Reason::extendable: return "extendable";
    case Reason::not_extendable: return "not-extendable";
  }
  return "?";
}

struct TraceEvent {
  std::size_t candidate = 0;
  std::string cycle;
  Rational length;
  Decision decision = Decision::rejected;
  Reason reason = Reason::independent;
  bool tie = false;  // another candidate has the same length; order fixed by the dart sequence
};

struct MinimaTrace {
  std::string procedure;
  Modulus modulus;
  std::vector<TraceEvent> events;
  std::vector<std::size_t> selected;  // candidate indices in selection order
  std::string halting;                // "target-reached" or "candidates-exhausted"
  bool complete = false;
};

inline nlohmann::json trace_to_json(const MinimaTrace& t) {
  nlohmann::json j;
  j["procedure"] = t.procedure;
  j["modulus"] = t.modulus.value();
  j["events"] = nlohmann::json::array();
  for (const auto& e : t.events) {
    nlohmann::json ev = {{"cycle", e.cycle},
                         {"length", e.length.str()},
                         {"decision", e.decision == Decision::selected ? "selected" : "rejected"},
                         {"reason", to_string(e.reason)}};
    if (e.tie) ev["tie_break"] = "canonical-order";
    j["events"].push_back(ev);
  }
  j["selected"] = nlohmann::json::array();
  for (auto i : t.selected) j["selected"].push_back(i);
  j["halting"] = t.halting;
  j["complete"] = t.complete;
  return j;
}

namespace detail {

inline bool has_tie(const std::vector<WeightedCycle>& c, std::size_t i) {
  return (i > 0 && c[i - 1].length == c[i].length) || (i + 1 < c.size() && c[i + 1].length == c[i].length);
}

inline IntMatrix class_matrix(const std::vector<WeightedCycle>& c, const std::vector<std::size_t>& idx, std::size_t dim) {
  IntMatrix m(idx.size(), dim);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (c[idx[k]].cls.size() != dim) throw ValidationError("candidate without an attached class");
    for (std::size_t j = 0; j < dim; ++j) m(k, j) = c[idx[k]].cls[j];
  }
  return m;
}

inline void check_sorted(const std::vector<WeightedCycle>& c) {
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i].length < c[i - 1].length) throw ValidationError("candidates must be sorted by length");
}

inline std::size_t class_dim(const std::vector<WeightedCycle>& c) {
  if (c.empty()) return 0;
  std::size_t d = c.front().cls.size();
  if (d == 0) throw ValidationError("candidate without an attached class");
  return d;
}

}  // namespace detail

/// Procedure I: take the next shortest candidate whose class is not in the span of those taken.
inline MinimaTrace successive_minima_I(const std::vector<WeightedCycle>& candidates, Modulus mod, std::size_t m) {
  detail::check_sorted(candidates);
  MinimaTrace t{"I", mod, {}, {}, "candidates-exhausted", false};
  const std::size_t dim = detail::class_dim(candidates);
  for (std::size_t i = 0; i < candidates.size() && t.selected.size() < m; ++i) {
    IntMatrix M = detail::class_matrix(candidates, t.selected, dim);
    bool dependent = in_span(M, candidates[i].cls, mod).member;
    if (!dependent) t.selected.push_back(i);
    t.events.push_back({i, cycle_name(candidates[i]), candidates[i].length,
                        dependent ? Decision::rejected : Decision::selected,
                        dependent ? Reason::span_dependent : Reason::independent, detail::has_tie(candidates, i)});
  }
  if (t.selected.size() == m) {
    t.halting = "target-reached";
    t.complete = true;
  }
  return t;
}

/// Procedure II: take the next shortest candidate that keeps the selection extendable to a basis.
inline MinimaTrace successive_minima_II(const std::vector<WeightedCycle>& candidates, Modulus mod) {
  detail::check_sorted(candidates);
  MinimaTrace t{"II", mod, {}, {}, "candidates-exhausted", false};
  const std::size_t dim = detail::class_dim(candidates);
  for (std::size_t i = 0; i < candidates.size() && t.selected.size() < dim; ++i) {
    auto trial = t.selected;
    trial.push_back(i);
    bool ok = is_partial_basis(detail::class_matrix(candidates, trial, dim), mod);
    if (ok) t.selected = trial;
    t.events.push_back({i, cycle_name(candidates[i]), candidates[i].length,
                        ok ? Decision::selected : Decision::rejected, ok ? Reason::extendable : Reason::not_extendable,
                        detail::has_tie(candidates, i)});
  }
  if (dim > 0 && t.selected.size() == dim) {
    t.halting = "target-reached";
    t.complete = true;
  }
  return t;
}

inline std::vector<WeightedCycle> pick(const std::vector<WeightedCycle>& c, const std::vector<std::size_t>& idx) {
  std::vector<WeightedCycle> out;
  for (auto i : idx) out.push_back(c.at(i));
  return out;
}

// ---------------------------------------------------------------------------
// Pointwise order on sorted lengths

enum class Order { equal, less, greater, incomparable };

inline const char* to_string(Order o) {
  switch (o) {
    case Order::equal: return "equal";
    case Order::less: return "less";
    case Order::greater: return "greater";
    case Order::incomparable: return "incomparable";
  }
  return "?";
}

inline std::vector<Rational> sorted_lengths(const std::vector<WeightedCycle>& a) {
  std::vector<Rational> l;
  for (const auto& c : a) l.push_back(c.length);
  std::sort(l.begin(), l.end());
  return l;
}

inline Order compare_lengths(const std::vector<Rational>& la, const std::vector<Rational>& lb) {
  if (la.size() != lb.size()) throw ValidationError("compare_bases: bases of different sizes");
  bool some_less = false, some_greater = false;
  for (std::size_t k = 0; k < la.size(); ++k) {
    if (la[k] < lb[k]) some_less = true;
    if (la[k] > lb[k]) some_greater = true;
  }
  if (some_less && some_greater) return Order::incomparable;
  if (some_less) return Order::less;
  if (some_greater) return Order::greater;
  return Order::equal;
}

/// Pointwise comparison of length-sorted bases: less means A <= B everywhere and strictly somewhere.
inline Order compare_bases(const std::vector<WeightedCycle>& A, const std::vector<WeightedCycle>& B) {
  return compare_lengths(sorted_lengths(A), sorted_lengths(B));
}

namespace detail {

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline bool is_full_basis(const IntMatrix& M, Modulus mod) { return M.rows() == M.cols() && is_partial_basis(M, mod); }

}  // namespace detail

struct GlobalMinimality {
  bool minimal = true;
  /// Candidate index sets of bases that are shorter than the input at some sorted position.
  std::vector<std::vector<std::size_t>> witnesses;
};

/// Brute force over all bases among the candidates. The candidates must include every cycle up to
/// the longest basis element.
inline GlobalMinimality is_globally_minimal(const std::vector<WeightedCycle>& basis,
                                            const std::vector<WeightedCycle>& candidates, Modulus mod) {
  const std::size_t dim = detail::class_dim(basis);
  if (basis.size() != dim) throw ValidationError("is_globally_minimal: input is not of size 2g");
  std::vector<Rational> lb = sorted_lengths(basis);
  GlobalMinimality r;
  detail::for_each_subset(candidates.size(), dim, [&](const std::vector<std::size_t>& idx) {
    if (!detail::is_full_basis(detail::class_matrix(candidates, idx, dim), mod)) return;
    std::vector<Rational> lc;
    for (auto i : idx) lc.push_back(candidates[i].length);
    std::sort(lc.begin(), lc.end());
    for (std::size_t k = 0; k < dim; ++k)
      if (lc[k] < lb[k]) {
        r.minimal = false;
        r.witnesses.push_back(idx);
        return;
      }
  });
  return r;
}

/// A basis among the candidates that is smaller or equal every other candidate basis, if one exists.
inline std::optional<std::vector<std::size_t>> has_global_minimum(const std::vector<WeightedCycle>& candidates,
                                                                  Modulus mod) {
  const std::size_t dim = detail::class_dim(candidates);
  std::vector<std::vector<Rational>> bases;
  std::vector<std::vector<std::size_t>> index;
  detail::for_each_subset(candidates.size(), dim, [&](const std::vector<std::size_t>& idx) {
    if (!detail::is_full_basis(detail::class_matrix(candidates, idx, dim), mod)) return;
    std::vector<Rational> l;
    for (auto i : idx) l.push_back(candidates[i].length);
    std::sort(l.begin(), l.end());
    bases.push_back(l);
    index.push_back(idx);
  });
  if (bases.empty()) return std::nullopt;
  // The pointwise minimum over all bases; a global minimum must attain it.
  std::vector<Rational> low = bases.front();
  for (const auto& b : bases)
    for (std::size_t k = 0; k < dim; ++k) low[k] = std::min(low[k], b[k]);
  for (std::size_t i = 0; i < bases.size(); ++i)
    if (bases[i] == low) return index[i];
  return std::nullopt;
}

/// Checks that the procedure I output is pointwise no longer than every independent 2g-subset of the
/// candidates.
inline bool verify_lemma_procI_minimal(const MinimaTrace& trace, const std::vector<WeightedCycle>& candidates) {
  const std::size_t dim = detail::class_dim(candidates);
  if (trace.selected.size() != dim ||
      !detail::is_full_basis(detail::class_matrix(candidates, trace.selected, dim), trace.modulus))
    throw DomainError("verify_lemma_procI_minimal: trace is not a basis");
  std::vector<Rational> lg;
  for (auto i : trace.selected) lg.push_back(candidates[i].length);
  std::sort(lg.begin(), lg.end());
  bool ok = true;
  detail::for_each_subset(candidates.size(), dim, [&](const std::vector<std::size_t>& idx) {
    if (!ok || rank(detail::class_matrix(candidates, idx, dim), trace.modulus) != dim) return;
    std::vector<Rational> ld;
    for (auto i : idx) ld.push_back(candidates[i].length);
    std::sort(ld.begin(), ld.end());
    for (std::size_t k = 0; k < dim; ++k)
      if (lg[k] > ld[k]) ok = false;
  });
  return ok;
}

/// No single exchange of a basis element for a candidate gives a strictly smaller basis.
inline bool is_locally_minimal(const std::vector<std::size_t>& basis, const std::vector<WeightedCycle>& candidates,
                               Modulus mod) {
  const std::size_t dim = detail::class_dim(candidates);
  auto base = pick(candidates, basis);
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (std::find(basis.begin(), basis.end(), c) != basis.end()) continue;
      auto trial = basis;
      trial[k] = c;
      if (!detail::is_full_basis(detail::class_matrix(candidates, trial, dim), mod)) continue;
      if (compare_bases(pick(candidates, trial), base) == Order::less) return false;
    }
  return true;
}

/// Continues procedure I past 2g selections until the selected classes generate H_1 over Z.
inline MinimaTrace generate_by_minima(const std::vector<WeightedCycle>& candidates) {
  detail::check_sorted(candidates);
  MinimaTrace t{"I-generate", Modulus(), {}, {}, "candidates-exhausted", false};
  const std::size_t dim = detail::class_dim(candidates);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    IntMatrix M = detail::class_matrix(candidates, t.selected, dim);
    bool dependent = in_span(M, candidates[i].cls).member;
    if (!dependent) t.selected.push_back(i);
    t.events.push_back({i, cycle_name(candidates[i]), candidates[i].length,
                        dependent ? Decision::rejected : Decision::selected,
                        dependent ? Reason::span_dependent : Reason::independent, detail::has_tie(candidates, i)});
    if (!dependent) {
      auto idx = subgroup_index(detail::class_matrix(candidates, t.selected, dim));
      if (idx && *idx == 1) {
        t.halting = "generates";
        t.complete = true;
        break;
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Straightness

/// Exact all-pairs shortest path lengths over the edge lengths (Floyd-Warshall).
inline std::vector<std::vector<std::optional<Rational>>> all_pairs_distance(const WeightedGraph& G) {
  const int n = G.ribbon.num_vertices();
  std::vector<std::vector<std::optional<Rational>>> d(n, std::vector<std::optional<Rational>>(n));
  for (int v = 0; v < n; ++v) d[v][v] = Rational(0);
  for (int e = 0; e < G.ribbon.num_edges(); ++e) {
    Dart h = G.ribbon.edge_dart(e);
    int a = G.ribbon.vertex(h), b = G.ribbon.head(h);
    if (a == b) continue;
    if (!d[a][b] || G.edge_length[e] < *d[a][b]) d[a][b] = d[b][a] = G.edge_length[e];
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!d[i][k]) continue;
      for (int j = 0; j < n; ++j) {
        if (!d[k][j]) continue;
        Rational via = *d[i][k] + *d[k][j];
        if (!d[i][j] || via < *d[i][j]) d[i][j] = via;
      }
    }
  return d;
}

/// Every pair of points of the cycle at vertices is joined along the cycle by a graph-shortest arc.
inline bool is_straight_cycle(const WeightedGraph& G, const WeightedCycle& c) {
  validate_walk(G.ribbon, c.walk);
  auto d = all_pairs_distance(G);
  const std::size_t n = c.walk.size();
  std::vector<int> vs;
  std::vector<Rational> prefix{Rational(0)};
  for (Dart h : c.walk.darts) {
    vs.push_back(G.ribbon.vertex(h));
    prefix.push_back(prefix.back() + G.edge_length[G.ribbon.edge(h)]);
  }
  const Rational total = prefix.back();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational arc = prefix[j] - prefix[i];
      Rational shorter = std::min(arc, total - arc);
      if (*d[vs[i]][vs[j]] != shorter) return false;
    }
  return true;
}

}  // namespace surfhom
