#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "surfhom/surfhom.hpp"

namespace testsupport {

using namespace surfhom;

/// Random connected ribbon graph: random rotation permutation on 2E darts, twin(h) = h ^ 1.
inline RibbonGraph random_ribbon(std::mt19937& rng, int min_edges, int max_edges) {
  std::uniform_int_distribution<int> edges(min_edges, max_edges);
  for (;;) {
    const int n = 2 * edges(rng);
    std::vector<Dart> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<Dart>> rot;
    std::vector<bool> seen(n, false);
    for (Dart h = 0; h < n; ++h) {
      if (seen[h]) continue;
      std::vector<Dart> cyc;
      for (Dart x = h; !seen[x]; x = perm[x]) {
        seen[x] = true;
        cyc.push_back(x);
      }
      rot.push_back(cyc);
    }
    std::vector<Dart> twin(n);
    for (Dart h = 0; h < n; ++h) twin[h] = h ^ 1;
    try {
      return RibbonGraph(rot, twin);
    } catch (const ValidationError&) {
      // disconnected, draw again
    }
  }
}

/// Random connected ribbon graph with exactly the given number of vertices: darts are dealt to
/// vertices at random, then each vertex's darts are shuffled into a cyclic order.
inline RibbonGraph random_ribbon_with_vertices(std::mt19937& rng, int vertices, int edges) {
  const int n = 2 * edges;
  for (;;) {
    std::vector<Dart> darts(n);
    std::iota(darts.begin(), darts.end(), 0);
    std::shuffle(darts.begin(), darts.end(), rng);
    std::vector<std::vector<Dart>> rot(vertices);
    for (int v = 0; v < vertices; ++v) rot[v].push_back(darts[v]);
    for (int i = vertices; i < n; ++i) rot[rng() % vertices].push_back(darts[i]);
    std::vector<Dart> twin(n);
    for (Dart h = 0; h < n; ++h) twin[h] = h ^ 1;
    try {
      return RibbonGraph(rot, twin);
    } catch (const ValidationError&) {
    }
  }
}

inline RibbonGraph random_ribbon_of_genus_at_least(std::mt19937& rng, int g, int max_edges) {
  for (;;) {
    RibbonGraph R = random_ribbon(rng, 1, max_edges);
    if (surface_invariants(R).genus >= g) return R;
  }
}

/// Marks a random subset of faces as boundary, keeping at least one interior face.
inline RibbonGraph with_random_boundary(std::mt19937& rng, const RibbonGraph& R) {
  std::vector<int> faces;
  for (int f = 0; f < R.num_faces(); ++f)
    if (rng() % 2) faces.push_back(f);
  if (static_cast<int>(faces.size()) == R.num_faces()) faces.pop_back();
  return R.with_boundary_faces(faces);
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<IntVector> rows(r, IntVector(c));
  for (auto& row : rows)
    for (auto& x : row) x = d(rng);
  return IntMatrix::from_rows(rows, c);
}

// ---------------------------------------------------------------------------
// Oracles that avoid the library's elimination code.

/// Permutation-cycle count of face_next = sigma^{-1} o twin, from raw rotation data.
inline int count_faces_raw(const std::vector<std::vector<Dart>>& rot, const std::vector<Dart>& twin) {
  const int n = static_cast<int>(twin.size());
  std::vector<Dart> prev(n);
  for (const auto& r : rot)
    for (std::size_t i = 0; i < r.size(); ++i) prev[r[(i + 1) % r.size()]] = r[i];
  std::vector<bool> seen(n, false);
  int faces = 0;
  for (int h = 0; h < n; ++h) {
    if (seen[h]) continue;
    ++faces;
    for (int x = h; !seen[x]; x = prev[twin[x]]) seen[x] = true;
  }
  return faces;
}

/// Determinant by Laplace expansion along the first row (small matrices only).
inline std::int64_t det_laplace(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  std::int64_t total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::int64_t> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    std::int64_t term = a[0][j] * det_laplace(minor);
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

inline std::vector<std::vector<std::int64_t>> rows_of(const IntMatrix& M) {
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    auto r = M.row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

/// Rank over Q by Gaussian elimination in exact rationals.
inline std::size_t rank_rational(const IntMatrix& M) {
  std::vector<std::vector<Rational>> a(M.rows(), std::vector<Rational>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) a[i][j] = Rational(M(i, j));
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols() && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == Rational(0)) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == Rational(0)) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < M.cols(); ++k) a[i][k] = a[i][k] - f * a[r][k];
    }
    ++r;
  }
  return r;
}

/// Rank over Z/p by brute-force elimination on small residues.
inline std::size_t rank_mod_p(const IntMatrix& M, std::int64_t p) {
  std::vector<std::vector<std::int64_t>> a = rows_of(M);
  for (auto& row : a)
    for (auto& x : row) x = ((x % p) + p) % p;
  auto inv = [&](std::int64_t x) {
    for (std::int64_t y = 1; y < p; ++y)
      if (x * y % p == 1) return y;
    return std::int64_t{0};
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols() && r < a.size(); ++c) {
    std::size_t q = r;
    while (q < a.size() && a[q][c] == 0) ++q;
    if (q == a.size()) continue;
    std::swap(a[q], a[r]);
    std::int64_t s = inv(a[r][c]);
    for (auto& x : a[r]) x = x * s % p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::int64_t f = a[i][c];
      for (std::size_t k = 0; k < M.cols(); ++k) a[i][k] = (((a[i][k] - f * a[r][k]) % p) + p) % p;
    }
    ++r;
  }
  return r;
}

inline void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  choose(n, k, 0, cur, out);
  return out;
}

/// k-th determinantal divisor: gcd of all k x k minors.
inline std::int64_t determinantal_divisor(const IntMatrix& M, std::size_t k) {
  std::int64_t g = 0;
  for (const auto& rs : subsets(M.rows(), k))
    for (const auto& cs : subsets(M.cols(), k)) {
      std::vector<std::vector<std::int64_t>> sub;
      for (auto i : rs) {
        std::vector<std::int64_t> row;
        for (auto j : cs) row.push_back(M(i, j));
        sub.push_back(row);
      }
      g = std::gcd(g, det_laplace(sub));
    }
  return g;
}

/// Invariant factors d_k = D_k / D_{k-1} from determinantal divisors.
inline std::vector<std::int64_t> invariant_factors_by_minors(const IntMatrix& M) {
  std::vector<std::int64_t> out;
  std::int64_t prev = 1;
  for (std::size_t k = 1; k <= std::min(M.rows(), M.cols()); ++k) {
    std::int64_t d = determinantal_divisor(M, k);
    if (d == 0) break;
    out.push_back(d / prev);
    prev = d;
  }
  return out;
}

/// Edge-simple closed walks by plain DFS over darts, one representative per rotation/reflection class,
/// returned as sorted multiset of edge sets.
inline std::multiset<std::vector<int>> cycles_by_dfs(const RibbonGraph& R) {
  std::set<std::vector<int>> seen_darts;
  std::multiset<std::vector<int>> out;
  std::vector<Dart> path;
  std::vector<bool> used(R.num_edges(), false);
  auto canon = [&](const std::vector<Dart>& w) {
    std::vector<std::vector<int>> vs;
    std::vector<Dart> rev;
    for (auto it = w.rbegin(); it != w.rend(); ++it) rev.push_back(R.twin(*it));
    for (const std::vector<Dart>* s : {&w, static_cast<const std::vector<Dart>*>(&rev)})
      for (std::size_t i = 0; i < s->size(); ++i) {
        std::vector<int> v(s->begin() + static_cast<std::ptrdiff_t>(i), s->end());
        v.insert(v.end(), s->begin(), s->begin() + static_cast<std::ptrdiff_t>(i));
        vs.push_back(v);
      }
    return *std::min_element(vs.begin(), vs.end());
  };
  std::function<void(int)> dfs = [&](int start) {
    int at = R.head(path.back());
    if (at == start) {
      auto c = canon(path);
      if (seen_darts.insert(c).second) {
        std::vector<int> es;
        for (Dart h : path) es.push_back(R.edge(h));
        std::sort(es.begin(), es.end());
        out.insert(es);
      }
    }
    for (Dart h : R.rotation()[at]) {
      if (used[R.edge(h)]) continue;
      used[R.edge(h)] = true;
      path.push_back(h);
      dfs(start);
      path.pop_back();
      used[R.edge(h)] = false;
    }
  };
  for (Dart h = 0; h < R.num_darts(); ++h) {
    used[R.edge(h)] = true;
    path = {h};
    dfs(R.vertex(h));
    used[R.edge(h)] = false;
  }
  return out;
}

}  // namespace testsupport
