#pragma once

// Brute-force reference implementations. They share no code paths with
// the library beyond the Graph value type and Rational arithmetic, and are
// only meant for the tiny inputs used in tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include <graphlim/graphlim.hpp>

namespace oracle {

using graphlim::Graph;
using graphlim::Rational;

/// Isomorphism (labels must match) by trying every bijection.
inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  std::vector<int> perm(a.order());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int u = 0; u < a.order() && ok; ++u) {
      if (a.label(u) != b.label(perm[u])) ok = false;
      for (int v = u + 1; v < a.order() && ok; ++v)
        if (a.adjacent(u, v) != b.adjacent(perm[u], perm[v])) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Automorphisms by exhaustion.
inline std::uint64_t automorphisms(const Graph& g) {
  std::vector<int> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int u = 0; u < g.order() && ok; ++u) {
      if (g.label(u) != g.label(perm[u])) ok = false;
      for (int v = u + 1; v < g.order() && ok; ++v)
        if (g.adjacent(u, v) != g.adjacent(perm[u], perm[v])) ok = false;
    }
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

/// Iterates every map [nf] -> [ng] as an odometer.
inline void for_each_map(int nf, int ng, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> phi(nf, 0);
  if (nf > 0 && ng == 0) return;
  while (true) {
    visit(phi);
    int i = 0;
    while (i < nf && ++phi[i] == ng) phi[i++] = 0;
    if (i == nf) return;
  }
}

inline std::uint64_t hom(const Graph& f, const Graph& g) {
  std::uint64_t count = 0;
  const auto edges = f.edges();
  for_each_map(f.order(), g.order(), [&](const std::vector<int>& phi) {
    for (const auto& [u, v] : edges)
      if (!g.adjacent(phi[u], phi[v])) return;
    ++count;
  });
  return count;
}

inline std::uint64_t inj(const Graph& f, const Graph& g) {
  std::uint64_t count = 0;
  const auto edges = f.edges();
  for_each_map(f.order(), g.order(), [&](const std::vector<int>& phi) {
    std::vector<int> sorted = phi;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return;
    for (const auto& [u, v] : edges)
      if (!g.adjacent(phi[u], phi[v])) return;
    ++count;
  });
  return count;
}

inline Rational density(const Graph& f, const Graph& g) {
  Rational denom = 1;
  for (int i = 0; i < f.order(); ++i) denom *= g.order();
  Rational out = Rational(static_cast<unsigned long>(hom(f, g))) / denom;
  out.canonicalize();
  return out;
}

/// t(F, W) as the literal sum over step assignments, no pruning.
inline Rational graphon_density(const Graph& f, const graphlim::StepKernel& w) {
  Rational total = 0;
  const auto edges = f.edges();
  for_each_map(f.order(), w.steps(), [&](const std::vector<int>& phi) {
    Rational term = 1;
    for (int v = 0; v < f.order(); ++v) term *= w.widths()[phi[v]];
    for (const auto& [u, v] : edges) term *= w.value(phi[u], phi[v]);
    total += term;
  });
  return total;
}

/// max over step subsets S, T of |∫_{S×T} W|, all 2^s × 2^s pairs.
inline Rational cut_norm(const graphlim::StepKernel& w) {
  const int s = w.steps();
  Rational best = 0;
  for (std::uint32_t a = 0; a < (1U << s); ++a)
    for (std::uint32_t b = 0; b < (1U << s); ++b) {
      Rational integral = 0;
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
          if ((a >> i & 1U) && (b >> j & 1U)) integral += w.widths()[i] * w.widths()[j] * w.value(i, j);
      if (abs(integral) > best) best = abs(integral);
    }
  return best;
}

/// Unlabeled graph on [n] from an edge mask, pairs in lexicographic order.
inline Graph from_mask(int n, std::uint32_t mask) {
  Graph g(n);
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if (mask >> bit & 1U) g.add_edge(i, j);
  return g;
}

/// Literal superset sum f†(F) = Σ_{F' ⊇ F} (-1)^{|F' \ F|} f(F') on [n].
inline Rational mobius(const std::function<Rational(const Graph&)>& f, int n, std::uint32_t mask) {
  const int pairs = n * (n - 1) / 2;
  Rational total = 0;
  for (std::uint32_t super = 0; super < (1U << pairs); ++super) {
    if ((super & mask) != mask) continue;
    const int extra = __builtin_popcount(super & ~mask);
    total += (extra % 2 == 0 ? 1 : -1) * f(from_mask(n, super));
  }
  return total;
}

/// Determinant by fraction-based Gaussian elimination.
inline Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      std::swap(a[pivot], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational factor = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= factor * a[c][k];
    }
  }
  return det;
}

/// PSD iff every principal minor is nonnegative (small matrices only).
inline bool psd_by_minors(const graphlim::RationalMatrix& m) {
  const std::size_t n = m.rows();
  for (std::uint32_t subset = 1; subset < (1U << n); ++subset) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (subset >> i & 1U) idx.push_back(i);
    std::vector<std::vector<Rational>> sub(idx.size(), std::vector<Rational>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) sub[i][j] = m(idx[i], idx[j]);
    if (determinant(sub) < 0) return false;
  }
  return true;
}

}  // namespace oracle
