#include "graphlim/graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "graphlim/error.hpp"

namespace graphlim {

namespace {

constexpr std::uint64_t bit(int v) noexcept { return std::uint64_t{1} << v; }

void check_node(const Graph& g, int v) {
  if (v < 0 || v >= g.order())
    throw DomainError("node " + std::to_string(v) + " out of range for a graph on " +
                      std::to_string(g.order()) + " nodes");
}

}  // namespace

Graph::Graph(int order) : order_(order) {
  if (order < 0) throw DomainError("negative node count");
  require_cap("graph node", kMaxNodes, order);
}

Graph Graph::from_edges(int order, std::span<const std::pair<int, int>> edges) {
  Graph g(order);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

Graph Graph::empty(int order) { return Graph(order); }

Graph Graph::complete(int order) {
  Graph g(order);
  for (int u = 0; u < order; ++u)
    for (int v = u + 1; v < order; ++v) g.add_edge(u, v);
  return g;
}

Graph Graph::path(int order) {
  Graph g(order);
  for (int v = 0; v + 1 < order; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph Graph::cycle(int order) {
  if (order < 3) throw DomainError("a cycle needs at least 3 nodes");
  Graph g = path(order);
  g.add_edge(order - 1, 0);
  return g;
}

Graph Graph::complete_bipartite(int left, int right) {
  Graph g(left + right);
  for (int u = 0; u < left; ++u)
    for (int v = left; v < left + right; ++v) g.add_edge(u, v);
  return g;
}

int Graph::size() const noexcept {
  int twice = 0;
  for (int v = 0; v < order_; ++v) twice += std::popcount(adj_[v]);
  return twice / 2;
}

int Graph::degree(int v) const noexcept { return std::popcount(adj_[v]); }

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < order_; ++u)
    for (int v = u + 1; v < order_; ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

void Graph::add_edge(int u, int v) {
  check_node(*this, u);
  check_node(*this, v);
  if (u == v) throw DomainError("self-loops are not allowed");
  adj_[u] |= bit(v);
  adj_[v] |= bit(u);
}

void Graph::remove_edge(int u, int v) {
  check_node(*this, u);
  check_node(*this, v);
  adj_[u] &= ~bit(v);
  adj_[v] &= ~bit(u);
}

void Graph::set_label(int v, int label) {
  check_node(*this, v);
  if (label <= 0 || label > 255) throw DomainError("labels must be in 1..255");
  for (int w = 0; w < order_; ++w)
    if (w != v && label_[w] == label)
      throw DomainError("label " + std::to_string(label) + " already in use");
  label_[v] = static_cast<std::uint8_t>(label);
}

int Graph::labeled_count() const noexcept {
  int count = 0;
  for (int v = 0; v < order_; ++v) count += label_[v] != 0;
  return count;
}

std::optional<int> Graph::node_with_label(int label) const noexcept {
  for (int v = 0; v < order_; ++v)
    if (label_[v] == label && label != 0) return v;
  return std::nullopt;
}

bool Graph::is_flat() const noexcept { return labeled_count() == order_ && is_k_labeled(order_); }

bool Graph::is_k_labeled(int k) const noexcept {
  if (labeled_count() != k) return false;
  for (int v = 0; v < order_; ++v)
    if (label_[v] > k) return false;
  return true;
}

Graph Graph::with_isolated(int count) const {
  Graph g(order_ + count);
  g.adj_ = adj_;
  g.label_ = label_;
  return g;
}

Graph Graph::without_labels() const {
  Graph g = *this;
  g.label_.fill(0);
  return g;
}

Graph Graph::induced(std::span<const int> nodes) const {
  Graph g(static_cast<int>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    check_node(*this, nodes[i]);
    g.label_[i] = label_[nodes[i]];
    for (std::size_t j = 0; j < i; ++j)
      if (adjacent(nodes[i], nodes[j])) {
        g.adj_[i] |= bit(static_cast<int>(j));
        g.adj_[j] |= bit(static_cast<int>(i));
      }
  }
  return g;
}

Graph Graph::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != order_) throw DomainError("permutation size mismatch");
  Graph g(order_);
  for (int v = 0; v < order_; ++v) {
    g.label_[perm[v]] = label_[v];
    std::uint64_t row = adj_[v];
    while (row) {
      int w = std::countr_zero(row);
      row &= row - 1;
      g.adj_[perm[v]] |= bit(perm[w]);
    }
  }
  return g;
}

Graph Graph::without_node(int v) const {
  check_node(*this, v);
  std::vector<int> keep;
  for (int w = 0; w < order_; ++w)
    if (w != v) keep.push_back(w);
  return induced(keep);
}

// ---------------------------------------------------------------------------
// Canonical forms

std::size_t CanonicalFormHash::operator()(const CanonicalForm& form) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (auto b : form.bytes) h = (h ^ b) * 1099511628211ULL;
  return h;
}

namespace {

using Cell = std::vector<int>;
using Partition = std::vector<Cell>;

std::uint64_t cell_mask(const Cell& cell) {
  std::uint64_t m = 0;
  for (int v : cell) m |= bit(v);
  return m;
}

// Equitable refinement. Each step depends only on the cell order and
// neighbour counts, so the result commutes with isomorphisms.
void refine(const Graph& g, Partition& cells) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t w = 0; w < cells.size() && !changed; ++w) {
      const std::uint64_t splitter = cell_mask(cells[w]);
      for (std::size_t x = 0; x < cells.size(); ++x) {
        Cell& cell = cells[x];
        if (cell.size() == 1) continue;
        std::vector<std::pair<int, int>> keyed;
        keyed.reserve(cell.size());
        for (int v : cell) keyed.emplace_back(std::popcount(g.neighbors(v) & splitter), v);
        std::stable_sort(keyed.begin(), keyed.end(),
                         [](auto& a, auto& b) { return a.first < b.first; });
        if (keyed.front().first == keyed.back().first) continue;
        Partition pieces;
        for (std::size_t i = 0; i < keyed.size(); ++i) {
          if (i == 0 || keyed[i].first != keyed[i - 1].first) pieces.emplace_back();
          pieces.back().push_back(keyed[i].second);
        }
        cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(x));
        cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(x), pieces.begin(), pieces.end());
        changed = true;
        break;
      }
    }
  }
}

std::vector<std::uint8_t> adjacency_string(const Graph& g, const std::vector<int>& order) {
  const int n = g.order();
  std::vector<std::uint8_t> bits((pair_count(n) + 7) / 8, 0);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k)
      if (g.adjacent(order[i], order[j])) bits[k / 8] |= static_cast<std::uint8_t>(0x80U >> (k % 8));
  return bits;
}

struct CanonicalSearch {
  const Graph& g;
  std::vector<int> best_order;
  std::vector<std::uint8_t> best_bits;
  bool have_best = false;

  void leaf(const Partition& cells) {
    std::vector<int> order;
    order.reserve(cells.size());
    for (const Cell& c : cells) order.push_back(c.front());
    auto bits = adjacency_string(g, order);
    if (!have_best || bits < best_bits) {
      best_bits = std::move(bits);
      best_order = std::move(order);
      have_best = true;
    }
  }

  void search(Partition cells) {
    refine(g, cells);
    auto target = std::find_if(cells.begin(), cells.end(), [](const Cell& c) { return c.size() > 1; });
    if (target == cells.end()) {
      leaf(cells);
      return;
    }
    const std::size_t index = static_cast<std::size_t>(target - cells.begin());
    const Cell candidates = *target;
    std::vector<int> explored;
    for (int v : candidates) {
      // Swapping two twins is an automorphism that fixes the current
      // partition, so their subtrees yield the same set of leaves.
      bool twin = std::any_of(explored.begin(), explored.end(), [&](int u) {
        return (g.neighbors(u) & ~bit(v)) == (g.neighbors(v) & ~bit(u));
      });
      if (twin) continue;
      explored.push_back(v);
      Partition next = cells;
      Cell rest;
      for (int w : candidates)
        if (w != v) rest.push_back(w);
      next[index] = Cell{v};
      next.insert(next.begin() + static_cast<std::ptrdiff_t>(index) + 1, rest);
      search(std::move(next));
    }
  }
};

Partition initial_partition(const Graph& g) {
  std::vector<std::pair<int, int>> labeled;
  Cell unlabeled;
  for (int v = 0; v < g.order(); ++v) {
    if (g.label(v) != 0)
      labeled.emplace_back(g.label(v), v);
    else
      unlabeled.push_back(v);
  }
  std::sort(labeled.begin(), labeled.end());
  Partition cells;
  for (auto [label, v] : labeled) cells.push_back(Cell{v});
  if (!unlabeled.empty()) cells.push_back(std::move(unlabeled));
  return cells;
}

}  // namespace

std::vector<int> canonical_order(const Graph& g) {
  require_cap("canonical form node", kMaxCanonicalNodes, g.order());
  if (g.order() == 0) return {};
  CanonicalSearch search{g, {}, {}, false};
  search.search(initial_partition(g));
  return search.best_order;
}

namespace {

CanonicalForm form_from_order(const Graph& g, const std::vector<int>& order) {
  CanonicalForm form;
  form.bytes.reserve(1 + g.order() + (pair_count(g.order()) + 7) / 8);
  form.bytes.push_back(static_cast<std::uint8_t>(g.order()));
  for (int v : order) form.bytes.push_back(static_cast<std::uint8_t>(g.label(v)));
  auto bits = adjacency_string(g, order);
  form.bytes.insert(form.bytes.end(), bits.begin(), bits.end());
  return form;
}

Graph graph_from_order(const Graph& g, const std::vector<int>& order) {
  std::vector<int> perm(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) perm[order[i]] = static_cast<int>(i);
  return g.permuted(perm);
}

}  // namespace

CanonicalForm canonical_form(const Graph& g) { return form_from_order(g, canonical_order(g)); }

Graph canonical_graph(const Graph& g) { return graph_from_order(g, canonical_order(g)); }

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return canonical_form(a) == canonical_form(b);
}

std::uint64_t automorphism_count(const Graph& g) {
  require_cap("automorphism count node", kMaxEnumeratedOrder + 2, g.order());
  const int n = g.order();
  std::vector<int> image(n, -1);
  std::uint64_t used = 0;
  std::uint64_t count = 0;
  auto extend = [&](auto&& self, int v) -> void {
    if (v == n) {
      ++count;
      return;
    }
    for (int w = 0; w < n; ++w) {
      if ((used >> w) & 1U) continue;
      if (g.label(w) != g.label(v) || g.degree(w) != g.degree(v)) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = g.adjacent(u, v) == g.adjacent(image[u], w);
      if (!ok) continue;
      image[v] = w;
      used |= bit(w);
      self(self, v + 1);
      used &= ~bit(w);
    }
  };
  extend(extend, 0);
  return count;
}

// ---------------------------------------------------------------------------
// Gluing and isolates

Graph glue(const Graph& a, const Graph& b) {
  std::vector<int> where(b.order(), -1);
  int next = a.order();
  for (int v = 0; v < b.order(); ++v) {
    if (b.label(v) != 0) {
      if (auto hit = a.node_with_label(b.label(v))) {
        where[v] = *hit;
        continue;
      }
    }
    where[v] = next++;
  }
  Graph out = a.with_isolated(next - a.order());
  for (int v = 0; v < b.order(); ++v)
    if (b.label(v) != 0 && where[v] >= a.order()) out.set_label(where[v], b.label(v));
  for (auto [u, v] : b.edges()) out.add_edge(where[u], where[v]);
  return out;
}

Graph drop_isolates(const Graph& g) {
  std::vector<int> keep;
  for (int v = 0; v < g.order(); ++v)
    if (g.neighbors(v) != 0) keep.push_back(v);
  if (static_cast<int>(keep.size()) == g.order()) return g;
  return g.induced(keep);
}

// ---------------------------------------------------------------------------
// Enumeration

Graph graph_from_mask(int n, std::uint32_t mask) {
  if (n < 0) throw DomainError("negative node count");
  require_cap("edge mask node", kMaxEnumeratedOrder, n);
  Graph g(n);
  int p = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++p)
      if ((mask >> p) & 1U) g.add_edge(u, v);
  return g;
}

Graph flat_graph(int k, std::uint32_t mask) {
  Graph g = graph_from_mask(k, mask);
  for (int v = 0; v < k; ++v) g.set_label(v, v + 1);
  return g;
}

std::uint32_t edge_mask(const Graph& g) {
  require_cap("edge mask node", kMaxEnumeratedOrder, g.order());
  std::uint32_t mask = 0;
  int p = 0;
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v, ++p)
      if (g.adjacent(u, v)) mask |= std::uint32_t{1} << p;
  return mask;
}

std::vector<Graph> enumerate_flat(int k) {
  if (k < 0) throw DomainError("negative label count");
  require_cap("flat enumeration label", kMaxFlatLabels, k);
  const std::uint32_t total = std::uint32_t{1} << pair_count(k);
  std::vector<Graph> out;
  out.reserve(total);
  for (std::uint32_t mask = 0; mask < total; ++mask) out.push_back(flat_graph(k, mask));
  return out;
}

namespace {

std::vector<Graph> build_level(const std::vector<Graph>& previous, int n) {
  std::map<CanonicalForm, Graph> classes;
  for (const Graph& base : previous) {
    const Graph grown = base.with_isolated(1);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << (n - 1)); ++mask) {
      Graph g = grown;
      for (int v = 0; v < n - 1; ++v)
        if ((mask >> v) & 1U) g.add_edge(v, n - 1);
      auto order = canonical_order(g);
      auto form = form_from_order(g, order);
      if (!classes.contains(form)) classes.emplace(std::move(form), graph_from_order(g, order));
    }
  }
  std::vector<Graph> out;
  out.reserve(classes.size());
  for (auto& [form, g] : classes) out.push_back(std::move(g));
  return out;
}

}  // namespace

const std::vector<Graph>& enumerate_unlabeled(int n) {
  if (n < 0) throw DomainError("negative node count");
  require_cap("unlabeled enumeration node", kMaxEnumeratedOrder, n);
  static std::array<std::vector<Graph>, kMaxEnumeratedOrder + 1> levels;
  static std::array<std::once_flag, kMaxEnumeratedOrder + 1> built;
  std::call_once(built[n], [n] {
    levels[n] = n == 0 ? std::vector<Graph>{Graph()} : build_level(enumerate_unlabeled(n - 1), n);
  });
  return levels[n];
}

const std::vector<std::uint32_t>& mask_class_table(int n) {
  if (n < 0) throw DomainError("negative node count");
  require_cap("mask table node", kMaxMaskTableOrder, n);
  static std::array<std::vector<std::uint32_t>, kMaxMaskTableOrder + 1> tables;
  static std::array<std::once_flag, kMaxMaskTableOrder + 1> built;
  std::call_once(built[n], [n] {
    const auto& classes = enumerate_unlabeled(n);
    std::map<CanonicalForm, std::uint32_t> index;
    for (std::size_t i = 0; i < classes.size(); ++i)
      index.emplace(canonical_form(classes[i]), static_cast<std::uint32_t>(i));
    const std::uint32_t total = std::uint32_t{1} << pair_count(n);
    std::vector<std::uint32_t> table(total);
    for (std::uint32_t mask = 0; mask < total; ++mask)
      table[mask] = index.at(canonical_form(graph_from_mask(n, mask)));
    tables[n] = std::move(table);
  });
  return tables[n];
}

std::vector<Graph> enumerate_unlabeled_up_to(int n) {
  std::vector<Graph> out;
  for (int k = 0; k <= n; ++k) {
    const auto& level = enumerate_unlabeled(k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace graphlim
