#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace graphlim {

/// Hard node cap of the Graph value type (adjacency rows are 64-bit masks).
inline constexpr int kMaxNodes = 64;
/// Cap for canonical forms and anything keyed by isomorphism class.
inline constexpr int kMaxCanonicalNodes = 16;
inline constexpr int kMaxFlatLabels = 5;
inline constexpr int kMaxEnumeratedOrder = 8;

/// Simple finite graph with an optional partial labelling of its nodes.
///
/// Nodes are 0..order()-1. A label is a positive integer; label 0 means
/// "unlabeled". Labels are distinct. A graph is k-labeled when its labels are
/// exactly {1..k}, and flat when additionally every node is labeled.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int order);

  static Graph from_edges(int order, std::span<const std::pair<int, int>> edges);
  static Graph from_edges(int order, std::initializer_list<std::pair<int, int>> edges) {
    return from_edges(order, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
  }

  static Graph empty(int order);  // U_n
  static Graph complete(int order);
  static Graph path(int order);
  static Graph cycle(int order);
  static Graph complete_bipartite(int left, int right);

  int order() const noexcept { return order_; }
  int size() const noexcept;  // edge count

  bool adjacent(int u, int v) const noexcept { return (adj_[u] >> v) & 1U; }
  std::uint64_t neighbors(int v) const noexcept { return adj_[v]; }
  int degree(int v) const noexcept;
  std::vector<std::pair<int, int>> edges() const;

  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  int label(int v) const noexcept { return label_[v]; }
  void set_label(int v, int label);
  void clear_label(int v) noexcept { label_[v] = 0; }
  int labeled_count() const noexcept;
  std::optional<int> node_with_label(int label) const noexcept;
  bool is_unlabeled() const noexcept { return labeled_count() == 0; }
  bool is_flat() const noexcept;
  /// Labels are exactly {1..k}.
  bool is_k_labeled(int k) const noexcept;

  /// Adds `count` isolated unlabeled nodes.
  Graph with_isolated(int count) const;
  Graph without_labels() const;
  /// Node i of the result is node nodes[i] of this graph (labels kept).
  Graph induced(std::span<const int> nodes) const;
  /// Node v moves to position perm[v].
  Graph permuted(std::span<const int> perm) const;
  Graph without_node(int v) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int order_ = 0;
  std::array<std::uint64_t, kMaxNodes> adj_{};
  std::array<std::uint8_t, kMaxNodes> label_{};
};

/// Byte string identifying a graph up to label-preserving isomorphism.
struct CanonicalForm {
  std::vector<std::uint8_t> bytes;

  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& form) const noexcept;
};

/// Canonical form by individualization-refinement: labeled nodes are fixed
/// in label order, the unlabeled nodes are ordered to minimize the
/// adjacency bitstring. Throws CapExceeded above kMaxCanonicalNodes.
CanonicalForm canonical_form(const Graph& g);

/// The graph relabelled into canonical node order; equal for isomorphic
/// inputs (as a value, not only as a form).
Graph canonical_graph(const Graph& g);

/// Canonical order: position i of the canonical graph is node order[i].
std::vector<int> canonical_order(const Graph& g);

bool isomorphic(const Graph& a, const Graph& b);

/// Number of label-preserving automorphisms.
std::uint64_t automorphism_count(const Graph& g);

/// Disjoint union with equally labeled nodes identified; duplicate edges
/// collapse. Nodes of `a` keep their indices.
Graph glue(const Graph& a, const Graph& b);

/// Removes every node without neighbours, labeled ones included.
Graph drop_isolates(const Graph& g);

/// Number of unordered node pairs on k nodes.
constexpr int pair_count(int k) noexcept { return k * (k - 1) / 2; }

/// Unlabeled graph on [n] whose edge set is `mask` over the pairs
/// (0,1),(0,2),...,(0,n-1),(1,2),... in that order. n <= 8.
Graph graph_from_mask(int n, std::uint32_t mask);

/// graph_from_mask with node i carrying label i+1.
Graph flat_graph(int k, std::uint32_t mask);
/// Inverse of flat_graph for graphs on nodes [k]; labels are ignored.
std::uint32_t edge_mask(const Graph& g);

/// All 2^(k choose 2) flat k-labeled graphs, indexed by edge mask.
std::vector<Graph> enumerate_flat(int k);

/// One canonical representative per isomorphism class of unlabeled graphs
/// on exactly n nodes, ordered by canonical form.
const std::vector<Graph>& enumerate_unlabeled(int n);

/// Concatenation of enumerate_unlabeled(0..n).
std::vector<Graph> enumerate_unlabeled_up_to(int n);

inline constexpr int kMaxMaskTableOrder = 7;

/// For every edge mask on [n], the index of its isomorphism class within
/// enumerate_unlabeled(n). Built once per n (n <= 7).
const std::vector<std::uint32_t>& mask_class_table(int n);

}  // namespace graphlim
