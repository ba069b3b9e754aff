#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "graphlim/exact_linalg.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/rational.hpp"

namespace graphlim {

inline constexpr int kMaxParameterCap = 7;
inline constexpr int kDefaultParameterCap = 6;
inline constexpr int kMaxFlatPsdLabels = 4;

/// A graph parameter truncated to graphs with at most cap() nodes: one
/// exact value per isomorphism class of unlabeled graphs, K0 included.
class GraphParameter {
 public:
  /// Throws DomainError unless `table` covers every class up to `cap`.
  GraphParameter(int cap, std::map<CanonicalForm, Rational> table);

  static GraphParameter tabulate(int cap, const std::function<Rational(const Graph&)>& value);

  int cap() const noexcept { return cap_; }
  /// Value on the isomorphism class of g (labels ignored).
  const Rational& operator()(const Graph& g) const;
  const Rational& at(const CanonicalForm& unlabeled_form) const;
  const std::map<CanonicalForm, Rational>& table() const noexcept { return table_; }

  friend bool operator==(const GraphParameter&, const GraphParameter&) = default;

 private:
  int cap_ = 0;
  std::map<CanonicalForm, Rational> table_;
};

/// f(F) = t(F, W).
GraphParameter from_graphon(const StepGraphon& w, int cap = kDefaultParameterCap);

/// f(F) = E t(F, W) for a random graphon W.
GraphParameter from_model(const RandomGraphonModel& model, int cap = kDefaultParameterCap);

/// Möbius transform: f†(F) = sum over edge supersets F' of F on V(F) of
/// (-1)^{|E(F') \ E(F)|} f(F'). Evaluated on labeled representatives with a
/// superset transform over the edge-mask lattice, then read off per class.
GraphParameter mobius(const GraphParameter& f);

/// Zeta transform g(F) = sum over edge supersets of f(F'); inverse of mobius.
GraphParameter mobius_inverse(const GraphParameter& g);

/// f(K0) = f(K1) = 1.
bool is_normalized(const GraphParameter& f);

struct GraphPair {
  Graph first;
  Graph second;
};

struct IsolateCheck {
  bool indifferent = true;
  std::optional<GraphPair> witness;  // (F, F + isolated node) with different values
};

/// Checks f(F) = f(F + isolated node) for every class with fewer than cap nodes.
IsolateCheck is_isolate_indifferent(const GraphParameter& f);

/// First pair (F1, F2) with f(F1 ⊔ F2) != f(F1) f(F2), if any.
std::optional<GraphPair> find_multiplicativity_violation(const GraphParameter& f);

/// Finite principal submatrix of the k-th connection matrix.
struct ConnectionMatrix {
  int k = 0;
  std::vector<Graph> index;  // k-labeled graphs, ordered by (order, canonical form)
  RationalMatrix entries;    // entries(i,j) = f(glue(index[i], index[j]))
};

/// Index set: k-labeled graphs with at most k + extra nodes. Requires
/// k + 2*extra <= f.cap() so every product has a table value.
ConnectionMatrix connection_matrix(const GraphParameter& f, int k, int extra = 0);

struct FlatPsdReport {
  int k = 0;
  bool psd = false;
  /// M_flat(f,k) = Z D Z^T checked entrywise in exact arithmetic, where
  /// Z(F1,F2) = 1[F1 ⊆ F2] and D = diag(f†).
  bool factorization_exact = false;
  std::vector<Graph> index;              // flat graphs by edge mask
  std::vector<Rational> mobius_diagonal; // f† on index
  std::optional<Graph> witness_graph;    // flat F with f†(F) < 0
  std::vector<Rational> witness_vector;  // u with u^T M u = f†(F)
  Rational witness_value;
};

/// PSD test of the flat connection matrix through its Lindström–Wilf
/// diagonalization: PSD iff f† >= 0 on all graphs with k nodes.
FlatPsdReport flat_psd_test(const GraphParameter& f, int k);

/// f† values of every labeled graph on [n], indexed by edge mask.
std::vector<Rational> mobius_by_mask(const GraphParameter& f, int n);

}  // namespace graphlim
