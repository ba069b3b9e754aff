#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/parameter.hpp"
#include "graphlim/rational.hpp"

namespace graphlim {

/// Finite formal linear combination of k-labeled graphs (k = 0 for
/// unlabeled) with exact coefficients. Terms are keyed by the canonical
/// form of the graph as given (label-preserving isomorphism); use
/// simplify_iso to collapse unlabeled terms modulo isolated nodes.
class QuantumGraph {
 public:
  struct Term {
    Graph graph;  // canonical representative
    Rational coeff;
  };

  QuantumGraph() = default;
  /// Zero element with the given label arity.
  explicit QuantumGraph(int labels);

  /// c * g. The labels of g must be exactly {1..k} for some k.
  static QuantumGraph of(const Graph& g, const Rational& coeff = 1);
  /// Flat k-labeled combination with coefficient coeffs[mask] on flat_graph(k, mask).
  static QuantumGraph flat(int k, const std::vector<Rational>& coeffs);

  int labels() const noexcept { return labels_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_unlabeled() const noexcept { return labels_ == 0; }
  /// Every term is flat (all nodes labeled).
  bool is_flat() const;
  const std::map<CanonicalForm, Term>& terms() const noexcept { return terms_; }
  Rational coefficient(const Graph& g) const;
  /// Largest term order (0 for the zero element).
  int max_order() const;

  void add(const Graph& g, const Rational& coeff);

  QuantumGraph& operator+=(const QuantumGraph& other);
  QuantumGraph& operator-=(const QuantumGraph& other);
  QuantumGraph& operator*=(const Rational& scalar);
  friend QuantumGraph operator+(QuantumGraph a, const QuantumGraph& b) { return a += b; }
  friend QuantumGraph operator-(QuantumGraph a, const QuantumGraph& b) { return a -= b; }
  friend QuantumGraph operator*(QuantumGraph a, const Rational& s) { return a *= s; }
  friend QuantumGraph operator*(const Rational& s, QuantumGraph a) { return a *= s; }
  QuantumGraph operator-() const { return *this * Rational(-1); }

  friend bool operator==(const QuantumGraph& a, const QuantumGraph& b);

 private:
  void check_arity(const Graph& g) const;

  int labels_ = 0;
  std::map<CanonicalForm, Term> terms_;
};

/// Bilinear extension of the gluing product. Throws DomainError when the
/// label arities differ.
QuantumGraph qg_product(const QuantumGraph& x, const QuantumGraph& y);

/// Drops all labels (unlabeled result, terms collected modulo isomorphism).
QuantumGraph unlabel(const QuantumGraph& x);

/// Replaces each unlabeled term by its isolate-free representative and
/// merges like terms (the ≃ relation).
QuantumGraph simplify_iso(const QuantumGraph& x);

/// simplify_iso(unlabel(y * y)). Flat inputs take a mask-level fast path.
QuantumGraph square_and_unlabel(const QuantumGraph& y);

enum class Equivalence {
  kIsolateFree,  // ≃: terms equal after deleting isolated nodes (default)
  kIsomorphism,  // ≅: debugging view, no isolate stripping
};

/// Sum of absolute coefficients of an unlabeled quantum graph, after
/// collecting terms under the chosen equivalence.
Rational l1_norm(const QuantumGraph& x, Equivalence eq = Equivalence::kIsolateFree);

/// Linear extension of t(., G). x must be unlabeled; G must be nonempty.
Rational evaluate(const QuantumGraph& x, const Graph& g);
/// Linear extension of t(., W).
Rational evaluate(const QuantumGraph& x, const StepGraphon& w);
/// Linear extension of f. Throws CapExceeded if a term exceeds f.cap().
Rational evaluate(const QuantumGraph& x, const GraphParameter& f);

/// Flat m-labeled copy of y on m' >= m labels, adding isolated nodes
/// labeled m+1..m'. Unlabeled squares are unchanged modulo ≃.
QuantumGraph lift_flat(const QuantumGraph& y, int labels);

}  // namespace graphlim
