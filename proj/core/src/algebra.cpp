#include "graphlim/algebra.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <string>

#include "graphlim/density.hpp"
#include "graphlim/error.hpp"

namespace graphlim {

namespace {

// Edge mask of a flat graph, reading node positions from labels.
std::uint32_t flat_mask(const Graph& g) {
  const int k = g.order();
  std::vector<int> pos(k);
  for (int v = 0; v < k; ++v) pos[v] = g.label(v) - 1;
  std::uint32_t mask = 0;
  int bit = 0;
  std::vector<std::vector<int>> index(k, std::vector<int>(k, 0));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      index[i][j] = index[j][i] = bit;
      ++bit;
    }
  for (const auto& [u, v] : g.edges()) mask |= std::uint32_t{1} << index[pos[u]][pos[v]];
  return mask;
}

struct IsoClass {
  CanonicalForm form;
  Graph graph;
};

// For flat k-labeled masks: the ≃ class of the unlabeled graph.
const std::vector<IsoClass>& reduced_class_table(int k) {
  static std::array<std::vector<IsoClass>, kMaxFlatLabels + 1> tables;
  static std::array<std::once_flag, kMaxFlatLabels + 1> once;
  std::call_once(once[k], [k] {
    const std::uint32_t total = std::uint32_t{1} << pair_count(k);
    auto& table = tables[k];
    table.reserve(total);
    for (std::uint32_t mask = 0; mask < total; ++mask) {
      Graph reduced = canonical_graph(drop_isolates(graph_from_mask(k, mask)));
      table.push_back({canonical_form(reduced), reduced});
    }
  });
  return tables[k];
}

}  // namespace

QuantumGraph::QuantumGraph(int labels) : labels_(labels) {
  if (labels < 0) throw DomainError("negative label arity");
}

QuantumGraph QuantumGraph::of(const Graph& g, const Rational& coeff) {
  QuantumGraph out(g.labeled_count());
  out.add(g, coeff);
  return out;
}

QuantumGraph QuantumGraph::flat(int k, const std::vector<Rational>& coeffs) {
  require_cap("flat label", kMaxFlatLabels, k);
  if (coeffs.size() != (std::size_t{1} << pair_count(k)))
    throw DomainError("flat coefficient vector has the wrong length");
  QuantumGraph out(k);
  for (std::uint32_t mask = 0; mask < coeffs.size(); ++mask)
    if (coeffs[mask] != 0) out.add(flat_graph(k, mask), coeffs[mask]);
  return out;
}

bool QuantumGraph::is_flat() const {
  for (const auto& [form, term] : terms_)
    if (!term.graph.is_flat()) return false;
  return true;
}

Rational QuantumGraph::coefficient(const Graph& g) const {
  auto it = terms_.find(canonical_form(g));
  return it == terms_.end() ? Rational(0) : it->second.coeff;
}

int QuantumGraph::max_order() const {
  int out = 0;
  for (const auto& [form, term] : terms_) out = std::max(out, term.graph.order());
  return out;
}

void QuantumGraph::check_arity(const Graph& g) const {
  if (!g.is_k_labeled(labels_))
    throw DomainError("term labels must be exactly {1.." + std::to_string(labels_) + "}");
}

void QuantumGraph::add(const Graph& g, const Rational& coeff) {
  check_arity(g);
  if (coeff == 0) return;
  CanonicalForm form = canonical_form(g);
  auto it = terms_.find(form);
  if (it == terms_.end()) {
    terms_.emplace(std::move(form), Term{canonical_graph(g), coeff});
    return;
  }
  it->second.coeff += coeff;
  if (it->second.coeff == 0) terms_.erase(it);
}

QuantumGraph& QuantumGraph::operator+=(const QuantumGraph& other) {
  if (other.labels_ != labels_) throw DomainError("quantum graphs have different label arities");
  for (const auto& [form, term] : other.terms_) {
    auto it = terms_.find(form);
    if (it == terms_.end()) {
      terms_.emplace(form, term);
      continue;
    }
    it->second.coeff += term.coeff;
    if (it->second.coeff == 0) terms_.erase(it);
  }
  return *this;
}

QuantumGraph& QuantumGraph::operator-=(const QuantumGraph& other) { return *this += -other; }

QuantumGraph& QuantumGraph::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [form, term] : terms_) term.coeff *= scalar;
  return *this;
}

bool operator==(const QuantumGraph& a, const QuantumGraph& b) {
  if (a.labels_ != b.labels_ || a.terms_.size() != b.terms_.size()) return false;
  for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second.coeff != ib->second.coeff) return false;
  return true;
}

QuantumGraph qg_product(const QuantumGraph& x, const QuantumGraph& y) {
  if (x.labels() != y.labels()) throw DomainError("quantum graphs have different label arities");
  QuantumGraph out(x.labels());
  for (const auto& [fa, a] : x.terms())
    for (const auto& [fb, b] : y.terms()) out.add(glue(a.graph, b.graph), a.coeff * b.coeff);
  return out;
}

QuantumGraph unlabel(const QuantumGraph& x) {
  QuantumGraph out(0);
  for (const auto& [form, term] : x.terms()) out.add(term.graph.without_labels(), term.coeff);
  return out;
}

QuantumGraph simplify_iso(const QuantumGraph& x) {
  if (!x.is_unlabeled()) throw DomainError("simplify_iso needs an unlabeled quantum graph");
  QuantumGraph out(0);
  for (const auto& [form, term] : x.terms()) out.add(drop_isolates(term.graph), term.coeff);
  return out;
}

QuantumGraph square_and_unlabel(const QuantumGraph& y) {
  const int k = y.labels();
  if (k == 0) throw DomainError("square_and_unlabel needs a labeled quantum graph");
  if (k > kMaxFlatLabels || !y.is_flat()) return simplify_iso(unlabel(qg_product(y, y)));

  // Gluing flat graphs is the union of edge masks.
  std::vector<std::pair<std::uint32_t, const Rational*>> terms;
  for (const auto& [form, term] : y.terms()) terms.emplace_back(flat_mask(term.graph), &term.coeff);
  const auto& classes = reduced_class_table(k);
  std::vector<Rational> by_mask(classes.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    by_mask[terms[i].first] += *terms[i].second * *terms[i].second;
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      by_mask[terms[i].first | terms[j].first] += 2 * *terms[i].second * *terms[j].second;
  }
  std::map<CanonicalForm, Rational> collected;
  for (std::size_t mask = 0; mask < by_mask.size(); ++mask)
    if (by_mask[mask] != 0) collected[classes[mask].form] += by_mask[mask];
  QuantumGraph out(0);
  for (std::size_t mask = 0; mask < by_mask.size(); ++mask) {
    auto it = collected.find(classes[mask].form);
    if (it == collected.end()) continue;
    out.add(classes[mask].graph, it->second);
    collected.erase(it);
  }
  return out;
}

Rational l1_norm(const QuantumGraph& x, Equivalence eq) {
  if (!x.is_unlabeled()) throw DomainError("l1_norm needs an unlabeled quantum graph");
  const QuantumGraph reduced = eq == Equivalence::kIsolateFree ? simplify_iso(x) : x;
  Rational total = 0;
  for (const auto& [form, term] : reduced.terms()) total += abs(term.coeff);
  return total;
}

Rational evaluate(const QuantumGraph& x, const Graph& g) {
  if (!x.is_unlabeled()) throw DomainError("evaluate needs an unlabeled quantum graph");
  if (g.order() == 0) throw DomainError("cannot evaluate against the empty graph K0");
  Rational total = 0;
  for (const auto& [form, term] : x.terms()) total += term.coeff * t(term.graph, g);
  return total;
}

Rational evaluate(const QuantumGraph& x, const StepGraphon& w) {
  if (!x.is_unlabeled()) throw DomainError("evaluate needs an unlabeled quantum graph");
  Rational total = 0;
  for (const auto& [form, term] : x.terms()) total += term.coeff * t_graphon(term.graph, w);
  return total;
}

Rational evaluate(const QuantumGraph& x, const GraphParameter& f) {
  if (!x.is_unlabeled()) throw DomainError("evaluate needs an unlabeled quantum graph");
  Rational total = 0;
  for (const auto& [form, term] : x.terms()) total += term.coeff * f(term.graph);
  return total;
}

QuantumGraph lift_flat(const QuantumGraph& y, int labels) {
  const int k = y.labels();
  if (labels < k) throw DomainError("cannot lift to fewer labels");
  if (!y.is_flat()) throw DomainError("lift_flat needs a flat quantum graph");
  QuantumGraph out(labels);
  for (const auto& [form, term] : y.terms()) {
    Graph g = term.graph.with_isolated(labels - k);
    for (int v = k; v < labels; ++v) g.set_label(v, v + 1);
    out.add(g, term.coeff);
  }
  return out;
}

}  // namespace graphlim
