#include "graphlim/parameter.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "graphlim/density.hpp"
#include "graphlim/error.hpp"

namespace graphlim {

namespace {

constexpr int kMaxConnectionIndexNodes = 6;

void check_cap(int cap) {
  if (cap < 1) throw DomainError("parameter cap must be at least 1");
  require_cap("parameter table", kMaxParameterCap, cap);
}

}  // namespace

GraphParameter::GraphParameter(int cap, std::map<CanonicalForm, Rational> table)
    : cap_(cap), table_(std::move(table)) {
  check_cap(cap);
  for (int n = 0; n <= cap; ++n)
    for (const Graph& g : enumerate_unlabeled(n))
      if (!table_.contains(canonical_form(g)))
        throw DomainError("parameter table is missing a class on " + std::to_string(n) + " nodes");
  for (const auto& [form, value] : table_)
    if (form.bytes.empty() || form.bytes[0] > cap)
      throw DomainError("parameter table has an entry beyond its cap");
}

GraphParameter GraphParameter::tabulate(int cap, const std::function<Rational(const Graph&)>& value) {
  check_cap(cap);
  std::map<CanonicalForm, Rational> table;
  for (int n = 0; n <= cap; ++n)
    for (const Graph& g : enumerate_unlabeled(n)) table.emplace(canonical_form(g), value(g));
  return GraphParameter(cap, std::move(table));
}

const Rational& GraphParameter::operator()(const Graph& g) const {
  require_cap("parameter table", cap_, g.order());
  return table_.at(canonical_form(g.is_unlabeled() ? g : g.without_labels()));
}

const Rational& GraphParameter::at(const CanonicalForm& unlabeled_form) const {
  auto it = table_.find(unlabeled_form);
  if (it == table_.end()) throw DomainError("no parameter value for the requested class");
  return it->second;
}

GraphParameter from_graphon(const StepGraphon& w, int cap) {
  return GraphParameter::tabulate(cap, [&](const Graph& g) { return t_graphon(g, w); });
}

GraphParameter from_model(const RandomGraphonModel& model, int cap) {
  return GraphParameter::tabulate(cap, [&](const Graph& g) {
    Rational total = 0;
    for (const auto& [p, w] : model.atoms()) total += p * t_graphon(g, w);
    return total;
  });
}

namespace {

std::vector<Rational> values_by_mask(const GraphParameter& f, int n) {
  const auto& table = mask_class_table(n);
  const auto& classes = enumerate_unlabeled(n);
  std::vector<Rational> class_value(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) class_value[i] = f(classes[i]);
  std::vector<Rational> out(table.size());
  for (std::size_t mask = 0; mask < table.size(); ++mask) out[mask] = class_value[table[mask]];
  return out;
}

// In-place transform over supersets: sign -1 gives the Möbius transform,
// +1 the zeta transform.
void superset_transform(std::vector<Rational>& a, int bits, int sign) {
  for (int b = 0; b < bits; ++b) {
    const std::size_t step = std::size_t{1} << b;
    for (std::size_t mask = 0; mask < a.size(); ++mask) {
      if (mask & step) continue;
      if (sign < 0)
        a[mask] -= a[mask | step];
      else
        a[mask] += a[mask | step];
    }
  }
}

GraphParameter transform(const GraphParameter& f, int sign) {
  std::map<CanonicalForm, Rational> table;
  for (int n = 0; n <= f.cap(); ++n) {
    auto values = values_by_mask(f, n);
    superset_transform(values, pair_count(n), sign);
    for (const Graph& g : enumerate_unlabeled(n))
      table.emplace(canonical_form(g), values[edge_mask(g)]);
  }
  return GraphParameter(f.cap(), std::move(table));
}

}  // namespace

std::vector<Rational> mobius_by_mask(const GraphParameter& f, int n) {
  require_cap("parameter table", f.cap(), n);
  auto values = values_by_mask(f, n);
  superset_transform(values, pair_count(n), -1);
  return values;
}

GraphParameter mobius(const GraphParameter& f) { return transform(f, -1); }

GraphParameter mobius_inverse(const GraphParameter& g) { return transform(g, +1); }

bool is_normalized(const GraphParameter& f) {
  return f(Graph()) == 1 && f(Graph(1)) == 1;
}

IsolateCheck is_isolate_indifferent(const GraphParameter& f) {
  IsolateCheck check;
  for (int n = 0; n < f.cap(); ++n)
    for (const Graph& g : enumerate_unlabeled(n)) {
      Graph grown = g.with_isolated(1);
      if (f(g) != f(grown)) {
        check.indifferent = false;
        check.witness = GraphPair{g, grown};
        return check;
      }
    }
  return check;
}

std::optional<GraphPair> find_multiplicativity_violation(const GraphParameter& f) {
  for (int a = 0; a <= f.cap(); ++a)
    for (int b = a; a + b <= f.cap(); ++b)
      for (const Graph& g1 : enumerate_unlabeled(a))
        for (const Graph& g2 : enumerate_unlabeled(b))
          if (f(glue(g1, g2)) != f(g1) * f(g2)) return GraphPair{g1, g2};
  return std::nullopt;
}

ConnectionMatrix connection_matrix(const GraphParameter& f, int k, int extra) {
  if (k < 0 || extra < 0) throw DomainError("label count and node budget must be nonnegative");
  require_cap("connection matrix index node", kMaxConnectionIndexNodes, k + extra);
  require_cap("parameter table", f.cap(), k + 2 * extra);

  std::map<std::pair<int, CanonicalForm>, Graph> index;
  for (int n = k; n <= k + extra; ++n) {
    const std::uint32_t total = std::uint32_t{1} << pair_count(n);
    for (std::uint32_t mask = 0; mask < total; ++mask) {
      Graph g = graph_from_mask(n, mask);
      for (int v = 0; v < k; ++v) g.set_label(v, v + 1);
      auto order = canonical_order(g);
      std::vector<int> perm(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) perm[order[i]] = static_cast<int>(i);
      Graph rep = g.permuted(perm);
      index.try_emplace({n, canonical_form(rep)}, rep);
    }
  }

  ConnectionMatrix m;
  m.k = k;
  for (auto& [key, g] : index) m.index.push_back(g);
  const std::size_t size = m.index.size();
  m.entries = RationalMatrix(size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i; j < size; ++j) {
      const Rational& value = f(glue(m.index[i], m.index[j]));
      m.entries(i, j) = value;
      m.entries(j, i) = value;
    }
  return m;
}

FlatPsdReport flat_psd_test(const GraphParameter& f, int k) {
  if (k < 0) throw DomainError("negative label count");
  require_cap("flat PSD label", kMaxFlatPsdLabels, k);
  require_cap("parameter table", f.cap(), k);

  FlatPsdReport report;
  report.k = k;
  report.index = enumerate_flat(k);
  const auto values = values_by_mask(f, k);
  report.mobius_diagonal = mobius_by_mask(f, k);
  const std::size_t size = report.index.size();

  // M(a,b) = f(a ∪ b);  (Z D Z^T)(a,b) = sum over F ⊇ a ∪ b of f†(F).
  bool exact = true;
  for (std::size_t a = 0; a < size && exact; ++a)
    for (std::size_t b = 0; b < size && exact; ++b) {
      Rational zdz = 0;
      for (std::size_t F = 0; F < size; ++F)
        if ((F & a) == a && (F & b) == b) zdz += report.mobius_diagonal[F];
      exact = zdz == values[a | b];
    }
  report.factorization_exact = exact;

  report.psd = true;
  for (std::size_t F = 0; F < size; ++F) {
    if (report.mobius_diagonal[F] >= 0) continue;
    report.psd = false;
    report.witness_graph = report.index[F];
    // Z^T u = e_F gives u_G = (-1)^{|G \ F|} for G ⊇ F, so u^T M u = f†(F).
    report.witness_vector.assign(size, Rational(0));
    for (std::size_t G = 0; G < size; ++G)
      if ((G & F) == F)
        report.witness_vector[G] = (std::popcount(G & ~F) % 2 == 0) ? 1 : -1;
    Rational q = 0;
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = 0; b < size; ++b)
        if (report.witness_vector[a] != 0 && report.witness_vector[b] != 0)
          q += report.witness_vector[a] * report.witness_vector[b] * values[a | b];
    report.witness_value = q;
    break;
  }
  return report;
}

}  // namespace graphlim
