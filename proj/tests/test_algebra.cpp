#include <doctest.h>

#include "oracles.hpp"
#include "test_support.hpp"

using namespace graphlim;
using testing_support::random_flat;

namespace {

QuantumGraph edge2() { return QuantumGraph::of(flat_graph(2, 1)); }
QuantumGraph empty2() { return QuantumGraph::of(flat_graph(2, 0)); }

/// t([[y^2]], G) for flat y, summing (sum_a c_a [a ⊆ phi*(G)])^2 over all
/// maps phi from the labels into V(G).
Rational localized_square(const std::vector<Rational>& coeffs, int k, const Graph& g) {
  Rational total = 0;
  oracle::for_each_map(k, g.order(), [&](const std::vector<int>& phi) {
    std::uint32_t present = 0;
    int bit = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j, ++bit)
        if (phi[i] != phi[j] && g.adjacent(phi[i], phi[j])) present |= 1U << bit;
    Rational value = 0;
    for (std::uint32_t a = 0; a < coeffs.size(); ++a)
      if ((a & present) == a) value += coeffs[a];
    total += value * value;
  });
  Rational denom = 1;
  for (int i = 0; i < k; ++i) denom *= g.order();
  return total / denom;
}

}  // namespace

TEST_CASE("gluing the labeled edge with itself is idempotent") {
  CHECK(qg_product(edge2(), edge2()) == edge2());
  CHECK(square_and_unlabel(edge2()) == QuantumGraph::of(Graph::complete(2)));
}

TEST_CASE("(U2 + K2)(U2 - K2) = U2 - K2") {
  CHECK(qg_product(empty2() + edge2(), empty2() - edge2()) == empty2() - edge2());
}

TEST_CASE("square of U2 - K2 simplifies to K0 - K2") {
  QuantumGraph expected(0);
  expected.add(Graph(), 1);
  expected.add(Graph::complete(2), -1);
  CHECK(square_and_unlabel(empty2() - edge2()) == expected);
}

TEST_CASE("product is bilinear, commutative and associative") {
  CounterRng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 2 + trial % 2;
    const QuantumGraph x = random_flat(rng, k, 3, 4);
    const QuantumGraph y = random_flat(rng, k, 3, 4);
    const QuantumGraph z = random_flat(rng, k, 3, 4);
    CHECK(qg_product(x * Rational(2), y) == qg_product(x, y) * Rational(2));
    CHECK(qg_product(x, y) == qg_product(y, x));
    CHECK(qg_product(qg_product(x, y), z) == qg_product(x, qg_product(y, z)));
    CHECK(qg_product(x, y + z) == qg_product(x, y) + qg_product(x, z));
  }
  CHECK_THROWS_AS(qg_product(edge2(), QuantumGraph::of(flat_graph(3, 1))), DomainError);
}

TEST_CASE("flat fast path matches the generic square") {
  CounterRng rng(2);
  for (int k = 1; k <= 4; ++k)
    for (int trial = 0; trial < 3; ++trial) {
      const QuantumGraph y = random_flat(rng, k, 4, 6);
      CHECK(square_and_unlabel(y) == simplify_iso(unlabel(qg_product(y, y))));
    }
  // Non-flat input takes the generic path.
  Graph g = Graph::path(3);
  g.set_label(0, 1);
  g.set_label(1, 2);
  const QuantumGraph y = QuantumGraph::of(g) - edge2();
  CHECK(square_and_unlabel(y) == simplify_iso(unlabel(qg_product(y, y))));
}

TEST_CASE("squares evaluate nonnegatively and match the localized sum") {
  CounterRng rng(3);
  std::vector<Graph> corpus = enumerate_unlabeled_up_to(5);
  for (int i = 0; i < 6; ++i) corpus.push_back(testing_support::random_graph(rng, 6, 0.5));
  for (int k = 2; k <= 3; ++k) {
    std::vector<Rational> coeffs(std::size_t{1} << pair_count(k));
    for (auto& c : coeffs) c = testing_support::random_rational(rng, 3, 4);
    const QuantumGraph sq = square_and_unlabel(QuantumGraph::flat(k, coeffs));
    for (const Graph& g : corpus) {
      if (g.order() == 0) continue;
      const Rational value = evaluate(sq, g);
      CHECK(value >= 0);
      CHECK(value == localized_square(coeffs, k, g));
    }
  }
}

TEST_CASE("simplify_iso collapses isolated nodes") {
  CHECK(simplify_iso(QuantumGraph::of(Graph::empty(5))) == QuantumGraph::of(Graph()));
  QuantumGraph x(0);
  x.add(Graph::complete(2), 1);
  x.add(Graph::complete(2).with_isolated(1), 1);
  CHECK(simplify_iso(x) == QuantumGraph::of(Graph::complete(2), 2));
  CHECK(simplify_iso(simplify_iso(x)) == simplify_iso(x));
}

TEST_CASE("simplify_iso preserves evaluation against graphon parameters") {
  CounterRng rng(4);
  const GraphParameter f = from_graphon(testing_support::random_graphon(rng, 3), 5);
  QuantumGraph x(0);
  for (int n = 0; n <= 5; ++n)
    for (const Graph& g : enumerate_unlabeled(n)) x.add(g, testing_support::random_rational(rng, 3, 5));
  CHECK(evaluate(simplify_iso(x), f) == evaluate(x, f));
}

TEST_CASE("l1 norm") {
  CHECK(l1_norm(QuantumGraph(0)) == 0);
  const QuantumGraph m = testing_support::mantel();
  CHECK(l1_norm(m) == Rational(5, 2));
  CHECK(l1_norm(m - m) == 0);
  QuantumGraph iso(0);
  iso.add(Graph::complete(2), 1);
  iso.add(Graph::complete(2).with_isolated(1), -1);
  CHECK(l1_norm(iso) == 0);
  CHECK(l1_norm(iso, Equivalence::kIsomorphism) == 2);

  CounterRng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const QuantumGraph a = square_and_unlabel(random_flat(rng, 2, 2, 3)) - m;
    const QuantumGraph b = square_and_unlabel(random_flat(rng, 2, 2, 3));
    CHECK(l1_norm(a + b) <= l1_norm(a) + l1_norm(b));
    CHECK(l1_norm(a * Rational(-3, 2)) == Rational(3, 2) * l1_norm(a));
  }
}

TEST_CASE("evaluation examples") {
  const QuantumGraph m = testing_support::mantel();
  for (const Rational& p : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}) {
    const Rational value = evaluate(m, StepGraphon::constant(p));
    CHECK(value == p * p * p - p + Rational(1, 2));
    CHECK(value >= 0);
  }
  CHECK(evaluate(QuantumGraph::of(Graph()), Graph::complete(4)) == 1);
  CHECK(evaluate(m, Graph::cycle(5)) == evaluate(m, graphon_of(Graph::cycle(5))));
  CHECK_THROWS_AS(evaluate(m, Graph()), DomainError);
  CHECK_THROWS_AS(evaluate(QuantumGraph::of(Graph::complete(5)), from_graphon(StepGraphon::constant(1), 4)),
                  CapExceeded);
  CHECK_THROWS_AS(evaluate(edge2(), Graph::complete(3)), DomainError);
}

TEST_CASE("lifting adds isolated labeled nodes without changing the square") {
  CounterRng rng(6);
  const QuantumGraph y = random_flat(rng, 2, 3, 4);
  const QuantumGraph lifted = lift_flat(y, 4);
  CHECK(lifted.labels() == 4);
  CHECK(lifted.is_flat());
  CHECK(square_and_unlabel(lifted) == square_and_unlabel(y));
}

TEST_CASE("arithmetic drops zero coefficients and rejects bad labels") {
  QuantumGraph x = edge2();
  x -= edge2();
  CHECK(x.is_zero());
  CHECK(x.terms().empty());
  Graph bad(2);
  bad.set_label(0, 2);
  CHECK_THROWS_AS(QuantumGraph::of(bad), DomainError);
  CHECK_THROWS_AS(edge2() + QuantumGraph::of(Graph::complete(2)), DomainError);
}
