#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "test_support.hpp"

using namespace graphlim;

TEST_CASE("class counts match the known sequence") {
  const std::vector<std::size_t> expected{1, 1, 2, 4, 11, 34, 156, 1044};
  for (int n = 0; n <= 7; ++n) CHECK(enumerate_unlabeled(n).size() == expected[n]);
}

TEST_CASE("canonical form agrees with brute-force isomorphism on 5 nodes") {
  CounterRng rng(11);
  std::vector<Graph> pool;
  for (int i = 0; i < 60; ++i) pool.push_back(testing_support::random_graph(rng, 5, 0.5));
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i; j < pool.size(); ++j) {
      const bool expected = oracle::isomorphic(pool[i], pool[j]);
      CHECK(isomorphic(pool[i], pool[j]) == expected);
      CHECK((canonical_form(pool[i]) == canonical_form(pool[j])) == expected);
    }
}

TEST_CASE("canonical form is invariant under random relabelling") {
  CounterRng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    Graph g = testing_support::random_graph(rng, n, 0.4);
    if (n >= 2) {
      g.set_label(0, 1);
      g.set_label(1, 2);
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Graph h = g.permuted(perm);
    CHECK(canonical_form(g) == canonical_form(h));
    CHECK(canonical_graph(g) == canonical_graph(h));
  }
}

TEST_CASE("labels separate otherwise isomorphic graphs") {
  Graph a = Graph::path(3);  // 0-1-2
  Graph b = Graph::path(3);
  a.set_label(0, 1);  // endpoint
  b.set_label(1, 1);  // middle
  CHECK_FALSE(isomorphic(a, b));
  CHECK(oracle::isomorphic(a, b) == false);
}

TEST_CASE("automorphism counts") {
  CHECK(automorphism_count(Graph::complete(4)) == 24);
  CHECK(automorphism_count(Graph::cycle(5)) == 10);
  CHECK(automorphism_count(Graph::path(4)) == 2);
  CHECK(automorphism_count(Graph::complete_bipartite(2, 3)) == 12);
  CounterRng rng(3);
  for (int i = 0; i < 20; ++i) {
    const Graph g = testing_support::random_graph(rng, 6, 0.5);
    CHECK(automorphism_count(g) == oracle::automorphisms(g));
  }
}

TEST_CASE("orbit-stabilizer: labeled copies of each class sum to 2^(n choose 2)") {
  for (int n = 1; n <= 6; ++n) {
    std::uint64_t total = 0, factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= i;
    for (const Graph& g : enumerate_unlabeled(n)) total += factorial / automorphism_count(g);
    CHECK(total == (std::uint64_t{1} << pair_count(n)));
  }
}

TEST_CASE("mask class table is consistent with canonical forms") {
  const int n = 5;
  const auto& table = mask_class_table(n);
  const auto& classes = enumerate_unlabeled(n);
  for (std::uint32_t mask = 0; mask < (1U << pair_count(n)); mask += 7)
    CHECK(isomorphic(graph_from_mask(n, mask), classes[table[mask]]));
}

TEST_CASE("graph_from_mask agrees with the oracle and edge_mask inverts it") {
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    CHECK(graph_from_mask(4, mask) == oracle::from_mask(4, mask));
    CHECK(edge_mask(flat_graph(4, mask)) == mask);
  }
}

TEST_CASE("glue identifies equal labels and collapses duplicate edges") {
  const Graph a = flat_graph(2, 1);  // labeled K2
  const Graph b = flat_graph(2, 1);
  const Graph c = glue(a, b);
  CHECK(c.order() == 2);
  CHECK(c.size() == 1);

  Graph p = Graph::path(3);  // 0-1-2, ends labeled
  p.set_label(0, 1);
  p.set_label(2, 2);
  const Graph cycle = glue(p, p);
  CHECK(cycle.order() == 4);
  CHECK(isomorphic(cycle.without_labels(), Graph::cycle(4)));
}

TEST_CASE("drop_isolates removes labeled and unlabeled isolated nodes") {
  Graph g = Graph::complete(2).with_isolated(3);
  g.set_label(4, 1);
  const Graph h = drop_isolates(g);
  CHECK(h.order() == 2);
  CHECK(h.size() == 1);
}

TEST_CASE("graph6 round-trip and known encodings") {
  CHECK(to_graph6(Graph::complete(3)) == "Bw");
  const Graph petersen = from_graph6("IheA@GUAo");
  CHECK(petersen.order() == 10);
  CHECK(petersen.size() == 15);
  for (int v = 0; v < 10; ++v) CHECK(petersen.degree(v) == 3);
  CHECK(automorphism_count(petersen) == 120);
  CHECK(from_graph6(">>graph6<<Bw\n") == Graph::complete(3));

  CounterRng rng(8);
  for (int i = 0; i < 30; ++i) {
    const Graph g = testing_support::random_graph(rng, 1 + static_cast<int>(rng.below(40)), 0.3);
    CHECK(from_graph6(to_graph6(g)) == g);
  }
}

TEST_CASE("malformed graph6 is rejected") {
  CHECK_THROWS_AS(from_graph6(""), ParseError);
  CHECK_THROWS_AS(from_graph6("B"), ParseError);
  CHECK_THROWS_AS(from_graph6("B\x01"), ParseError);
}

TEST_CASE("caps and label rules are enforced") {
  CHECK_THROWS_AS(Graph(kMaxNodes + 1), CapExceeded);
  CHECK_THROWS_AS(canonical_form(Graph(kMaxCanonicalNodes + 1)), CapExceeded);
  Graph g(3);
  g.set_label(0, 1);
  CHECK_THROWS_AS(g.set_label(1, 1), DomainError);
  CHECK_THROWS(g.add_edge(0, 0));
}
