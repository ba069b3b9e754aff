#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <graphlim/graphlim.hpp>

namespace testing_support {

using namespace graphlim;

/// Uniform p/q with |p| <= max_num, 1 <= q <= max_den.
inline Rational random_rational(CounterRng& rng, long max_num, long max_den, bool nonnegative = false) {
  const long num = nonnegative ? static_cast<long>(rng.below(max_num + 1))
                               : static_cast<long>(rng.below(2 * max_num + 1)) - max_num;
  const long den = 1 + static_cast<long>(rng.below(max_den));
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Step graphon with `steps` random widths and values on a small grid.
inline StepGraphon random_graphon(CounterRng& rng, int steps) {
  std::vector<Rational> widths;
  Rational used = 0;
  std::vector<long> raw;
  long total = 0;
  for (int i = 0; i < steps; ++i) {
    raw.push_back(1 + static_cast<long>(rng.below(4)));
    total += raw.back();
  }
  for (long r : raw) {
    Rational w(r, total);
    w.canonicalize();
    widths.push_back(w);
  }
  std::vector<std::vector<Rational>> values(steps, std::vector<Rational>(steps));
  for (int i = 0; i < steps; ++i)
    for (int j = i; j < steps; ++j) {
      Rational v(static_cast<long>(rng.below(5)), 4);
      v.canonicalize();
      values[i][j] = values[j][i] = v;
    }
  return StepGraphon(std::move(widths), std::move(values));
}

/// Arbitrary rational table up to `cap` nodes.
inline GraphParameter random_table(CounterRng& rng, int cap, long max_num = 5, long max_den = 6) {
  return GraphParameter::tabulate(cap, [&](const Graph&) { return random_rational(rng, max_num, max_den); });
}

inline Graph random_graph(CounterRng& rng, int n, double p) {
  Graph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (rng.bernoulli(p)) g.add_edge(a, b);
  return g;
}

/// x = K3 - K2 + 1/2 K0.
inline QuantumGraph mantel() {
  QuantumGraph x(0);
  x.add(Graph::complete(3), 1);
  x.add(Graph::complete(2), -1);
  x.add(Graph(), Rational(1, 2));
  return x;
}

/// Random flat k-labeled quantum graph with denominators <= max_den.
inline QuantumGraph random_flat(CounterRng& rng, int k, long max_num, long max_den) {
  std::vector<Rational> coeffs(std::size_t{1} << pair_count(k));
  for (auto& c : coeffs) c = random_rational(rng, max_num, max_den);
  return QuantumGraph::flat(k, coeffs);
}

}  // namespace testing_support
