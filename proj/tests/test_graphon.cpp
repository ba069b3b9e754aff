#include <doctest.h>

#include "oracles.hpp"
#include "test_support.hpp"

using namespace graphlim;

TEST_CASE("cut norm of W_K2 - 1/2 is 1/8") {
  const StepKernel w = shifted(graphon_of(Graph::complete(2)), Rational(-1, 2));
  CHECK(cut_norm(w) == Rational(1, 8));
  CHECK(oracle::cut_norm(w) == Rational(1, 8));
}

TEST_CASE("cut norm agrees with brute force over step subsets") {
  CounterRng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const StepGraphon a = testing_support::random_graphon(rng, 1 + static_cast<int>(rng.below(4)));
    const StepGraphon b = testing_support::random_graphon(rng, 1 + static_cast<int>(rng.below(3)));
    const StepKernel d = difference(a, b);
    CHECK(cut_norm(d) == oracle::cut_norm(d));
  }
}

TEST_CASE("cut norm of a nonnegative kernel is its integral") {
  CounterRng rng(2);
  const StepGraphon w = testing_support::random_graphon(rng, 4);
  CHECK(cut_norm(w) == t_graphon(Graph::complete(2), w));
}

TEST_CASE("difference refines steps") {
  const StepGraphon a({Rational(1, 3), Rational(2, 3)}, {{1, 0}, {0, 1}});
  const StepGraphon b = StepGraphon::constant(Rational(1, 2));
  const StepKernel d = difference(a, b);
  CHECK(oracle::cut_norm(d) == cut_norm(d));
  CHECK(t_graphon(Graph::complete(2), a) - Rational(1, 2) ==
        oracle::graphon_density(Graph::complete(2), d));
}

TEST_CASE("cut distance upper bound") {
  CHECK(cut_distance_graphs(Graph::path(3), Graph::path(3).permuted(std::vector<int>{2, 0, 1})) == 0);
  const Rational d = cut_distance_graphs(Graph::complete(3), Graph::empty(3));
  CHECK(d == t(Graph::complete(2), Graph::complete(3)));
  CHECK_THROWS_AS(cut_distance_graphs(Graph::complete(3), Graph::complete(4)), DomainError);
}

TEST_CASE("graphon validation") {
  CHECK_THROWS_AS(StepGraphon({Rational(1, 2)}, {{1}}), DomainError);
  CHECK_THROWS_AS(StepGraphon({Rational(1, 2), Rational(1, 2)}, {{0, 1}, {0, 0}}), DomainError);
  CHECK_THROWS_AS(StepGraphon::constant(Rational(3, 2)), DomainError);
  CHECK_THROWS_AS(RandomGraphonModel({{Rational(1, 2), StepGraphon::constant(0)}}), DomainError);
}

TEST_CASE("sample_atom follows the listed probabilities") {
  const RandomGraphonModel model({{Rational(1, 4), StepGraphon::constant(0)},
                                  {Rational(3, 4), StepGraphon::constant(1)}});
  CounterRng rng(9);
  int second = 0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) second += sample_atom(model, rng) == 1;
  CHECK(static_cast<double>(second) / draws == doctest::Approx(0.75).epsilon(0.02));
}
