#include <doctest.h>

#include "test_support.hpp"

using namespace graphlim;

TEST_CASE("rationals serialize as p/q and accept decimals") {
  CHECK(rational_to_json(Rational(-3, 4)) == Json("-3/4"));
  CHECK(rational_from_json(Json("0.125")) == Rational(1, 8));
  CHECK(rational_from_json(Json(2)) == 2);
  CHECK(rational_from_json(Json("6/8")) == Rational(3, 4));
  CHECK_THROWS_AS(rational_from_json(Json("1/0")), ParseError);
  CHECK_THROWS_AS(rational_from_json(Json("abc")), ParseError);
}

TEST_CASE("graph round-trip keeps labels") {
  Graph g = Graph::cycle(5);
  g.set_label(2, 1);
  g.set_label(4, 2);
  CHECK(graph_from_json(graph_to_json(g)) == g);
  CHECK(graph_from_json(Json{{"graph6", "Bw"}}) == Graph::complete(3));
  CHECK_THROWS_AS(graph_from_json(Json{{"n", 2}, {"edges", {{0, 5}}}}), ParseError);
  CHECK_THROWS_AS(graph_from_json(Json::array()), ParseError);
}

TEST_CASE("graphon, model and parameter round-trips") {
  CounterRng rng(1);
  const StepGraphon w = testing_support::random_graphon(rng, 3);
  CHECK(graphon_from_json(graphon_to_json(w)) == w);
  CHECK(graphon_from_json(Json("1/2")) == StepGraphon::constant(Rational(1, 2)));

  const RandomGraphonModel model({{Rational(1, 3), w}, {Rational(2, 3), StepGraphon::constant(1)}});
  const RandomGraphonModel back = model_from_json(model_to_json(model));
  REQUIRE(back.atoms().size() == 2);
  CHECK(back.atoms()[0].first == Rational(1, 3));
  CHECK(back.atoms()[0].second == w);
  CHECK(model_from_json(graphon_to_json(w)).is_singleton());

  const GraphParameter f = from_graphon(w, 4);
  CHECK(parameter_from_json(parameter_to_json(f)) == f);
}

TEST_CASE("quantum graph and certificate round-trips") {
  const QuantumGraph m = testing_support::mantel();
  CHECK(quantum_graph_from_json(quantum_graph_to_json(m)) == m);

  const Certificate cert = mobius_certificate(m, 3);
  const Certificate back = certificate_from_json(certificate_to_json(cert));
  CHECK(back.m == cert.m);
  CHECK(back.residual_norm == cert.residual_norm);
  REQUIRE(back.ys.size() == cert.ys.size());
  for (std::size_t i = 0; i < back.ys.size(); ++i) {
    CHECK(back.ys[i].weight == cert.ys[i].weight);
    CHECK(back.ys[i].y == cert.ys[i].y);
  }
  CHECK(verify_certificate(m, back).ok);
}

TEST_CASE("domain violations surface as DomainError") {
  const Json short_widths = Json::parse(R"({"widths": ["1/2", "1/4"], "values": [["0", "0"], ["0", "0"]]})");
  CHECK_THROWS_AS(graphon_from_json(short_widths), DomainError);
  const Json asymmetric = Json::parse(R"({"widths": ["1/2", "1/2"], "values": [["0", "1"], ["0", "0"]]})");
  CHECK_THROWS_AS(graphon_from_json(asymmetric), DomainError);
}
