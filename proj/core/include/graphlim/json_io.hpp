#pragma once

#include <nlohmann/json.hpp>

#include "graphlim/algebra.hpp"
#include "graphlim/certify.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/parameter.hpp"
#include "graphlim/random_model.hpp"
#include "graphlim/rational.hpp"

namespace graphlim {

using Json = nlohmann::ordered_json;

// Every parser throws ParseError on malformed input and DomainError when
// the decoded object violates a mathematical invariant.

Json rational_to_json(const Rational& q);  // "p/q"
Rational rational_from_json(const Json& j);  // "p/q", integer or decimal string, or a number

/// {"n": 3, "edges": [[0,1],[1,2]], "labels": {"0": 1}}; "labels" is omitted
/// when empty. {"graph6": "Bw"} is accepted on input.
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// {"widths": ["1/2","1/2"], "values": [["0","1"],["1","0"]]}; a bare
/// rational is read as the constant graphon.
Json graphon_to_json(const StepGraphon& w);
StepGraphon graphon_from_json(const Json& j);

/// {"atoms": [{"p": "1/2", "graphon": {...}}, ...]}; a graphon object is
/// read as a singleton model.
Json model_to_json(const RandomGraphonModel& model);
RandomGraphonModel model_from_json(const Json& j);

/// {"cap": 4, "table": {"<graph6>": "p/q", ...}}.
Json parameter_to_json(const GraphParameter& f);
GraphParameter parameter_from_json(const Json& j);

/// [{"graph": {...}, "coeff": "p/q"}, ...].
Json quantum_graph_to_json(const QuantumGraph& x);
QuantumGraph quantum_graph_from_json(const Json& j);

Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

Json finite_model_to_json(const FiniteRandomModel& model);

}  // namespace graphlim
