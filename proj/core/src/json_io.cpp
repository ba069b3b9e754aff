#include "graphlim/json_io.hpp"

#include <string>

#include "graphlim/error.hpp"
#include "graphlim/graph_io.hpp"

namespace graphlim {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing JSON field \"") + key + "\"");
  return j.at(key);
}

int int_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) return parse_rational(j.dump());
  throw ParseError("expected a rational as \"p/q\"");
}

Json graph_to_json(const Graph& g) {
  Json j;
  j["n"] = g.order();
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  if (!g.is_unlabeled()) {
    Json labels = Json::object();
    for (int v = 0; v < g.order(); ++v)
      if (g.label(v) != 0) labels[std::to_string(v)] = g.label(v);
    j["labels"] = std::move(labels);
  }
  return j;
}

Graph graph_from_json(const Json& j) {
  if (j.is_string()) return from_graph6(j.get<std::string>());
  if (j.is_object() && j.contains("graph6")) {
    if (!j.at("graph6").is_string()) throw ParseError("graph6 field must be a string");
    return from_graph6(j.at("graph6").get<std::string>());
  }
  const int n = int_from_json(field(j, "n"), "n");
  if (n < 0) throw ParseError("n must be nonnegative");
  require_cap("graph node", kMaxNodes, n);
  Graph g(n);
  if (j.contains("edges")) {
    const Json& edges = j.at("edges");
    if (!edges.is_array()) throw ParseError("edges must be an array");
    for (const Json& e : edges) {
      if (!e.is_array() || e.size() != 2) throw ParseError("each edge must be a pair [u, v]");
      const int u = int_from_json(e[0], "edge endpoint");
      const int v = int_from_json(e[1], "edge endpoint");
      if (u < 0 || v < 0 || u >= n || v >= n || u == v)
        throw ParseError("edge [" + std::to_string(u) + "," + std::to_string(v) + "] is invalid");
      g.add_edge(u, v);
    }
  }
  if (j.contains("labels")) {
    const Json& labels = j.at("labels");
    if (!labels.is_object()) throw ParseError("labels must be an object {node: label}");
    for (const auto& [key, value] : labels.items()) {
      int v = 0;
      try {
        v = std::stoi(key);
      } catch (const std::exception&) {
        throw ParseError("label key \"" + key + "\" is not a node index");
      }
      if (v < 0 || v >= n) throw ParseError("label on missing node " + key);
      try {
        g.set_label(v, int_from_json(value, "label"));
      } catch (const DomainError& e) {
        throw ParseError(e.what());
      }
    }
  }
  return g;
}

Json graphon_to_json(const StepGraphon& w) {
  Json j;
  Json widths = Json::array();
  for (const auto& q : w.widths()) widths.push_back(rational_to_json(q));
  Json values = Json::array();
  for (const auto& row : w.values()) {
    Json r = Json::array();
    for (const auto& q : row) r.push_back(rational_to_json(q));
    values.push_back(std::move(r));
  }
  j["widths"] = std::move(widths);
  j["values"] = std::move(values);
  return j;
}

StepGraphon graphon_from_json(const Json& j) {
  if (j.is_string() || j.is_number()) return StepGraphon::constant(rational_from_json(j));
  if (j.is_object() && j.contains("constant")) return StepGraphon::constant(rational_from_json(j.at("constant")));
  const Json& widths = field(j, "widths");
  const Json& values = field(j, "values");
  if (!widths.is_array() || !values.is_array()) throw ParseError("widths and values must be arrays");
  std::vector<Rational> ws;
  for (const Json& q : widths) ws.push_back(rational_from_json(q));
  std::vector<std::vector<Rational>> vs;
  for (const Json& row : values) {
    if (!row.is_array()) throw ParseError("values must be a matrix");
    vs.emplace_back();
    for (const Json& q : row) vs.back().push_back(rational_from_json(q));
  }
  return StepGraphon(std::move(ws), std::move(vs));
}

Json model_to_json(const RandomGraphonModel& model) {
  Json atoms = Json::array();
  for (const auto& [p, w] : model.atoms())
    atoms.push_back(Json{{"p", rational_to_json(p)}, {"graphon", graphon_to_json(w)}});
  return Json{{"atoms", std::move(atoms)}};
}

RandomGraphonModel model_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("atoms")) return RandomGraphonModel::singleton(graphon_from_json(j));
  const Json& atoms = j.at("atoms");
  if (!atoms.is_array()) throw ParseError("atoms must be an array");
  std::vector<std::pair<Rational, StepGraphon>> out;
  for (const Json& atom : atoms)
    out.emplace_back(rational_from_json(field(atom, "p")), graphon_from_json(field(atom, "graphon")));
  return RandomGraphonModel(std::move(out));
}

Json parameter_to_json(const GraphParameter& f) {
  Json table = Json::object();
  for (int n = 0; n <= f.cap(); ++n)
    for (const Graph& g : enumerate_unlabeled(n)) table[to_graph6(g)] = rational_to_json(f(g));
  return Json{{"cap", f.cap()}, {"table", std::move(table)}};
}

GraphParameter parameter_from_json(const Json& j) {
  const int cap = int_from_json(field(j, "cap"), "cap");
  const Json& table = field(j, "table");
  if (!table.is_object()) throw ParseError("table must be an object {graph6: value}");
  std::map<CanonicalForm, Rational> values;
  for (const auto& [key, value] : table.items()) {
    Graph g = from_graph6(key);
    if (g.order() > cap) throw DomainError("table entry " + key + " exceeds the cap");
    auto [it, inserted] = values.emplace(canonical_form(g), rational_from_json(value));
    if (!inserted && it->second != rational_from_json(value))
      throw DomainError("conflicting values for isomorphic graphs in the table");
  }
  return GraphParameter(cap, std::move(values));
}

Json quantum_graph_to_json(const QuantumGraph& x) {
  Json out = Json::array();
  for (const auto& [form, term] : x.terms())
    out.push_back(Json{{"graph", graph_to_json(term.graph)}, {"coeff", rational_to_json(term.coeff)}});
  return out;
}

QuantumGraph quantum_graph_from_json(const Json& j) {
  const Json& terms = j.is_object() && j.contains("terms") ? j.at("terms") : j;
  if (!terms.is_array()) throw ParseError("a quantum graph is a list of {graph, coeff}");
  std::optional<QuantumGraph> out;
  for (const Json& term : terms) {
    Graph g = graph_from_json(field(term, "graph"));
    Rational c = term.contains("coeff") ? rational_from_json(term.at("coeff")) : Rational(1);
    if (!out) out.emplace(g.labeled_count());
    out->add(g, c);
  }
  return out ? *out : QuantumGraph(0);
}

Json certificate_to_json(const Certificate& cert) {
  Json ys = Json::array();
  for (const auto& term : cert.ys)
    ys.push_back(Json{{"weight", rational_to_json(term.weight)}, {"y", quantum_graph_to_json(term.y)}});
  const SolverTelemetry& t = cert.telemetry;
  Json telemetry{{"method", t.method},
                 {"iterations", t.iterations},
                 {"drift", t.drift},
                 {"converged", t.converged},
                 {"dual_bound", rational_to_json(t.dual_bound)},
                 {"rank", t.rank},
                 {"dropped_pivots", t.dropped_pivots},
                 {"psd_repair", rational_to_json(t.psd_repair)},
                 {"lifted_from", t.lifted_from}};
  return Json{{"m", cert.m},
              {"ys", std::move(ys)},
              {"residual", quantum_graph_to_json(cert.residual)},
              {"residual_norm", rational_to_json(cert.residual_norm)},
              {"certified_bound", rational_to_json(cert.certified_bound)},
              {"telemetry", std::move(telemetry)}};
}

Certificate certificate_from_json(const Json& j) {
  Certificate cert;
  cert.m = int_from_json(field(j, "m"), "m");
  const Json& ys = field(j, "ys");
  if (!ys.is_array()) throw ParseError("ys must be an array");
  for (const Json& term : ys) {
    QuantumGraph y = quantum_graph_from_json(field(term, "y"));
    if (y.is_zero()) y = QuantumGraph(cert.m);
    cert.ys.push_back({rational_from_json(field(term, "weight")), std::move(y)});
  }
  cert.residual = quantum_graph_from_json(field(j, "residual"));
  cert.residual_norm = rational_from_json(field(j, "residual_norm"));
  cert.certified_bound = rational_from_json(field(j, "certified_bound"));
  if (j.contains("telemetry")) {
    const Json& t = j.at("telemetry");
    cert.telemetry.method = t.value("method", "");
    cert.telemetry.iterations = t.value("iterations", 0);
    cert.telemetry.drift = t.value("drift", 0.0);
    cert.telemetry.converged = t.value("converged", false);
    if (t.contains("dual_bound")) cert.telemetry.dual_bound = rational_from_json(t.at("dual_bound"));
    cert.telemetry.rank = t.value("rank", std::size_t{0});
    cert.telemetry.dropped_pivots = t.value("dropped_pivots", std::size_t{0});
    if (t.contains("psd_repair")) cert.telemetry.psd_repair = rational_from_json(t.at("psd_repair"));
    cert.telemetry.lifted_from = t.value("lifted_from", 0);
  }
  return cert;
}

Json finite_model_to_json(const FiniteRandomModel& model) {
  Json classes = Json::array();
  for (const auto& [form, entry] : model.classes())
    classes.push_back(Json{{"graph", graph_to_json(entry.representative)},
                           {"graph6", to_graph6(entry.representative)},
                           {"probability", rational_to_json(entry.probability)},
                           {"labeled_copies", entry.labeled_count},
                           {"labeled_probability",
                            rational_to_json(entry.probability /
                                             Rational(static_cast<unsigned long>(entry.labeled_count)))}});
  return Json{{"n", model.order()}, {"classes", std::move(classes)}};
}

}  // namespace graphlim
