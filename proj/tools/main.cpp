// graphlim command-line tool: one subcommand per library operation, JSON in
// and out. Exit status 0 on success, 1 on domain errors (including caps),
// 2 on usage errors and unreadable or malformed input.

#include <CLI11.hpp>

#include <functional>
#include <iostream>

#include "cli_support.hpp"

using namespace graphlim;
using namespace graphlim::cli;

namespace {

struct Context {
  std::string format = "json";
  std::string out;
  int status = 0;
  std::function<Json()> action;
};

Json flat_index_to_json(const std::vector<Graph>& index) {
  Json out = Json::array();
  for (const Graph& g : index) out.push_back(graph_to_json(g));
  return out;
}

void add_density(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("density", "homomorphism density t(F, G) or t(F, W)");
  auto f = std::make_shared<std::string>();
  auto g = std::make_shared<std::string>();
  auto w = std::make_shared<std::string>();
  auto injective = std::make_shared<bool>(false);
  cmd->add_option("--F", *f, "pattern graph (file or g6:<graph6>)")->required();
  auto* g_opt = cmd->add_option("--G", *g, "target graph (file or g6:<graph6>)");
  auto* w_opt = cmd->add_option("--W", *w, "target step graphon (JSON file)");
  g_opt->excludes(w_opt);
  cmd->add_flag("--injective", *injective, "injective density t_inj(F, G)");
  cmd->callback([=, &ctx] {
    ctx.action = [=]() -> Json {
      const Graph pattern = read_graph(*f);
      if (!w->empty()) {
        if (*injective) throw ParseError("--injective needs a graph target");
        return Json{{"t", rational_to_json(t_graphon(pattern, graphon_from_json(read_json(*w))))}};
      }
      if (g->empty()) throw ParseError("a target is required: --G or --W");
      const Graph target = read_graph(*g);
      if (*injective) return Json{{"t_inj", rational_to_json(t_inj(pattern, target))}};
      return Json{{"t", rational_to_json(t(pattern, target))}};
    };
  });
}

void add_cutnorm(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("cutnorm", "exact cut norm of W, or of W - U");
  auto w = std::make_shared<std::string>();
  auto u = std::make_shared<std::string>();
  auto g = std::make_shared<std::string>();
  cmd->add_option("--W", *w, "step graphon (JSON file)");
  cmd->add_option("--G", *g, "use the graphon W_G of a graph instead of --W");
  cmd->add_option("--U", *u, "subtract this step graphon (JSON file)");
  cmd->callback([=, &ctx] {
    ctx.action = [=]() -> Json {
      if (w->empty() == g->empty()) throw ParseError("give exactly one of --W and --G");
      const StepGraphon first = w->empty() ? graphon_of(read_graph(*g)) : graphon_from_json(read_json(*w));
      const StepKernel kernel =
          u->empty() ? StepKernel(first) : difference(first, graphon_from_json(read_json(*u)));
      return Json{{"cut_norm", rational_to_json(cut_norm(kernel))}};
    };
  });
}

void add_cutdist(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("cutdist", "cut distance upper bound between equal-order graphs");
  auto g1 = std::make_shared<std::string>();
  auto g2 = std::make_shared<std::string>();
  cmd->add_option("--G1", *g1)->required();
  cmd->add_option("--G2", *g2)->required();
  cmd->callback([=, &ctx] {
    ctx.action = [=]() -> Json {
      const Rational d = cut_distance_graphs(read_graph(*g1), read_graph(*g2));
      return Json{{"cut_distance_upper_bound", rational_to_json(d)}};
    };
  });
}

struct ParameterSource {
  std::string param;
  std::string graphon;
  int cap = kDefaultParameterCap;
};

void add_parameter_options(CLI::App* cmd, const std::shared_ptr<ParameterSource>& src) {
  cmd->add_option("--param", src->param, "parameter table (JSON file)");
  cmd->add_option("--graphon", src->graphon, "tabulate t(., W) for this step graphon");
  cmd->add_option("--cap", src->cap, "node cap when tabulating from --graphon");
}

void add_mobius(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("mobius", "Möbius transform f† of a parameter table");
  auto src = std::make_shared<ParameterSource>();
  auto inverse = std::make_shared<bool>(false);
  add_parameter_options(cmd, src);
  cmd->add_flag("--inverse", *inverse, "apply the inverse (zeta) transform instead");
  cmd->callback([=, &ctx] {
    ctx.action = [=]() -> Json {
      const GraphParameter f = read_parameter(src->param, src->graphon, src->cap);
      return parameter_to_json(*inverse ? mobius_inverse(f) : mobius(f));
    };
  });
}

void add_psd_test(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("psd-test", "flat connection matrix PSD test via f†");
  auto src = std::make_shared<ParameterSource>();
  auto k = std::make_shared<int>(2);
  add_parameter_options(cmd, src);
  cmd->add_option("--k", *k, "label count (<= 4)");
  cmd->callback([=, &ctx] {
    ctx.action = [=]() -> Json {
      const GraphParameter f = read_parameter(src->param, src->graphon, src->cap);
      const FlatPsdReport report = flat_psd_test(f, *k);
      const ConnectionMatrix m = connection_matrix(f, *k, 0);
      const bool ldl_psd = exact_psd_test(m.entries).psd;
      Json diag = Json::array();
      for (const auto& q : report.mobius_diagonal) diag.push_back(rational_to_json(q));
      Json out{{"k", report.k},
               {"psd", report.psd},
               {"factorization_exact", report.factorization_exact},
               {"ldl_psd", ldl_psd},
               {"ldl_agrees", ldl_psd == report.psd},
               {"index", flat_index_to_json(report.index)},
               {"mobius_diagonal", std::move(diag)}};
      if (report.witness_graph) {
        Json vec = Json::array();
        for (const auto& q : report.witness_vector) vec.push_back(rational_to_json(q));
        out["witness"] = Json{{"graph", graph_to_json(*report.witness_graph)},
                              {"vector", std::move(vec)},
                              {"value", rational_to_json(report.witness_value)}};
      }
      return out;
    };
  });
}

void add_connmat(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("connmat", "finite connection matrix of a parameter");
  auto src = std::make_shared<ParameterSource>();
  auto k = std::make_shared<int>(1);
  auto extra = std::make_shared<int>(1);
  add_parameter_options(cmd, src);
  cmd->add_option("--k", *k, "label count");
  cmd->add_option("--extra", *extra, "unlabeled nodes allowed in index graphs");
  cmd->callback([=, &ctx] {
    ctx.action = [=]() -> Json {
      const GraphParameter f = read_parameter(src->param, src->graphon, src->cap);
      const ConnectionMatrix m = connection_matrix(f, *k, *extra);
      Json rows = Json::array();
      for (std::size_t i = 0; i < m.entries.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.entries.cols(); ++j) row.push_back(rational_to_json(m.entries(i, j)));
        rows.push_back(std::move(row));
      }
      const PsdTestResult psd = exact_psd_test(m.entries);
      return Json{{"k", m.k}, {"index", flat_index_to_json(m.index)}, {"matrix", std::move(rows)},
                  {"psd", psd.psd}};
    };
  });
}

void add_model(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("model", "finite random graph model P(G_n = F) = f†(F)");
  auto src = std::make_shared<ParameterSource>();
  auto n = std::make_shared<int>(3);
  add_parameter_options(cmd, src);
  cmd->add_option("--n", *n, "node count");
  cmd->callback([=, &ctx] {
    ctx.action = [=]() -> Json {
      const GraphParameter f = read_parameter(src->param, src->graphon, src->cap);
      const FiniteRandomModel model = model_from_parameter(f, *n);
      Json out = finite_model_to_json(model);
      if (*n + 1 <= f.cap()) {
        const ConsistencyReport report = check_consistency(model, model_from_parameter(f, *n + 1));
        out["consistent_with_next"] = report.consistent;
      }
      return out;
    };
  });
}

void add_sample(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("sample", "prefix G_n of a countable random graph");
  auto model = std::make_shared<std::string>();
  auto n = std::make_shared<int>(8);
  auto seed = std::make_shared<std::uint64_t>(0);
  cmd->add_option("--model", *model, "random graphon model or graphon (JSON file)")->required();
  cmd->add_option("--n", *n, "prefix size");
  cmd->add_option("--seed", *seed, "random seed")->required();
  cmd->callback([=, &ctx] {
    ctx.action = [=]() -> Json {
      PrefixSampler sampler(model_from_json(read_json(*model)), *seed);
      const Graph g = sampler.sample_prefix(*n);
      return Json{{"n", g.order()}, {"atom", sampler.atom()}, {"graph6", to_graph6(g)},
                  {"graph", graph_to_json(g)}};
    };
  });
}

void add_locality(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("test-locality", "covariance of 1[G[S] ≅ F] and 1[G[T] ≅ F]");
  auto model = std::make_shared<std::string>();
  auto s = std::make_shared<std::string>();
  auto t_nodes = std::make_shared<std::string>();
  auto f = std::make_shared<std::string>();
  auto samples = std::make_shared<std::uint64_t>(10000);
  auto seed = std::make_shared<std::uint64_t>(0);
  auto threshold = std::make_shared<double>(kDefaultZThreshold);
  cmd->add_option("--model", *model)->required();
  cmd->add_option("--S", *s, "comma-separated node list")->required();
  cmd->add_option("--T", *t_nodes, "comma-separated node list")->required();
  cmd->add_option("--F", *f, "pattern graph (file or g6:<graph6>)")->required();
  cmd->add_option("--samples", *samples);
  cmd->add_option("--seed", *seed)->required();
  cmd->add_option("--z-threshold", *threshold);
  cmd->callback([=, &ctx] {
    ctx.action = [=]() -> Json {
      const LocalityEstimate est = locality_test(model_from_json(read_json(*model)), parse_int_list(*s),
                                                 parse_int_list(*t_nodes), read_graph(*f), *samples, *seed);
      return Json{{"covariance", est.covariance},
                  {"standard_error", est.standard_error},
                  {"batch_standard_error", est.batch_standard_error},
                  {"z", est.z},
                  {"mean_s", est.mean_s},
                  {"mean_t", est.mean_t},
                  {"samples", est.samples},
                  {"local", std::fabs(est.z) <= *threshold}};
    };
  });
}

void add_trace(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("trace-convergence", "density discrepancy along one prefix sequence");
  auto model = std::make_shared<std::string>();
  auto sizes = std::make_shared<std::string>("8,16,32,64");
  auto seed = std::make_shared<std::uint64_t>(0);
  cmd->add_option("--model", *model, "singleton model or graphon (JSON file)")->required();
  cmd->add_option("--sizes", *sizes, "comma-separated prefix sizes");
  cmd->add_option("--seed", *seed)->required();
  cmd->callback([=, &ctx] {
    ctx.action = [=]() -> Json {
      PrefixSampler sampler(model_from_json(read_json(*model)), *seed);
      Json trace = Json::array();
      for (const TracePoint& p : convergence_trace(sampler, parse_int_list(*sizes)))
        trace.push_back(Json{{"n", p.n}, {"discrepancy", p.discrepancy}});
      return Json{{"trace", std::move(trace)}};
    };
  });
}

void add_qeval(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("qeval", "evaluate a quantum graph on a graph, graphon or parameter");
  auto input = std::make_shared<std::string>();
  auto g = std::make_shared<std::string>();
  auto w = std::make_shared<std::string>();
  auto param = std::make_shared<std::string>();
  cmd->add_option("--input", *input, "quantum graph (JSON file)")->required();
  cmd->add_option("--G", *g, "graph target");
  cmd->add_option("--W", *w, "step graphon target (JSON file)");
  cmd->add_option("--param", *param, "parameter table target (JSON file)");
  cmd->callback([=, &ctx] {
    ctx.action = [=]() -> Json {
      const QuantumGraph x = quantum_graph_from_json(read_json(*input));
      const int targets = !g->empty() + !w->empty() + !param->empty();
      if (targets != 1) throw ParseError("give exactly one of --G, --W, --param");
      Rational value;
      if (!g->empty())
        value = evaluate(x, read_graph(*g));
      else if (!w->empty())
        value = evaluate(x, graphon_from_json(read_json(*w)));
      else
        value = evaluate(x, parameter_from_json(read_json(*param)));
      return Json{{"value", rational_to_json(value)}, {"l1_norm", rational_to_json(l1_norm(x))},
                  {"simplified", quantum_graph_to_json(simplify_iso(x))}};
    };
  });
}

void add_certify(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("certify", "search a sum-of-squares certificate for x >= 0");
  auto input = std::make_shared<std::string>();
  auto m = std::make_shared<int>(3);
  auto eps = std::make_shared<double>(0.05);
  auto seed = std::make_shared<std::uint64_t>(0);
  auto method = std::make_shared<std::string>("search");
  auto config = std::make_shared<SolverConfig>();
  auto no_lift = std::make_shared<bool>(false);
  auto dykstra = std::make_shared<bool>(false);
  cmd->add_option("--input", *input, "quantum graph (JSON file)")->required();
  cmd->add_option("--m", *m, "label count (<= 4)");
  cmd->add_option("--eps", *eps, "report whether residual_norm < eps");
  cmd->add_option("--seed", *seed)->required();
  cmd->add_option("--method", *method, "search | mobius")->check(CLI::IsMember({"search", "mobius"}));
  cmd->add_option("--max-iterations", config->max_iterations);
  cmd->add_option("--tolerance", config->tolerance);
  cmd->add_option("--grid", config->grid_denominator, "rounding denominator for solver output");
  cmd->add_option("--margin", config->interior_margin, "extra K0 mass in the solver target");
  cmd->add_flag("--no-lift", *no_lift, "do not compare with the lifted m-1 certificate");
  cmd->add_flag("--dykstra", *dykstra, "Dykstra correction in the projection loop");
  cmd->add_option("--out", ctx.out, "write the certificate here");
  cmd->callback([=, &ctx] {
    ctx.action = [=]() -> Json {
      const QuantumGraph x = quantum_graph_from_json(read_json(*input));
      SolverConfig solver = *config;
      solver.lift = !*no_lift;
      solver.dykstra = *dykstra;
      log(LogLevel::kInfo, "certify: m = " + std::to_string(*m) + ", method " + *method);
      const Certificate cert =
          *method == "mobius" ? mobius_certificate(x, *m) : search_certificate({x, *m, solver, *seed});
      log(LogLevel::kInfo, "certify: residual norm ~ " + std::to_string(to_double(cert.residual_norm)));
      Json out = certificate_to_json(cert);
      out["eps"] = *eps;
      out["meets_eps"] = to_double(cert.residual_norm) < *eps;
      return out;
    };
  });
}

void add_verify(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("verify", "exact re-verification of a certificate");
  auto input = std::make_shared<std::string>();
  auto cert_path = std::make_shared<std::string>();
  auto seed = std::make_shared<std::uint64_t>(0);
  auto random_graphs = std::make_shared<int>(32);
  cmd->add_option("--input", *input, "quantum graph (JSON file)")->required();
  cmd->add_option("--cert", *cert_path, "certificate (JSON file)")->required();
  cmd->add_option("--seed", *seed, "seed for the random spot-check graphs");
  cmd->add_option("--random-graphs", *random_graphs);
  cmd->callback([=, &ctx] {
    ctx.action = [=, &ctx]() -> Json {
      const QuantumGraph x = quantum_graph_from_json(read_json(*input));
      const Certificate cert = certificate_from_json(read_json(*cert_path));
      const VerificationReport r = verify_certificate(x, cert, *seed, *random_graphs);
      if (!r.ok) ctx.status = 1;
      Json out{{"ok", r.ok},
               {"structure_valid", r.structure_valid},
               {"residual_matches", r.residual_matches},
               {"recomputed_norm", rational_to_json(r.recomputed_norm)},
               {"graphs_checked", r.graphs_checked},
               {"violations", r.violations},
               {"min_value", rational_to_json(r.min_value)},
               {"message", r.message}};
      if (r.violation) out["violation"] = graph_to_json(*r.violation);
      return out;
    };
  });
}

void add_disprove(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("disprove", "search a graph or graphon with t(x, .) < 0");
  auto input = std::make_shared<std::string>();
  auto budget = std::make_shared<int>(64);
  auto seed = std::make_shared<std::uint64_t>(0);
  cmd->add_option("--input", *input, "quantum graph (JSON file)")->required();
  cmd->add_option("--budget", *budget, "number of seeded graphon starts");
  cmd->add_option("--seed", *seed);
  cmd->callback([=, &ctx] {
    ctx.action = [=]() -> Json {
      const DisproveResult r = disprove(quantum_graph_from_json(read_json(*input)), *budget, *seed);
      Json out{{"found", r.witness.has_value()},
               {"graphs_checked", r.graphs_checked},
               {"graphon_starts", r.graphon_starts}};
      if (r.witness) {
        out["value"] = rational_to_json(r.witness->value);
        if (r.witness->graph)
          out["witness"] = Json{{"graph", graph_to_json(*r.witness->graph)}};
        else
          out["witness"] = Json{{"graphon", graphon_to_json(*r.witness->graphon)}};
      }
      return out;
    };
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphlim: graph limits, densities and sum-of-squares certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  app.add_option("--format", ctx.format, "json | human")->check(CLI::IsMember({"json", "human"}));

  add_density(app, ctx);
  add_cutnorm(app, ctx);
  add_cutdist(app, ctx);
  add_mobius(app, ctx);
  add_psd_test(app, ctx);
  add_connmat(app, ctx);
  add_model(app, ctx);
  add_sample(app, ctx);
  add_locality(app, ctx);
  add_trace(app, ctx);
  add_qeval(app, ctx);
  add_certify(app, ctx);
  add_verify(app, ctx);
  add_disprove(app, ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Json doc = ctx.action();
    write_output(doc, ctx.format, ctx.out);
    return ctx.status;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return 2;
  }
}
