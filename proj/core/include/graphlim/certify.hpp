#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphlim/algebra.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/rational.hpp"

namespace graphlim {

/// Flat m-labeled graphs number 2^(m choose 2); m = 4 gives a 64x64 Gram matrix.
inline constexpr int kMaxCertifyLabels = 4;

struct SolverConfig {
  int max_iterations = 5000;
  double tolerance = 1e-9;  // Frobenius drift between consecutive iterates
  /// Solver floats are rounded to multiples of 1/grid_denominator.
  std::int64_t grid_denominator = std::int64_t{1} << 32;
  double zero_threshold = 1e-8;
  /// Extra K0 mass added to the solver target so the feasible set has
  /// interior; it is paid for in the residual.
  double interior_margin = 0;
  /// Also search at m-1 and lift the result; keeps the residual monotone in m.
  bool lift = true;
  bool dykstra = false;
};

struct CertRequest {
  QuantumGraph x;
  int m = 3;
  SolverConfig solver;
  std::uint64_t seed = 0;
};

/// weight * [[y^2]] with weight >= 0 and y flat m-labeled.
struct WeightedSquare {
  Rational weight;
  QuantumGraph y;
};

struct SolverTelemetry {
  std::string method;  // "alternating-projection", "lifted", "mobius"
  int iterations = 0;
  double drift = 0;
  bool converged = false;
  /// max(0, -min_H sum_F x_F t_inj(F,H)) over graphs H on m nodes: the
  /// least residual norm any certificate at this m can reach.
  Rational dual_bound;
  std::size_t rank = 0;
  std::size_t dropped_pivots = 0;
  std::size_t face_dimension = 0;
  Rational psd_repair;  // multiple of the identity-like Gram added before factoring
  int lifted_from = 0;
};

struct Certificate {
  int m = 0;
  std::vector<WeightedSquare> ys;
  QuantumGraph residual;  // x - sum w_i [[y_i^2]], simplified
  Rational residual_norm;
  Rational certified_bound;  // -residual_norm
  SolverTelemetry telemetry;
};

/// Target coefficient for every ≃-class reachable by gluing two flat
/// m-labeled graphs (isolate-free graphs on at most m nodes, K0 included).
/// Throws DomainError if a term of x has more than m non-isolated nodes.
std::map<CanonicalForm, Rational> build_target(const QuantumGraph& x, int m);

struct DualBound {
  Rational value;  // -min_H c_H (may be negative)
  Graph witness;   // minimizing H on m nodes
  std::vector<Rational> by_class;  // c_H, indexed like enumerate_unlabeled(m)
};

/// c_H = sum_F x_F t_inj(F, H) for every graph H on m nodes. Exchangeable
/// distributions on [m] are exactly the mixtures of uniformly relabelled
/// H, which makes -min c_H the exact optimal residual at level m.
DualBound dual_bound(const QuantumGraph& x, int m);

/// Recomputes residual and norm of weighted squares exactly.
Certificate assemble_certificate(const QuantumGraph& x, int m, std::vector<WeightedSquare> ys);

/// Closed-form optimal certificate: y_H = sum over G ⊇ H of
/// (-1)^{|G\H|} G (an idempotent) with weight c_H + max(0, dual bound).
Certificate mobius_certificate(const QuantumGraph& x, int m);

/// Gram-matrix search by alternating projections, exact rounding
/// and clipped LDL^T. Never fails for a valid request: a poor solve only
/// enlarges the exactly recomputed residual.
Certificate search_certificate(const CertRequest& request);

/// Certificate with every y lifted to `labels` labels (residual unchanged).
Certificate lift_certificate(const QuantumGraph& x, const Certificate& cert, int labels);

struct VerificationReport {
  bool ok = false;
  bool structure_valid = false;  // flat ys on m labels, nonnegative weights
  bool residual_matches = false;
  Rational recomputed_norm;
  std::size_t graphs_checked = 0;
  std::size_t violations = 0;
  std::optional<Graph> violation;
  Rational min_value;  // least evaluate(x, G) seen on the corpus
  std::string message;
};

/// Exact recomputation plus a spot check evaluate(x, G) >= -norm on all
/// graphs with 1..5 nodes and `random_graphs` seeded random graphs.
VerificationReport verify_certificate(const QuantumGraph& x, const Certificate& cert,
                                      std::uint64_t seed = 0, int random_graphs = 32);

struct Counterexample {
  std::optional<Graph> graph;
  std::optional<StepGraphon> graphon;
  Rational value;  // evaluate(x, witness) < 0
};

struct DisproveResult {
  std::optional<Counterexample> witness;
  std::size_t graphs_checked = 0;
  std::size_t graphon_starts = 0;
};

/// Exhaustive search over graphs with 1..6 nodes, then `budget` seeded step
/// graphons refined by coordinate descent. Witnesses are confirmed exactly.
DisproveResult disprove(const QuantumGraph& x, int budget = 64, std::uint64_t seed = 0);

}  // namespace graphlim
