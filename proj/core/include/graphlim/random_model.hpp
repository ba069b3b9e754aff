#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/parameter.hpp"
#include "graphlim/rational.hpp"
#include "graphlim/rng.hpp"

namespace graphlim {

inline constexpr int kMaxPrefixNodes = 64;
inline constexpr double kDefaultZThreshold = 4.0;
inline constexpr std::uint64_t kLocalityBatches = 50;

/// Exchangeable distribution of a random graph on [n], stored per
/// isomorphism class. Every labeled graph of a class has probability
/// class_probability / labeled_count.
class FiniteRandomModel {
 public:
  struct ClassEntry {
    Graph representative;
    Rational probability;
    std::uint64_t labeled_count = 0;  // n! / |Aut|
  };

  FiniteRandomModel(int n, std::map<CanonicalForm, ClassEntry> classes);

  int order() const noexcept { return n_; }
  const std::map<CanonicalForm, ClassEntry>& classes() const noexcept { return classes_; }
  /// Probability of the isomorphism class of g (0 if absent).
  Rational class_probability(const Graph& g) const;
  /// P(G_n = F) for one labeled graph F on [n].
  Rational labeled_probability(const Graph& g) const;

 private:
  int n_;
  std::map<CanonicalForm, ClassEntry> classes_;
};

/// P(G_n = F) = f†(F) for each labeled F on [n]. Requires f normalized,
/// isolate-indifferent and f† >= 0 on n-node graphs; throws DomainError
/// naming the offending class otherwise.
FiniteRandomModel model_from_parameter(const GraphParameter& f, int n);

/// Distribution of G_{n+1} with node n+1 deleted.
FiniteRandomModel marginalize_last(const FiniteRandomModel& model);

struct ConsistencyReport {
  bool consistent = false;
  Rational max_deviation;
};

/// Compares model_n with the last-node marginal of model_n1.
ConsistencyReport check_consistency(const FiniteRandomModel& model_n,
                                    const FiniteRandomModel& model_n1);

/// P(F ⊆ G_n) for F placed on the first |V(F)| nodes (|V(F)| <= n).
Rational containment_probability(const FiniteRandomModel& model, const Graph& f);

/// E t_inj(F, G_n).
Rational expected_inj_density(const FiniteRandomModel& model, const Graph& f);

/// Countable random graph from a random graphon model, materialized one
/// prefix at a time. A graphon is drawn once; node i gets a latent step
/// and edge ij is decided once from a counter-keyed uniform, so G_n is
/// always the induced subgraph of G_{n+1} on [n].
class PrefixSampler {
 public:
  PrefixSampler(RandomGraphonModel source, std::uint64_t seed);

  /// Extends the sample to n nodes and returns G_n.
  Graph sample_prefix(int n);

  const RandomGraphonModel& source() const noexcept { return source_; }
  const StepGraphon& graphon() const noexcept { return source_.atoms()[atom_].second; }
  std::size_t atom() const noexcept { return atom_; }
  int materialized() const noexcept { return static_cast<int>(steps_.size()); }

 private:
  RandomGraphonModel source_;
  std::uint64_t seed_;
  std::size_t atom_ = 0;
  std::vector<int> steps_;
  std::vector<double> widths_;
  std::vector<std::vector<double>> values_;
  Graph graph_;
};

struct LocalityEstimate {
  double covariance = 0;
  double standard_error = 0;  // max of the influence and batch-means errors
  double batch_standard_error = 0;
  double z = 0;  // covariance / standard_error (0 when the error vanishes)
  double mean_s = 0;
  double mean_t = 0;
  std::uint64_t samples = 0;
};

/// Estimates Cov(1[G[S] ≅ F], 1[G[T] ≅ F]) over independent countable
/// samples. The standard error is the larger of the influence-function
/// error of (X - mean X)(Y - mean Y) and a batch-means error over
/// kLocalityBatches batches (at least 100 samples).
LocalityEstimate locality_test(const RandomGraphonModel& model, const std::vector<int>& s,
                               const std::vector<int>& t, const Graph& f,
                               std::uint64_t samples, std::uint64_t seed);

struct TracePoint {
  int n = 0;
  double discrepancy = 0;  // max over F with <= 4 nodes of |t(F,G_n) - t(F,W)|
};

/// Density-discrepancy trace of one prefix sequence. Requires a singleton
/// source model.
std::vector<TracePoint> convergence_trace(PrefixSampler& sampler, const std::vector<int>& sizes);

}  // namespace graphlim
