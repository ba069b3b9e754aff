#include "graphlim/random_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphlim/density.hpp"
#include "graphlim/error.hpp"
#include "graphlim/graph_io.hpp"

namespace graphlim {

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t out = 1;
  for (int i = 2; i <= n; ++i) out *= static_cast<std::uint64_t>(i);
  return out;
}

}  // namespace

FiniteRandomModel::FiniteRandomModel(int n, std::map<CanonicalForm, ClassEntry> classes)
    : n_(n), classes_(std::move(classes)) {
  Rational total = 0;
  for (const auto& [form, entry] : classes_) {
    if (entry.representative.order() != n) throw DomainError("class representative has wrong order");
    if (entry.probability < 0) throw DomainError("negative class probability");
    total += entry.probability;
  }
  if (total != 1) throw DomainError("class probabilities sum to " + to_string(total) + ", not 1");
}

Rational FiniteRandomModel::class_probability(const Graph& g) const {
  auto it = classes_.find(canonical_form(g.without_labels()));
  return it == classes_.end() ? Rational(0) : it->second.probability;
}

Rational FiniteRandomModel::labeled_probability(const Graph& g) const {
  auto it = classes_.find(canonical_form(g.without_labels()));
  if (it == classes_.end()) return 0;
  return it->second.probability / Rational(static_cast<unsigned long>(it->second.labeled_count));
}

FiniteRandomModel model_from_parameter(const GraphParameter& f, int n) {
  if (n < 0) throw DomainError("negative node count");
  require_cap("parameter table", f.cap(), n);
  if (!is_normalized(f)) throw DomainError("parameter is not normalized: f(K0) = f(K1) = 1 fails");
  if (auto check = is_isolate_indifferent(f); !check.indifferent)
    throw DomainError("parameter is not isolate-indifferent: witness " +
                      to_graph6(check.witness->first) + " vs " + to_graph6(check.witness->second));

  const auto dagger = mobius_by_mask(f, n);
  std::map<CanonicalForm, FiniteRandomModel::ClassEntry> classes;
  const std::uint64_t perms = factorial(n);
  for (const Graph& g : enumerate_unlabeled(n)) {
    const Rational& value = dagger[edge_mask(g)];
    if (value < 0)
      throw DomainError("negative Möbius transform on " + to_graph6(g) + ": " + to_string(value));
    const std::uint64_t count = perms / automorphism_count(g);
    Rational probability = value * Rational(static_cast<unsigned long>(count));
    if (probability == 0) continue;
    classes.emplace(canonical_form(g), FiniteRandomModel::ClassEntry{g, probability, count});
  }
  return FiniteRandomModel(n, std::move(classes));
}

FiniteRandomModel marginalize_last(const FiniteRandomModel& model) {
  const int n = model.order();
  if (n == 0) throw DomainError("cannot marginalize a model on zero nodes");
  std::map<CanonicalForm, FiniteRandomModel::ClassEntry> classes;
  const std::uint64_t perms = factorial(n - 1);
  // Under a uniformly random labelling of a class representative H, the
  // last node is a uniform vertex v and the marginal graph is H - v.
  for (const auto& [form, entry] : model.classes()) {
    for (int v = 0; v < n; ++v) {
      Graph rest = entry.representative.without_node(v);
      auto key = canonical_form(rest);
      auto it = classes.find(key);
      if (it == classes.end()) {
        Graph rep = canonical_graph(rest);
        it = classes.emplace(key, FiniteRandomModel::ClassEntry{rep, Rational(0),
                                                               perms / automorphism_count(rep)})
                 .first;
      }
      it->second.probability += entry.probability / n;
    }
  }
  return FiniteRandomModel(n - 1, std::move(classes));
}

ConsistencyReport check_consistency(const FiniteRandomModel& model_n,
                                    const FiniteRandomModel& model_n1) {
  if (model_n1.order() != model_n.order() + 1)
    throw DomainError("consistency check needs models on n and n+1 nodes");
  const FiniteRandomModel marginal = marginalize_last(model_n1);
  ConsistencyReport report;
  report.max_deviation = 0;
  for (const Graph& g : enumerate_unlabeled(model_n.order())) {
    Rational deviation = abs(model_n.class_probability(g) - marginal.class_probability(g));
    if (deviation > report.max_deviation) report.max_deviation = deviation;
  }
  report.consistent = report.max_deviation == 0;
  return report;
}

Rational containment_probability(const FiniteRandomModel& model, const Graph& f) {
  const int n = model.order();
  if (f.order() > n) throw DomainError("pattern larger than the model order");
  const Graph padded = f.without_labels().with_isolated(n - f.order());
  // A uniformly relabelled H contains the fixed placement of F with
  // probability inj(F_padded, H) / n!.
  const Rational perms(static_cast<unsigned long>(factorial(n)));
  Rational total = 0;
  for (const auto& [form, entry] : model.classes())
    total += entry.probability *
             Rational(static_cast<unsigned long>(inj_count(padded, entry.representative))) / perms;
  return total;
}

Rational expected_inj_density(const FiniteRandomModel& model, const Graph& f) {
  Rational total = 0;
  for (const auto& [form, entry] : model.classes())
    total += entry.probability * t_inj(f, entry.representative);
  return total;
}

PrefixSampler::PrefixSampler(RandomGraphonModel source, std::uint64_t seed)
    : source_(std::move(source)), seed_(seed) {
  CounterRng rng(seed, 0);
  atom_ = sample_atom(source_, rng);
  const StepGraphon& w = graphon();
  for (const auto& width : w.widths()) widths_.push_back(to_double(width));
  for (const auto& row : w.values()) {
    values_.emplace_back();
    for (const auto& v : row) values_.back().push_back(to_double(v));
  }
}

Graph PrefixSampler::sample_prefix(int n) {
  if (n < 0) throw DomainError("negative prefix size");
  require_cap("prefix node", kMaxPrefixNodes, n);
  while (static_cast<int>(steps_.size()) < n) {
    const int v = static_cast<int>(steps_.size());
    const double x = CounterRng::uniform_at(seed_, 1, static_cast<std::uint64_t>(v));
    int step = 0;
    double edge = widths_[0];
    while (x >= edge && step + 1 < static_cast<int>(widths_.size())) edge += widths_[++step];
    steps_.push_back(step);
    graph_ = graph_.with_isolated(1);
    for (int u = 0; u < v; ++u) {
      const double coin = CounterRng::uniform_at(seed_, 2, (static_cast<std::uint64_t>(u) << 32) |
                                                               static_cast<std::uint64_t>(v));
      if (coin < values_[steps_[u]][step]) graph_.add_edge(u, v);
    }
  }
  std::vector<int> prefix(n);
  for (int i = 0; i < n; ++i) prefix[i] = i;
  return graph_.induced(prefix);
}

LocalityEstimate locality_test(const RandomGraphonModel& model, const std::vector<int>& s,
                               const std::vector<int>& t, const Graph& f,
                               std::uint64_t samples, std::uint64_t seed) {
  if (s.size() != t.size() || static_cast<int>(s.size()) != f.order())
    throw DomainError("locality test needs |S| = |T| = |V(F)|");
  for (int a : s)
    if (std::find(t.begin(), t.end(), a) != t.end()) throw DomainError("S and T must be disjoint");
  if (samples < 2) throw DomainError("locality test needs at least two samples");
  int needed = 0;
  for (int a : s) needed = std::max(needed, a + 1);
  for (int a : t) needed = std::max(needed, a + 1);
  for (int a : s)
    if (a < 0) throw DomainError("node indices must be nonnegative");
  for (int a : t)
    if (a < 0) throw DomainError("node indices must be nonnegative");

  const CanonicalForm target = canonical_form(f.without_labels());
  std::vector<std::uint8_t> xs(samples), ys(samples);
  CounterRng seeds(seed, 7);
  for (std::uint64_t i = 0; i < samples; ++i) {
    PrefixSampler sampler(model, seeds());
    const Graph g = sampler.sample_prefix(needed);
    xs[i] = canonical_form(g.induced(s)) == target;
    ys[i] = canonical_form(g.induced(t)) == target;
  }

  LocalityEstimate est;
  est.samples = samples;
  const double count = static_cast<double>(samples);
  for (std::uint64_t i = 0; i < samples; ++i) {
    est.mean_s += xs[i];
    est.mean_t += ys[i];
  }
  est.mean_s /= count;
  est.mean_t /= count;
  double sum = 0, sum_sq = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double term = (xs[i] - est.mean_s) * (ys[i] - est.mean_t);
    sum += term;
    sum_sq += term * term;
  }
  est.covariance = sum / count;
  const double variance = std::max(0.0, sum_sq / count - est.covariance * est.covariance);
  est.standard_error = std::sqrt(variance / count);

  // The influence-function error is first-order only and vanishes when X = Y
  // almost surely (e.g. a mixture of constant graphons); batch means keep the
  // second-order spread, so report whichever is larger.
  const std::uint64_t batches = samples >= 100 ? kLocalityBatches : 0;
  if (batches > 0) {
    const std::uint64_t width = samples / batches;
    double batch_sum = 0, batch_sum_sq = 0;
    for (std::uint64_t b = 0; b < batches; ++b) {
      double mx = 0, my = 0, cov = 0;
      for (std::uint64_t i = b * width; i < (b + 1) * width; ++i) {
        mx += xs[i];
        my += ys[i];
      }
      mx /= static_cast<double>(width);
      my /= static_cast<double>(width);
      for (std::uint64_t i = b * width; i < (b + 1) * width; ++i) cov += (xs[i] - mx) * (ys[i] - my);
      cov /= static_cast<double>(width);
      batch_sum += cov;
      batch_sum_sq += cov * cov;
    }
    const double nb = static_cast<double>(batches);
    const double spread = std::max(0.0, (batch_sum_sq - batch_sum * batch_sum / nb) / (nb - 1));
    est.batch_standard_error = std::sqrt(spread / nb);
    est.standard_error = std::max(est.standard_error, est.batch_standard_error);
  }
  est.z = est.standard_error > 0 ? est.covariance / est.standard_error : 0.0;
  return est;
}

std::vector<TracePoint> convergence_trace(PrefixSampler& sampler, const std::vector<int>& sizes) {
  if (!sampler.source().is_singleton())
    throw DomainError("convergence_trace requires a singleton (ergodic) source model");
  std::vector<Graph> patterns;
  for (int k = 1; k <= 4; ++k)
    for (const Graph& g : enumerate_unlabeled(k)) patterns.push_back(g);
  std::vector<double> limits;
  for (const Graph& f : patterns) limits.push_back(to_double(t_graphon(f, sampler.graphon())));

  std::vector<TracePoint> trace;
  for (int n : sizes) {
    if (n < 1) throw DomainError("trace sizes must be positive");
    const Graph g = sampler.sample_prefix(n);
    TracePoint point{n, 0.0};
    for (std::size_t i = 0; i < patterns.size(); ++i)
      point.discrepancy =
          std::max(point.discrepancy, std::fabs(to_double(t(patterns[i], g)) - limits[i]));
    trace.push_back(point);
  }
  return trace;
}

}  // namespace graphlim
