#include "graphlim/certify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "graphlim/density.hpp"
#include "graphlim/error.hpp"
#include "graphlim/exact_linalg.hpp"
#include "graphlim/rng.hpp"

namespace graphlim {

namespace {

constexpr std::int64_t kSnapDenominators[] = {16, 256, 4096};
constexpr double kPsdScreen = 1e-9;

void check_labels(int m) {
  if (m < 1) throw DomainError("certificate label count must be at least 1");
  require_cap("certificate label", kMaxCertifyLabels, m);
}

QuantumGraph simplified(const QuantumGraph& x) {
  if (!x.is_unlabeled()) throw DomainError("the target quantum graph must be unlabeled");
  return simplify_iso(x);
}

void check_term_orders(const QuantumGraph& xs, int m) {
  if (xs.max_order() > m)
    throw DomainError("a term of x has " + std::to_string(xs.max_order()) +
                      " non-isolated nodes, more than m = " + std::to_string(m));
}

// ≃-classes of flat m-labeled graphs: class_of[mask] indexes forms.
struct GlueClasses {
  std::vector<CanonicalForm> forms;
  std::vector<int> class_of;
};

GlueClasses glue_classes(int m) {
  GlueClasses out;
  const std::uint32_t total = std::uint32_t{1} << pair_count(m);
  std::map<CanonicalForm, int> index;
  std::vector<CanonicalForm> by_mask;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    by_mask.push_back(canonical_form(drop_isolates(graph_from_mask(m, mask))));
    index.emplace(by_mask.back(), 0);
  }
  for (auto& [form, i] : index) {
    i = static_cast<int>(out.forms.size());
    out.forms.push_back(form);
  }
  for (const auto& form : by_mask) out.class_of.push_back(index.at(form));
  return out;
}

// Image of every edge mask under every permutation of the m nodes.
std::vector<std::vector<std::uint32_t>> mask_permutations(int m) {
  std::vector<std::vector<int>> pair_bit(m, std::vector<int>(m, 0));
  int bit = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) pair_bit[i][j] = pair_bit[j][i] = bit++;
  const std::uint32_t total = std::uint32_t{1} << bit;
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::uint32_t>> out;
  do {
    std::vector<std::uint32_t> image(total);
    for (std::uint32_t mask = 0; mask < total; ++mask) {
      std::uint32_t mapped = 0;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          if (mask >> pair_bit[i][j] & 1U) mapped |= std::uint32_t{1} << pair_bit[perm[i]][perm[j]];
      image[mask] = mapped;
    }
    out.push_back(std::move(image));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Eigen::MatrixXd symmetrize_labels(const Eigen::MatrixXd& p,
                                  const std::vector<std::vector<std::uint32_t>>& perms) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(p.rows(), p.cols());
  for (const auto& image : perms)
    for (Eigen::Index a = 0; a < p.rows(); ++a)
      for (Eigen::Index b = 0; b < p.cols(); ++b) out(a, b) += p(image[a], image[b]);
  return out / static_cast<double>(perms.size());
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& x) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x);
  const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
}

struct AffineSet {
  const GlueClasses* classes;
  std::vector<double> target;
  std::vector<double> count;

  // Orthogonal projection: shift every entry of a class by the class mean gap.
  Eigen::MatrixXd project(const Eigen::MatrixXd& x) const {
    std::vector<double> sum(target.size(), 0.0);
    const Eigen::Index n = x.rows();
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) sum[classes->class_of[a | b]] += x(a, b);
    Eigen::MatrixXd out = x;
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) {
        const int c = classes->class_of[a | b];
        out(a, b) += (target[c] - sum[c]) / count[c];
      }
    return out;
  }
};

// Gram matrix of the idempotents I_H over flat m-labeled graphs.
RationalMatrix idempotent_gram(int m) {
  const std::uint32_t total = std::uint32_t{1} << pair_count(m);
  RationalMatrix q(total, total);
  for (std::uint32_t a = 0; a < total; ++a)
    for (std::uint32_t b = 0; b < total; ++b) {
      long sum = 0;
      const std::uint32_t common = a & b;
      // H ranges over subsets of a & b.
      for (std::uint32_t h = common;; h = (h - 1) & common) {
        sum += std::popcount(a & ~h) % 2 == std::popcount(b & ~h) % 2 ? 1 : -1;
        if (h == 0) break;
      }
      q(a, b) = sum;
    }
  return q;
}

double idempotent_gram_floor(int m) {
  const RationalMatrix q = idempotent_gram(m);
  Eigen::MatrixXd approx(q.rows(), q.cols());
  for (std::size_t a = 0; a < q.rows(); ++a)
    for (std::size_t b = 0; b < q.cols(); ++b) approx(a, b) = to_double(q(a, b));
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(approx).eigenvalues()(0);
}

Certificate solve(const QuantumGraph& xs, int m, const SolverConfig& config, std::uint64_t seed) {
  const GlueClasses classes = glue_classes(m);
  const auto target_map = build_target(xs, m);
  const DualBound dual = dual_bound(xs, m);
  const Rational shift = dual.value > 0 ? dual.value : Rational(0);

  // Shift K0 by the dual bound so the affine set meets the PSD cone.
  std::vector<Rational> target(classes.forms.size());
  for (std::size_t c = 0; c < classes.forms.size(); ++c) target[c] = target_map.at(classes.forms[c]);
  const auto k0 = std::find(classes.forms.begin(), classes.forms.end(), canonical_form(Graph()));
  const Rational margin = round_to_grid(config.interior_margin, config.grid_denominator);
  target[k0 - classes.forms.begin()] += shift + margin;

  const Eigen::Index n = static_cast<Eigen::Index>(classes.class_of.size());
  Certificate cert;
  cert.m = m;
  SolverTelemetry& tel = cert.telemetry;
  tel.method = "alternating-projection";
  tel.dual_bound = shift;
  AffineSet affine{&classes, {}, std::vector<double>(target.size(), 0.0)};
  for (const auto& v : target) affine.target.push_back(to_double(v));
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) affine.count[classes.class_of[a | b]] += 1;

  // Facial reduction. A feasible P has e_G^T P e_G = 0 for the zeta
  // vector e_G(F) = 1[F ⊆ G] of every G with c_G + shift = 0, so P lives on
  // span{I_H : c_H + shift > 0}, where a strictly feasible point exists.
  const auto& mask_class = mask_class_table(m);
  std::vector<std::uint32_t> support;
  for (std::uint32_t h = 0; h < static_cast<std::uint32_t>(n); ++h)
    if (dual.by_class[mask_class[h]] + shift + margin > 0) support.push_back(h);
  Eigen::MatrixXd basis(n, static_cast<Eigen::Index>(support.size()));
  for (Eigen::Index col = 0; col < basis.cols(); ++col)
    for (std::uint32_t g = 0; g < static_cast<std::uint32_t>(n); ++g) {
      const std::uint32_t h = support[col];
      basis(g, col) = (g & h) == h ? (std::popcount(g & ~h) % 2 == 0 ? 1.0 : -1.0) : 0.0;
    }
  if (basis.cols() > 0) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
    basis = qr.householderQ() * Eigen::MatrixXd::Identity(n, basis.cols());
  }
  auto project_face = [&](const Eigen::MatrixXd& p) -> Eigen::MatrixXd {
    if (basis.cols() == 0) return Eigen::MatrixXd::Zero(n, n);
    return basis * project_psd(basis.transpose() * p * basis) * basis.transpose();
  };
  tel.face_dimension = static_cast<std::size_t>(basis.cols());

  const auto perms = mask_permutations(m);
  CounterRng rng(seed, 31);
  Eigen::MatrixXd x(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b <= a; ++b) x(a, b) = x(b, a) = rng.uniform() - 0.5;
  x = affine.project(symmetrize_labels(x, perms));

  // Dykstra: only the cone step needs a correction term, the affine step is exact.
  Eigen::MatrixXd correction = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd y = x;
  for (tel.iterations = 1; tel.iterations <= config.max_iterations; ++tel.iterations) {
    if (config.dykstra) {
      y = project_face(x + correction);
      correction += x - y;
    } else {
      y = project_face(x);
    }
    Eigen::MatrixXd next = affine.project(y);
    tel.drift = (next - x).norm();
    x = std::move(next);
    if (tel.drift < config.tolerance) {
      tel.converged = true;
      break;
    }
  }
  tel.iterations = std::min(tel.iterations, config.max_iterations);
  const Eigen::MatrixXd p = symmetrize_labels(y, perms);

  // Exact rounding, then an exact affine correction so the class sums hit
  // the target; only the clipped Schur remainder can leak into the residual.
  auto round_and_correct = [&](auto&& to_rational) {
    RationalMatrix exact(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = a; b < n; ++b) {
        const double v = p(a, b);
        const Rational q = std::fabs(v) < config.zero_threshold ? Rational(0) : to_rational(v);
        exact(a, b) = q;
        exact(b, a) = q;
      }
    std::vector<Rational> sums(target.size());
    std::vector<long> counts(target.size(), 0);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) {
        sums[classes.class_of[a | b]] += exact(a, b);
        ++counts[classes.class_of[a | b]];
      }
    for (std::size_t c = 0; c < target.size(); ++c) sums[c] = (target[c] - sums[c]) / counts[c];
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) exact(a, b) += sums[classes.class_of[a | b]];
    return exact;
  };

  // Boundary solutions (exact squares) often have small denominators; a
  // snapped matrix that is exactly PSD needs no repair and is optimal.
  // The exact test is costly at m = 4, so a clearly indefinite candidate is
  // screened out by its numeric least eigenvalue first.
  auto lowest_eigenvalue = [&](const RationalMatrix& r) {
    Eigen::MatrixXd approx(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) approx(a, b) = to_double(r(a, b));
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(approx, Eigen::EigenvaluesOnly).eigenvalues()(0);
  };
  auto exactly_psd = [&](const RationalMatrix& r) {
    return lowest_eigenvalue(r) >= -kPsdScreen && exact_psd_test(r).psd;
  };
  RationalMatrix exact;
  bool snapped = false;
  for (const std::int64_t denominator : kSnapDenominators) {
    exact = round_and_correct([&](double v) { return rationalize(v, denominator); });
    if (exactly_psd(exact)) {
      snapped = true;
      break;
    }
  }
  if (!snapped) exact = round_and_correct([&](double v) { return round_to_grid(v, config.grid_denominator); });

  // Q = sum_H I_H I_H^T is positive definite and glues to exactly K0, so
  // adding theta * Q absorbs any leftover negativity at a cost of theta
  // on the K0 coefficient. Skipped when the rounded matrix is already PSD.
  if (!snapped && !exactly_psd(exact)) {
    const RationalMatrix q = idempotent_gram(m);
    const double lowest = std::min(0.0, lowest_eigenvalue(exact));
    const double theta = -lowest / idempotent_gram_floor(m) * 1.01 + 1.0 / config.grid_denominator;
    const Rational step = round_to_grid(theta, config.grid_denominator);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) exact(a, b) += step * q(a, b);
    tel.psd_repair = step;
  }

  const ClippedLdl ldl = ldlt_clipped(exact, Rational(0));
  tel.rank = ldl.terms.size();
  tel.dropped_pivots = ldl.dropped;
  std::vector<WeightedSquare> ys;
  for (const auto& term : ldl.terms) ys.push_back({term.weight, QuantumGraph::flat(m, term.vector)});
  Certificate out = assemble_certificate(xs, m, std::move(ys));
  out.telemetry = tel;
  return out;
}

}  // namespace

std::map<CanonicalForm, Rational> build_target(const QuantumGraph& x, int m) {
  check_labels(m);
  const QuantumGraph xs = simplified(x);
  std::map<CanonicalForm, Rational> target;
  for (const auto& form : glue_classes(m).forms) target.emplace(form, 0);
  for (const auto& [form, term] : xs.terms()) {
    auto it = target.find(form);
    if (it == target.end())
      throw DomainError("term with " + std::to_string(term.graph.order()) +
                        " non-isolated nodes is not reachable at m = " + std::to_string(m));
    it->second = term.coeff;
  }
  return target;
}

DualBound dual_bound(const QuantumGraph& x, int m) {
  check_labels(m);
  const QuantumGraph xs = simplified(x);
  check_term_orders(xs, m);
  DualBound out;
  bool first = true;
  for (const Graph& h : enumerate_unlabeled(m)) {
    Rational c = 0;
    for (const auto& [form, term] : xs.terms()) c += term.coeff * t_inj(term.graph, h);
    if (first || -c > out.value) {
      out.value = -c;
      out.witness = h;
      first = false;
    }
    out.by_class.push_back(std::move(c));
  }
  return out;
}

Certificate assemble_certificate(const QuantumGraph& x, int m, std::vector<WeightedSquare> ys) {
  check_labels(m);
  const QuantumGraph xs = simplified(x);
  QuantumGraph squares(0);
  for (const auto& term : ys) {
    if (term.y.labels() != m || !term.y.is_flat())
      throw DomainError("certificate vectors must be flat " + std::to_string(m) + "-labeled");
    if (term.weight < 0) throw DomainError("certificate weights must be nonnegative");
    squares += square_and_unlabel(term.y) * term.weight;
  }
  Certificate cert;
  cert.m = m;
  cert.ys = std::move(ys);
  cert.residual = xs - squares;
  cert.residual_norm = l1_norm(cert.residual);
  cert.certified_bound = -cert.residual_norm;
  return cert;
}

Certificate mobius_certificate(const QuantumGraph& x, int m) {
  const QuantumGraph xs = simplified(x);
  const DualBound dual = dual_bound(xs, m);
  const Rational shift = dual.value > 0 ? dual.value : Rational(0);
  const auto& class_of = mask_class_table(m);
  const std::uint32_t total = std::uint32_t{1} << pair_count(m);
  std::vector<WeightedSquare> ys;
  for (std::uint32_t h = 0; h < total; ++h) {
    Rational weight = dual.by_class[class_of[h]] + shift;
    if (weight == 0) continue;
    std::vector<Rational> coeffs(total, Rational(0));
    for (std::uint32_t g = 0; g < total; ++g)
      if ((g & h) == h) coeffs[g] = std::popcount(g & ~h) % 2 == 0 ? 1 : -1;
    ys.push_back({std::move(weight), QuantumGraph::flat(m, coeffs)});
  }
  Certificate cert = assemble_certificate(xs, m, std::move(ys));
  cert.telemetry.method = "mobius";
  cert.telemetry.dual_bound = shift;
  cert.telemetry.converged = true;
  cert.telemetry.rank = cert.ys.size();
  return cert;
}

Certificate lift_certificate(const QuantumGraph& x, const Certificate& cert, int labels) {
  std::vector<WeightedSquare> ys;
  for (const auto& term : cert.ys) ys.push_back({term.weight, lift_flat(term.y, labels)});
  Certificate out = assemble_certificate(x, labels, std::move(ys));
  out.telemetry = cert.telemetry;
  return out;
}

Certificate search_certificate(const CertRequest& request) {
  check_labels(request.m);
  const QuantumGraph xs = simplified(request.x);
  check_term_orders(xs, request.m);
  Certificate best = solve(xs, request.m, request.solver, request.seed);

  if (request.solver.lift && request.m > 1 && xs.max_order() <= request.m - 1) {
    CertRequest smaller = request;
    smaller.x = xs;
    smaller.m = request.m - 1;
    const Certificate sub = search_certificate(smaller);
    if (sub.residual_norm < best.residual_norm) {
      const Rational dual = best.telemetry.dual_bound;
      best = lift_certificate(xs, sub, request.m);
      best.telemetry.method = "lifted";
      best.telemetry.lifted_from = sub.telemetry.lifted_from ? sub.telemetry.lifted_from : sub.m;
      best.telemetry.dual_bound = dual;
    }
  }
  return best;
}

VerificationReport verify_certificate(const QuantumGraph& x, const Certificate& cert,
                                      std::uint64_t seed, int random_graphs) {
  VerificationReport report;
  Certificate recomputed;
  try {
    recomputed = assemble_certificate(x, cert.m, cert.ys);
    report.structure_valid = true;
  } catch (const DomainError& e) {
    report.message = e.what();
    return report;
  }
  report.recomputed_norm = recomputed.residual_norm;
  report.residual_matches = recomputed.residual == cert.residual &&
                            recomputed.residual_norm == cert.residual_norm &&
                            cert.certified_bound == -cert.residual_norm;

  std::vector<Graph> corpus;
  for (int n = 1; n <= 5; ++n)
    for (const Graph& g : enumerate_unlabeled(n)) corpus.push_back(g);
  CounterRng rng(seed, 11);
  for (int i = 0; i < random_graphs; ++i) {
    const int n = 6 + static_cast<int>(rng.below(4));
    const double p = rng.uniform();
    Graph g(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng.bernoulli(p)) g.add_edge(a, b);
    corpus.push_back(g);
  }
  const Rational floor = -report.recomputed_norm;
  bool first = true;
  for (const Graph& g : corpus) {
    const Rational value = evaluate(x, g);
    ++report.graphs_checked;
    if (first || value < report.min_value) report.min_value = value;
    first = false;
    if (value < floor) {
      if (!report.violation) report.violation = g;
      ++report.violations;
    }
  }

  report.ok = report.residual_matches && report.violations == 0;
  if (!report.residual_matches)
    report.message = "stored residual does not match the exact recomputation";
  else if (report.violations > 0)
    report.message = "evaluation below the certified bound: implementation bug";
  else
    report.message = "verified";
  return report;
}

DisproveResult disprove(const QuantumGraph& x, int budget, std::uint64_t seed) {
  const QuantumGraph xs = simplified(x);
  DisproveResult result;

  std::optional<Counterexample> best;
  for (int n = 1; n <= 6; ++n)
    for (const Graph& g : enumerate_unlabeled(n)) {
      ++result.graphs_checked;
      Rational value = evaluate(xs, g);
      if (value < 0 && (!best || value < best->value)) best = Counterexample{g, std::nullopt, value};
    }
  if (best) {
    result.witness = std::move(best);
    return result;
  }

  std::vector<std::pair<Graph, double>> terms;
  for (const auto& [form, term] : xs.terms()) terms.emplace_back(term.graph, to_double(term.coeff));
  auto value_of = [&](const std::vector<double>& widths, const std::vector<std::vector<double>>& v) {
    double total = 0;
    for (const auto& [g, c] : terms) total += c * t_graphon_approx(g, widths, v);
    return total;
  };

  constexpr std::int64_t kGrid = 1024;
  for (int start = 0; start < budget; ++start) {
    ++result.graphon_starts;
    CounterRng rng = CounterRng(seed, 41).split(static_cast<std::uint64_t>(start));
    const int k = 1 + start % 4;
    std::vector<double> widths(k);
    for (auto& w : widths) w = 0.2 + rng.uniform();
    const double total = std::accumulate(widths.begin(), widths.end(), 0.0);
    for (auto& w : widths) w /= total;
    std::vector<std::vector<double>> v(k, std::vector<double>(k));
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) v[i][j] = v[j][i] = rng.uniform();

    double current = value_of(widths, v);
    double step = 0.25;
    for (int sweep = 0; sweep < 40 && step > 1e-4; ++sweep) {
      bool moved = false;
      for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j)
          for (double delta : {-step, step}) {
            const double old = v[i][j];
            const double trial = std::clamp(old + delta, 0.0, 1.0);
            v[i][j] = v[j][i] = trial;
            const double value = value_of(widths, v);
            if (value < current - 1e-15) {
              current = value;
              moved = true;
            } else {
              v[i][j] = v[j][i] = old;
            }
          }
      for (int i = 0; i + 1 < k; ++i)
        for (double delta : {-step, step}) {
          const double moved_mass = std::clamp(delta * widths[i], -widths[i] + 1e-3,
                                               widths[k - 1] - 1e-3);
          widths[i] += moved_mass;
          widths[k - 1] -= moved_mass;
          const double value = value_of(widths, v);
          if (value < current - 1e-15) {
            current = value;
            moved = true;
          } else {
            widths[i] -= moved_mass;
            widths[k - 1] += moved_mass;
          }
        }
      if (!moved) step /= 2;
    }
    if (current >= -1e-12) continue;

    std::vector<Rational> exact_widths;
    Rational used = 0;
    bool valid = true;
    for (int i = 0; i + 1 < k; ++i) {
      Rational w = round_to_grid(widths[i], kGrid);
      if (w <= 0) w = Rational(1) / static_cast<long>(kGrid);
      used += w;
      exact_widths.push_back(w);
    }
    exact_widths.push_back(1 - used);
    if (exact_widths.back() <= 0) valid = false;
    if (!valid) continue;
    std::vector<std::vector<Rational>> exact_values(k, std::vector<Rational>(k));
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) {
        Rational q = round_to_grid(v[i][j], kGrid);
        if (q < 0) q = 0;
        if (q > 1) q = 1;
        exact_values[i][j] = exact_values[j][i] = q;
      }
    StepGraphon w(std::move(exact_widths), std::move(exact_values));
    Rational value = evaluate(xs, w);
    if (value < 0) {
      result.witness = Counterexample{std::nullopt, std::move(w), std::move(value)};
      return result;
    }
  }
  return result;
}

}  // namespace graphlim
