#include "graphlim/graphon.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>

#include "graphlim/error.hpp"

namespace graphlim {

namespace {

void validate_kernel(const std::vector<Rational>& widths,
                     const std::vector<std::vector<Rational>>& values) {
  if (widths.empty()) throw DomainError("a step kernel needs at least one step");
  Rational total = 0;
  for (const auto& w : widths) {
    if (w <= 0) throw DomainError("step widths must be positive");
    total += w;
  }
  if (total != 1) throw DomainError("step widths must sum to 1, got " + to_string(total));
  if (values.size() != widths.size()) throw DomainError("value matrix size mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].size() != widths.size()) throw DomainError("value matrix is not square");
    for (std::size_t j = 0; j < i; ++j)
      if (values[i][j] != values[j][i]) throw DomainError("value matrix is not symmetric");
  }
}

}  // namespace

StepKernel::StepKernel(std::vector<Rational> widths, std::vector<std::vector<Rational>> values)
    : widths_(std::move(widths)), values_(std::move(values)) {
  validate_kernel(widths_, values_);
}

StepKernel StepKernel::permuted(std::span<const int> perm) const {
  const int s = steps();
  if (static_cast<int>(perm.size()) != s) throw DomainError("step permutation size mismatch");
  std::vector<Rational> widths(s);
  std::vector<std::vector<Rational>> values(s, std::vector<Rational>(s));
  for (int i = 0; i < s; ++i) {
    widths[perm[i]] = widths_[i];
    for (int j = 0; j < s; ++j) values[perm[i]][perm[j]] = values_[i][j];
  }
  return StepKernel(std::move(widths), std::move(values));
}

StepGraphon::StepGraphon(std::vector<Rational> widths, std::vector<std::vector<Rational>> values)
    : StepKernel(std::move(widths), std::move(values)) {
  for (const auto& row : values_)
    for (const auto& v : row)
      if (v < 0 || v > 1) throw DomainError("graphon values must lie in [0,1]");
}

StepGraphon StepGraphon::constant(const Rational& p) {
  return StepGraphon({Rational(1)}, {{p}});
}

StepKernel difference(const StepKernel& a, const StepKernel& b) {
  // Merge the breakpoints of both step partitions.
  std::vector<Rational> cuts;
  Rational acc = 0;
  for (const auto& w : a.widths()) cuts.push_back(acc += w);
  acc = 0;
  for (const auto& w : b.widths()) cuts.push_back(acc += w);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Rational> widths;
  std::vector<int> in_a, in_b;
  Rational left = 0, a_end = a.widths()[0], b_end = b.widths()[0];
  int ia = 0, ib = 0;
  for (const auto& right : cuts) {
    widths.push_back(right - left);
    in_a.push_back(ia);
    in_b.push_back(ib);
    if (right == a_end && ia + 1 < a.steps()) a_end += a.widths()[++ia];
    if (right == b_end && ib + 1 < b.steps()) b_end += b.widths()[++ib];
    left = right;
  }
  const std::size_t s = widths.size();
  std::vector<std::vector<Rational>> values(s, std::vector<Rational>(s));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      values[i][j] = a.value(in_a[i], in_a[j]) - b.value(in_b[i], in_b[j]);
  return StepKernel(std::move(widths), std::move(values));
}

StepKernel shifted(const StepKernel& w, const Rational& c) {
  auto values = w.values();
  for (auto& row : values)
    for (auto& v : row) v += c;
  return StepKernel(w.widths(), std::move(values));
}

StepGraphon graphon_of(const Graph& g) {
  const int n = g.order();
  if (n == 0) throw DomainError("W_G is undefined for the empty graph K0");
  std::vector<Rational> widths(n, Rational(1, n));
  std::vector<std::vector<Rational>> values(n, std::vector<Rational>(n, Rational(0)));
  for (auto [u, v] : g.edges()) values[u][v] = values[v][u] = 1;
  return StepGraphon(std::move(widths), std::move(values));
}

namespace {

// max over S of max(sum_j (c_j)^+, sum_j (c_j)^-) where c_j = sum_{i in S} a_ij,
// enumerated in Gray-code order.
template <class Int>
Int subset_cut_maximum(const std::vector<std::vector<Int>>& a) {
  const int s = static_cast<int>(a.size());
  std::vector<Int> column(s, Int(0));
  std::uint64_t members = 0;
  Int best = 0;
  const std::uint64_t total = std::uint64_t{1} << s;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int flip = std::countr_zero(step);
    const bool adding = !((members >> flip) & 1U);
    members ^= std::uint64_t{1} << flip;
    for (int j = 0; j < s; ++j) {
      if (adding)
        column[j] += a[flip][j];
      else
        column[j] -= a[flip][j];
    }
    Int positive = 0, negative = 0;
    for (int j = 0; j < s; ++j) {
      if (column[j] > 0)
        positive += column[j];
      else
        negative -= column[j];
    }
    if (positive > best) best = positive;
    if (negative > best) best = negative;
  }
  return best;
}

}  // namespace

Rational cut_norm(const StepKernel& w) {
  const int s = w.steps();
  require_cap("cut norm step", kMaxCutNormSteps, s);

  std::vector<std::vector<Rational>> mass(s, std::vector<Rational>(s));
  Integer common = 1;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      mass[i][j] = w.value(i, j) * w.widths()[i] * w.widths()[j];
      mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), mass[i][j].get_den_mpz_t());
    }

  std::vector<std::vector<Integer>> scaled(s, std::vector<Integer>(s));
  Integer absolute_total = 0;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      scaled[i][j] = mass[i][j].get_num() * (common / mass[i][j].get_den());
      absolute_total += ::abs(scaled[i][j]);
    }

  Integer best;
  if (absolute_total.fits_slong_p() && absolute_total < (Integer(1) << 62)) {
    std::vector<std::vector<std::int64_t>> small(s, std::vector<std::int64_t>(s));
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) small[i][j] = scaled[i][j].get_si();
    best = static_cast<long>(subset_cut_maximum(small));
  } else {
    best = subset_cut_maximum(scaled);
  }
  Rational out(best, common);
  out.canonicalize();
  return out;
}

Rational cut_distance_graphs(const Graph& g1, const Graph& g2) {
  if (g1.order() != g2.order())
    throw DomainError("cut_distance_graphs requires equal node counts (" +
                      std::to_string(g1.order()) + " vs " + std::to_string(g2.order()) + ")");
  const int n = g1.order();
  require_cap("cut distance node", kMaxCutDistanceNodes, n);
  if (n == 0) return 0;

  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<std::vector<std::int64_t>> diff(n, std::vector<std::int64_t>(n));
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  do {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        diff[i][j] = static_cast<std::int64_t>(g1.adjacent(i, j)) -
                     static_cast<std::int64_t>(g2.adjacent(sigma[i], sigma[j]));
    best = std::min(best, subset_cut_maximum(diff));
  } while (best > 0 && std::next_permutation(sigma.begin(), sigma.end()));
  Rational out(static_cast<long>(best), static_cast<long>(n) * n);
  out.canonicalize();
  return out;
}

RandomGraphonModel::RandomGraphonModel(std::vector<std::pair<Rational, StepGraphon>> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw DomainError("a random graphon model needs at least one atom");
  Rational total = 0;
  for (const auto& [p, w] : atoms_) {
    if (p <= 0) throw DomainError("atom probabilities must be positive");
    total += p;
  }
  if (total != 1) throw DomainError("atom probabilities must sum to 1, got " + to_string(total));
}

RandomGraphonModel RandomGraphonModel::singleton(StepGraphon w) {
  return RandomGraphonModel({{Rational(1), std::move(w)}});
}

std::size_t sample_atom(const RandomGraphonModel& model, CounterRng& rng) {
  const auto& atoms = model.atoms();
  if (atoms.size() == 1) return 0;
  const double u = rng.uniform();
  double acc = 0;
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
    acc += to_double(atoms[i].first);
    if (u < acc) return i;
  }
  return atoms.size() - 1;
}

const StepGraphon& sample_graphon(const RandomGraphonModel& model, CounterRng& rng) {
  return model.atoms()[sample_atom(model, rng)].second;
}

}  // namespace graphlim
