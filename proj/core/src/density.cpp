#include "graphlim/density.hpp"

#include <algorithm>
#include <bit>

#include "graphlim/error.hpp"

namespace graphlim {

namespace {

constexpr std::uint64_t bit(int v) noexcept { return std::uint64_t{1} << v; }

std::uint64_t all_nodes(int n) noexcept { return n == 64 ? ~std::uint64_t{0} : bit(n) - 1; }

// Search order: each node after the first of its component has as many
// already-placed neighbours as possible, so candidate sets shrink early.
struct SearchPlan {
  std::vector<int> order;
  std::vector<std::vector<int>> back;  // positions of earlier neighbours
};

SearchPlan make_plan(const Graph& f, std::uint64_t nodes) {
  SearchPlan plan;
  std::uint64_t placed = 0;
  while (placed != nodes) {
    int pick = -1, pick_links = -1, pick_degree = -1;
    for (int v = 0; v < f.order(); ++v) {
      if (!((nodes >> v) & 1U) || ((placed >> v) & 1U)) continue;
      const int links = std::popcount(f.neighbors(v) & placed);
      const int degree = f.degree(v);
      if (links > pick_links || (links == pick_links && degree > pick_degree)) {
        pick = v;
        pick_links = links;
        pick_degree = degree;
      }
    }
    plan.order.push_back(pick);
    placed |= bit(pick);
  }
  plan.back.resize(plan.order.size());
  for (std::size_t i = 0; i < plan.order.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (f.adjacent(plan.order[i], plan.order[j])) plan.back[i].push_back(static_cast<int>(j));
  return plan;
}

std::vector<std::uint64_t> components(const Graph& f) {
  std::vector<std::uint64_t> out;
  std::uint64_t seen = 0;
  for (int v = 0; v < f.order(); ++v) {
    if ((seen >> v) & 1U) continue;
    std::uint64_t comp = bit(v), frontier = bit(v);
    while (frontier) {
      const int u = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const std::uint64_t fresh = f.neighbors(u) & ~comp;
      comp |= fresh;
      frontier |= fresh;
    }
    seen |= comp;
    out.push_back(comp);
  }
  return out;
}

struct MapCounter {
  const Graph& g;
  const SearchPlan& plan;
  bool injective;
  std::vector<int> image;
  std::uint64_t used = 0;

  std::uint64_t count(std::size_t depth) {
    std::uint64_t candidates = all_nodes(g.order());
    for (int j : plan.back[depth]) candidates &= g.neighbors(image[j]);
    if (injective) candidates &= ~used;
    if (depth + 1 == plan.order.size()) return static_cast<std::uint64_t>(std::popcount(candidates));
    std::uint64_t total = 0;
    while (candidates) {
      const int w = std::countr_zero(candidates);
      candidates &= candidates - 1;
      image[depth] = w;
      used |= bit(w);
      total += count(depth + 1);
      used &= ~bit(w);
    }
    return total;
  }
};

std::uint64_t count_maps(const Graph& f, std::uint64_t nodes, const Graph& g, bool injective) {
  if (nodes == 0) return 1;
  SearchPlan plan = make_plan(f, nodes);
  MapCounter counter{g, plan, injective, std::vector<int>(plan.order.size(), -1)};
  return counter.count(0);
}

}  // namespace

std::uint64_t hom_count(const Graph& f, const Graph& g) {
  require_cap("pattern node", kMaxPatternNodes, f.order());
  std::uint64_t total = 1;
  for (std::uint64_t comp : components(f)) {
    total *= count_maps(f, comp, g, false);
    if (total == 0) break;
  }
  return total;
}

std::uint64_t inj_count(const Graph& f, const Graph& g) {
  require_cap("pattern node", kMaxPatternNodes, f.order());
  if (f.order() > g.order()) return 0;
  return count_maps(f, all_nodes(f.order()), g, true);
}

Density t(const Graph& f, const Graph& g) {
  if (g.order() == 0) throw DomainError("t(F, K0) is undefined");
  Integer denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), static_cast<unsigned long>(g.order()),
                static_cast<unsigned long>(f.order()));
  Rational out(Integer(static_cast<unsigned long>(hom_count(f, g))), denominator);
  out.canonicalize();
  return out;
}

Density t_inj(const Graph& f, const Graph& g) {
  if (g.order() < f.order()) return 0;
  Integer falling = 1;
  for (int i = 0; i < f.order(); ++i) falling *= g.order() - i;
  Rational out(Integer(static_cast<unsigned long>(inj_count(f, g))), falling);
  out.canonicalize();
  return out;
}

namespace {

template <class T>
struct StepSum {
  const SearchPlan& plan;
  const std::vector<T>& widths;
  const std::vector<std::vector<T>>& values;
  std::vector<int> step;

  T sum(std::size_t depth) {
    const int s = static_cast<int>(widths.size());
    T total(0);
    const bool last = depth + 1 == plan.order.size();
    for (int k = 0; k < s; ++k) {
      T weight = widths[k];
      for (int j : plan.back[depth]) {
        const T& v = values[step[j]][k];
        if (v == 0) {
          weight = 0;
          break;
        }
        weight *= v;
      }
      if (weight == 0) continue;
      if (last) {
        total += weight;
      } else {
        step[depth] = k;
        total += weight * sum(depth + 1);
      }
    }
    return total;
  }
};

template <class T>
T step_density(const Graph& f, const std::vector<T>& widths,
               const std::vector<std::vector<T>>& values) {
  require_cap("pattern node", kMaxPatternNodes, f.order());
  require_cap("graphon density step", kMaxDensitySteps, static_cast<long long>(widths.size()));
  T total(1);
  for (std::uint64_t comp : components(f)) {
    SearchPlan plan = make_plan(f, comp);
    StepSum<T> summer{plan, widths, values, std::vector<int>(plan.order.size(), 0)};
    total *= summer.sum(0);
    if (total == 0) break;
  }
  return total;
}

}  // namespace

Density t_graphon(const Graph& f, const StepGraphon& w) {
  return step_density<Rational>(f, w.widths(), w.values());
}

double t_graphon_approx(const Graph& f, const std::vector<double>& widths,
                        const std::vector<std::vector<double>>& values) {
  return step_density<double>(f, widths, values);
}

}  // namespace graphlim
