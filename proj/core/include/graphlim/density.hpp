#pragma once

#include <cstdint>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/rational.hpp"

namespace graphlim {

inline constexpr int kMaxPatternNodes = 8;

/// Densities are reported exactly; use to_double() for a float view.
using Density = Rational;

/// Number of adjacency-preserving maps V(f) -> V(g). Labels are ignored.
std::uint64_t hom_count(const Graph& f, const Graph& g);

/// Number of injective adjacency-preserving maps; 0 when f is larger than g.
std::uint64_t inj_count(const Graph& f, const Graph& g);

/// hom(f,g) / |V(g)|^|V(f)|. Throws DomainError for g = K0.
Density t(const Graph& f, const Graph& g);

/// inj(f,g) over the falling factorial |V(g)|_(|V(f)|); t_inj(K0, g) = 1.
Density t_inj(const Graph& f, const Graph& g);

/// Exact t(f, W) as a finite sum over maps V(f) -> steps.
Density t_graphon(const Graph& f, const StepGraphon& w);

/// Floating-point t(f, W) for search heuristics.
double t_graphon_approx(const Graph& f, const std::vector<double>& widths,
                        const std::vector<std::vector<double>>& values);

}  // namespace graphlim
