#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/rational.hpp"
#include "graphlim/rng.hpp"

namespace graphlim {

inline constexpr int kMaxDensitySteps = 32;
inline constexpr int kMaxCutNormSteps = 20;
inline constexpr int kMaxCutDistanceNodes = 8;

/// Symmetric step function on [0,1]^2: the unit interval is split into
/// consecutive steps of the given widths, and the kernel is constant on
/// each product of steps. Values may be any rational (signed kernels
/// arise as differences of graphons).
class StepKernel {
 public:
  StepKernel() = default;
  StepKernel(std::vector<Rational> widths, std::vector<std::vector<Rational>> values);

  int steps() const noexcept { return static_cast<int>(widths_.size()); }
  const std::vector<Rational>& widths() const noexcept { return widths_; }
  const std::vector<std::vector<Rational>>& values() const noexcept { return values_; }
  const Rational& value(int i, int j) const { return values_[i][j]; }

  /// Same kernel with step i moved to position perm[i].
  StepKernel permuted(std::span<const int> perm) const;

  friend bool operator==(const StepKernel&, const StepKernel&) = default;

 protected:
  std::vector<Rational> widths_;
  std::vector<std::vector<Rational>> values_;
};

/// Step graphon: a StepKernel with values in [0,1].
class StepGraphon : public StepKernel {
 public:
  StepGraphon() : StepGraphon(constant(Rational(0))) {}
  StepGraphon(std::vector<Rational> widths, std::vector<std::vector<Rational>> values);

  static StepGraphon constant(const Rational& p);

  friend bool operator==(const StepGraphon&, const StepGraphon&) = default;
};

/// Pointwise difference of two kernels on a common refinement of their steps.
StepKernel difference(const StepKernel& a, const StepKernel& b);
StepKernel shifted(const StepKernel& w, const Rational& c);  // w + c

/// W_G: n equal steps, value 1 on blocks ij with ij an edge, 0 elsewhere.
StepGraphon graphon_of(const Graph& g);

/// Exact cut norm. For step kernels an optimal pair (S,T) can be taken to
/// be unions of steps, so the search runs over step subsets only.
Rational cut_norm(const StepKernel& w);

/// Minimum over node bijections of ||W_G1 - W_G2^sigma||_cut. This is an
/// upper bound on the cut distance (measure-preserving maps are not
/// explored beyond node permutations).
Rational cut_distance_graphs(const Graph& g1, const Graph& g2);

/// Finitely supported distribution on step graphons.
class RandomGraphonModel {
 public:
  explicit RandomGraphonModel(std::vector<std::pair<Rational, StepGraphon>> atoms);
  static RandomGraphonModel singleton(StepGraphon w);

  const std::vector<std::pair<Rational, StepGraphon>>& atoms() const noexcept { return atoms_; }
  bool is_singleton() const noexcept { return atoms_.size() == 1; }

 private:
  std::vector<std::pair<Rational, StepGraphon>> atoms_;
};

/// Index of the drawn atom; atom i is drawn with its listed probability.
std::size_t sample_atom(const RandomGraphonModel& model, CounterRng& rng);
const StepGraphon& sample_graphon(const RandomGraphonModel& model, CounterRng& rng);

}  // namespace graphlim
