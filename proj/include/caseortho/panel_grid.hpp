#pragma once

#include <memory>
#include <span>
#include <vector>

#include "caseortho/quadrature.hpp"

namespace caseortho {

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

/**
 * Composite Gauss-Legendre rule on a finite interval with panels graded
 * geometrically toward the endpoints that carry endpoint singularities.
 * Doubles as a piecewise-polynomial interpolant: values tabulated at
 * nodes() are interpolated panel by panel with the barycentric formula.
 */
class PanelGrid {
 public:
  struct Options {
    int nodes_per_panel = 16;
    bool grade_lo = true;
    bool grade_hi = true;
    /// Length ratio of consecutive graded panels.
    double ratio = 2.0;
    /// Length of the panel touching a graded endpoint, relative to the interval.
    double smallest = 1e-10;
    /// Absolute cap on panel length.
    double max_panel = 0.25;
  };

  PanelGrid(const Interval& range, const Options& opts);
  explicit PanelGrid(const Interval& range) : PanelGrid(range, Options{}) {}

  double lo() const noexcept { return breaks_.front(); }
  double hi() const noexcept { return breaks_.back(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t panels() const noexcept { return breaks_.size() - 1; }
  int nodes_per_panel() const noexcept { return npp_; }

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> breaks() const noexcept { return breaks_; }

  /// Interpolates samples given at nodes(); throws InterpolationError off [lo, hi].
  double interpolate(std::span<const double> values, double x) const;

  /// Quadrature sum of samples given at nodes().
  double integrate(std::span<const double> values) const;

  template <class F>
  std::vector<double> sample(F&& f) const {
    std::vector<double> out(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) out[i] = f(nodes_[i]);
    return out;
  }

 private:
  std::size_t panel_of(double x) const;

  int npp_;
  std::vector<double> breaks_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> ref_nodes_;
  std::vector<double> bary_;
};

using PanelGridPtr = std::shared_ptr<const PanelGrid>;

}  // namespace caseortho
