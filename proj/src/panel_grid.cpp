#include "caseortho/panel_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace caseortho {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

// Offsets from a graded endpoint: 0, s, s(1+r), ... ending exactly at `span`.
std::vector<double> graded_offsets(double span, double first, double ratio, double cap) {
  std::vector<double> out{0.0};
  double pos = 0.0;
  double step = first;
  while (true) {
    const double h = std::min(step, cap);
    if (pos + h >= span || span - (pos + h) < 0.5 * h) {
      out.push_back(span);
      break;
    }
    pos += h;
    out.push_back(pos);
    step *= ratio;
  }
  return out;
}

}  // namespace

PanelGrid::PanelGrid(const Interval& range, const Options& opts) : npp_(opts.nodes_per_panel) {
  if (!range.finite()) throw DomainError("PanelGrid: interval must be finite");
  if (npp_ < 2 || !(opts.ratio >= 1.0) || !(opts.smallest > 0.0) || !(opts.max_panel > 0.0)) {
    throw UsageError("PanelGrid: invalid options");
  }
  const double lo = range.lo;
  const double hi = range.hi;
  const double len = hi - lo;
  const double first = opts.smallest * len;

  if (opts.grade_lo && opts.grade_hi) {
    const auto left = graded_offsets(0.5 * len, first, opts.ratio, opts.max_panel);
    const auto right = graded_offsets(0.5 * len, first, opts.ratio, opts.max_panel);
    for (double o : left) breaks_.push_back(lo + o);
    for (auto it = right.rbegin() + 1; it != right.rend(); ++it) breaks_.push_back(hi - *it);
  } else if (opts.grade_lo) {
    for (double o : graded_offsets(len, first, opts.ratio, opts.max_panel)) breaks_.push_back(lo + o);
  } else if (opts.grade_hi) {
    const auto off = graded_offsets(len, first, opts.ratio, opts.max_panel);
    for (auto it = off.rbegin(); it != off.rend(); ++it) breaks_.push_back(hi - *it);
  } else {
    const auto n = static_cast<int>(std::ceil(len / opts.max_panel));
    for (int i = 0; i <= n; ++i) breaks_.push_back(lo + len * i / n);
  }
  breaks_.front() = lo;
  breaks_.back() = hi;

  const GaussLegendreRule ref = gauss_legendre(npp_);
  ref_nodes_ = ref.nodes;
  bary_.resize(npp_);
  for (int j = 0; j < npp_; ++j) {
    double prod = 1.0;
    for (int k = 0; k < npp_; ++k) {
      if (k != j) prod *= (ref_nodes_[j] - ref_nodes_[k]);
    }
    bary_[j] = 1.0 / prod;
  }
  const double scale = *std::max_element(bary_.begin(), bary_.end(),
                                         [](double a, double b) { return std::abs(a) < std::abs(b); });
  for (double& b : bary_) b /= std::abs(scale);

  nodes_.reserve(panels() * npp_);
  weights_.reserve(panels() * npp_);
  for (std::size_t p = 0; p < panels(); ++p) {
    const double a = breaks_[p];
    const double b = breaks_[p + 1];
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    for (int j = 0; j < npp_; ++j) {
      nodes_.push_back(c + h * ref.nodes[j]);
      weights_.push_back(h * ref.weights[j]);
    }
  }
}

std::size_t PanelGrid::panel_of(double x) const {
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  const auto idx = static_cast<std::size_t>(it - breaks_.begin());
  if (idx == 0) return 0;
  return std::min(idx - 1, panels() - 1);
}

double PanelGrid::interpolate(std::span<const double> values, double x) const {
  if (values.size() != nodes_.size()) {
    throw UsageError("PanelGrid::interpolate: sample count does not match the grid");
  }
  if (!(x >= lo() && x <= hi())) {
    throw InterpolationError("PanelGrid::interpolate: point outside the grid hull");
  }
  const std::size_t p = panel_of(x);
  const double a = breaks_[p];
  const double b = breaks_[p + 1];
  const double t = (2.0 * x - (a + b)) / (b - a);
  const std::size_t base = p * npp_;
  double num = 0.0;
  double den = 0.0;
  for (int j = 0; j < npp_; ++j) {
    const double d = t - ref_nodes_[j];
    if (d == 0.0) return values[base + j];
    const double w = bary_[j] / d;
    num += w * values[base + j];
    den += w;
  }
  return num / den;
}

double PanelGrid::integrate(std::span<const double> values) const {
  if (values.size() != nodes_.size()) {
    throw UsageError("PanelGrid::integrate: sample count does not match the grid");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += weights_[i] * values[i];
  return s;
}

}  // namespace caseortho
