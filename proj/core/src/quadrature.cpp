#include "cvtele/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "cvtele/errors.hpp"

namespace cvtele {

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  if (n == 1) return {{0.0}, {2.0}};
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    // Ends with one extra pass so dp belongs to the converged node.
    for (int iter = 0, settled = 0; iter < 100 && settled < 2; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      if (std::abs(dx) < 1e-15) ++settled;
      if (settled < 2) x -= dx;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double edge_max(const std::function<Complex(double, double)>& f, double lx, double ly,
                int samples, bool vertical) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double frac = -1.0 + 2.0 * s / (samples - 1);
    for (double sign : {-1.0, 1.0}) {
      const Complex v = vertical ? f(sign * lx, frac * ly) : f(frac * lx, sign * ly);
      worst = std::max(worst, std::abs(v));
    }
  }
  return worst;
}

Complex tensor_rule(const std::function<Complex(double, double)>& f, double lx, double ly,
                    int n) {
  const GaussLegendreRule& rule = gauss_legendre(n);
  Complex total{};
  for (int i = 0; i < n; ++i) {
    Complex row{};
    const double x = lx * rule.nodes[i];
    for (int j = 0; j < n; ++j) row += rule.weights[j] * f(x, ly * rule.nodes[j]);
    total += rule.weights[i] * row;
  }
  return total * lx * ly;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

QuadratureResult integrate_plane(const std::function<Complex(double, double)>& f,
                                 const QuadratureOptions& options) {
  double lx = options.initial_half_width;
  double ly = options.initial_half_width;
  const int samples = std::max(options.edge_samples, 3);
  for (;;) {
    const bool x_ok = edge_max(f, lx, ly, samples, true) < options.boundary_tolerance;
    const bool y_ok = edge_max(f, lx, ly, samples, false) < options.boundary_tolerance;
    if (x_ok && y_ok) break;
    if (!x_ok) lx *= 1.5;
    if (!y_ok) ly *= 1.5;
    if (lx > options.max_half_width || ly > options.max_half_width) {
      throw ConvergenceError("integrate_plane: integrand does not decay within half width " +
                             std::to_string(options.max_half_width));
    }
  }

  QuadratureResult result;
  result.half_width_x = lx;
  result.half_width_y = ly;
  if (options.nodes > 0) {
    result.nodes = options.nodes;
    result.value = tensor_rule(f, lx, ly, options.nodes);
    return result;
  }
  Complex previous = tensor_rule(f, lx, ly, 64);
  for (int n : {96, 128}) {
    const Complex current = tensor_rule(f, lx, ly, n);
    const double diff = std::abs(current - previous);
    result.value = current;
    result.nodes = n;
    result.error_estimate = diff;
    if (diff <= options.relative_tolerance * std::max(std::abs(current), 1e-300)) return result;
    previous = current;
  }
  throw ConvergenceError("integrate_plane: node refinement stalled at relative difference " +
                         std::to_string(result.error_estimate / std::abs(result.value)));
}

}  // namespace cvtele
