#pragma once

#include <functional>
#include <vector>

#include "cvtele/types.hpp"

namespace cvtele {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, nodes by Newton iteration on P_n. Throws DomainError for n < 1.
/// Rules are cached; the returned reference stays valid for the program lifetime.
const GaussLegendreRule& gauss_legendre(int n);

struct QuadratureOptions {
  /// Fixed node count per axis; 0 selects the 64 -> 96 -> 128 refinement.
  int nodes = 0;
  /// The box grows until |f| on its boundary stays below this.
  double boundary_tolerance = 1e-14;
  /// Agreement required between successive node counts.
  double relative_tolerance = 1e-8;
  double initial_half_width = 4.0;
  double max_half_width = 400.0;
  /// Samples per box edge in the boundary test.
  int edge_samples = 65;
};

struct QuadratureResult {
  Complex value;
  double half_width_x = 0.0;
  double half_width_y = 0.0;
  int nodes = 0;
  /// |difference| between the last two node counts (0 for a fixed rule).
  double error_estimate = 0.0;
};

/// Integral of f over the plane for Gaussian-damped f, on a box
/// [-Lx, Lx] x [-Ly, Ly] grown independently in each direction. Throws
/// ConvergenceError if the box exceeds max_half_width or the node
/// refinement does not reach relative_tolerance.
QuadratureResult integrate_plane(const std::function<Complex(double, double)>& f,
                                 const QuadratureOptions& options = {});

}  // namespace cvtele
