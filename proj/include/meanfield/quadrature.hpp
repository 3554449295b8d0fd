#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "meanfield/geometry.hpp"

namespace meanfield {

/// Deterministic pairwise summation; the result depends only on the order
/// of the input, which keeps means reproducible run to run.
double pairwise_sum(std::span<const double> values);

enum class RuleKind { circle_trapezoid, product_gauss, monte_carlo };

std::string rule_kind_name(RuleKind kind);
RuleKind parse_rule_kind(const std::string& name);

/// A normalized quadrature rule on the unit sphere S_1(0) in R^m: nodes are
/// unit vectors and weights sum to 1, so weighted sums are surface means.
struct SphereQuadrature {
  int dim = 0;
  RuleKind kind = RuleKind::circle_trapezoid;
  int level = 0;
  std::uint64_t seed = 0;  // used by monte_carlo only
  std::vector<Point> nodes;
  std::vector<double> weights;

  std::string descriptor() const;
};

/// Total surface area of the unit sphere in R^m: 2 pi^{m/2} / Gamma(m/2).
double unit_sphere_area(int m);

/// Gauss-Legendre nodes and weights on [-1, 1] (weights sum to 2), found by
/// Newton iteration on the Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Builds a sphere rule.
///   circle_trapezoid (m=2): level equally spaced angles, weights 1/level.
///   product_gauss    (m=3): level Gauss-Legendre nodes in cos(theta) times
///                           2*level uniform longitudes.
///   monte_carlo    (any m): level normalized Gaussian directions from a
///                           seeded generator, weights 1/level.
SphereQuadrature sphere_rule(int m, int level, RuleKind kind, std::uint64_t seed = 0);

/// Default rule per dimension: m=2 trapezoid with 64 nodes, m=3 product
/// Gauss level 16, m>=4 Monte Carlo with 20000 samples.
SphereQuadrature default_rule(int m, std::uint64_t seed = 0);

/// Weighted surface mean sum_i w_i g(y_i) over the rule's nodes.
double surface_mean(const SphereQuadrature& rule,
                    const std::function<double(const Point&)>& g);

}  // namespace meanfield
