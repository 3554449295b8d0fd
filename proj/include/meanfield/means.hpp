#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "meanfield/fields.hpp"
#include "meanfield/geometry.hpp"
#include "meanfield/quadrature.hpp"

namespace meanfield {

/// One evaluated mean: the center, the radius (or radii for the iterated
/// mean), the value, and the rule it was computed with.
struct MeanSample {
  Point center;
  std::vector<double> radii;
  double value = 0.0;
  std::string rule;
};

/// Spherical mean M(x, r, u): the normalized average of u over the sphere
/// of radius r about x, computed as sum_i w_i u(x + r y_i). By continuity
/// M(x, 0, u) = u(x) exactly. If the field carries a support domain the
/// sphere must be admissible in it.
double spherical_mean(const ScalarField& u, const Point& x, double r,
                      const SphereQuadrature& rule);

enum class IteratedMethod { nested, double_sum };

/// Iterated spherical mean I(x, r1, r2, u) = M(x, r1, M(., r2, u)).
/// "nested" averages inner means over the outer sphere; "double_sum"
/// evaluates the double node sum directly. Both reuse the single rule for
/// the two layers, so they agree to roundoff. Degenerate radii collapse:
/// I(x,0,0,u) = u(x) and I(x,0,r,u) = I(x,r,0,u) = M(x,r,u), exactly.
double iterated_mean(const ScalarField& u, const Point& x, double r1, double r2,
                     const SphereQuadrature& rule,
                     IteratedMethod method = IteratedMethod::nested);

/// The mean M(., r, u) tabulated on the lattice of the eroded domain's
/// bounding region. Lattice slots outside the eroded domain are absent
/// (NaN value, present = 0).
struct MeanField {
  int dim = 0;
  std::vector<double> grid_lo;  // first lattice coordinate per axis
  double spacing = 0.0;
  std::vector<int> counts;
  std::vector<double> values;   // row-major, last axis fastest; NaN if absent
  std::vector<std::uint8_t> present;
  double radius = 0.0;
  std::string rule;

  double node_coord(int axis, int j) const;
  std::size_t flat_index(const std::vector<int>& idx) const;
  Point node(const std::vector<int>& idx) const;
  std::size_t present_count() const;

  /// gridfield v1; absent slots are written as nan.
  void save_gridfield(std::ostream& out) const;
  /// Flat (x..., value) rows, present slots only.
  void save_csv(std::ostream& out) const;
};

MeanField mean_field(const ScalarField& u, const Domain& d, double r,
                     double spacing, const SphereQuadrature& rule);

}  // namespace meanfield
