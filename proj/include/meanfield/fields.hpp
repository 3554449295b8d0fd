#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "meanfield/geometry.hpp"

namespace meanfield {

enum class GroundTruth { harmonic, panharmonic, other, unknown };

std::string ground_truth_name(GroundTruth truth);

/// An evaluatable real scalar field on R^m. Catalog fields carry their
/// analytically known classification; gridded fields are "unknown" and may
/// carry a support box outside of which evaluation fails.
class ScalarField {
 public:
  ScalarField(int dim, std::string label, GroundTruth truth,
              std::function<double(const Point&)> evaluator,
              std::optional<double> mu = std::nullopt,
              std::optional<Domain> support = std::nullopt);

  int dim() const { return dim_; }
  double operator()(const Point& x) const;
  const std::string& label() const { return label_; }
  GroundTruth ground_truth() const { return truth_; }
  /// The Yukawa parameter for fields tagged panharmonic.
  std::optional<double> mu() const { return mu_; }
  const std::optional<Domain>& support() const { return support_; }

 private:
  int dim_;
  std::string label_;
  GroundTruth truth_;
  std::function<double(const Point&)> evaluator_;
  std::optional<double> mu_;
  std::optional<Domain> support_;
};

/// Uniform tensor grid of samples over a bounding box with multilinear
/// interpolation. Values are stored row-major with the last axis fastest;
/// evaluation at a grid node reproduces the stored sample exactly.
class GridField {
 public:
  GridField(Point lo, Point hi, std::vector<int> counts, std::vector<double> values);

  int dim() const { return lo_.dim(); }
  const Point& lo() const { return lo_; }
  const Point& hi() const { return hi_; }
  const std::vector<int>& counts() const { return counts_; }
  const std::vector<double>& values() const { return values_; }

  double node_coord(int axis, int j) const;
  std::size_t flat_index(const std::vector<int>& idx) const;

  /// Multilinear interpolation; throws outside the bounding box.
  double operator()(const Point& x) const;

  /// gridfield v1 text format.
  void save(std::ostream& out) const;
  static GridField load(std::istream& in);

 private:
  Point lo_;
  Point hi_;
  std::vector<int> counts_;
  std::vector<double> values_;
  std::vector<double> step_;
};

/// Builds a catalog field from a spec string:
///   constant:<c>, coordinate:<i>, harmonic:<name>, fundamental,
///   exp-plane:<mu>:<dir>, quadratic, gaussian:<sigma>, product-pan:<mu>
/// where <name> is one of x1x2, x1sq-x2sq, x1x2x3, re_z<k>, im_z<k> and
/// <dir> is e<k> or a comma-separated vector (normalized).
ScalarField make_field(const std::string& spec, int m);

/// Loads a gridfield v1 file as a ScalarField with ground truth "unknown"
/// and the grid bounding box as support.
ScalarField load_grid_field(const std::string& path);
ScalarField load_grid_field(std::istream& in);

/// Central-difference residual of the modified Helmholtz operator,
///   sum_i [u(x+h e_i) - 2 u(x) + u(x-h e_i)] / h^2 - mu^2 u(x),
/// O(h^2)-consistent for C^4 fields. mu = 0 gives the Laplace residual.
double helmholtz_residual(const std::function<double(const Point&)>& u, int dim,
                          const Point& x, double h, double mu);
double helmholtz_residual(const ScalarField& u, const Point& x, double h, double mu);

}  // namespace meanfield
