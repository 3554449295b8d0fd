#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace meanfield {

/// A point of R^m, m >= 2. Coordinates are validated to be finite on
/// construction.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);

  static Point zero(int dim);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return coords_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& coords() const { return coords_; }

  bool operator==(const Point& other) const { return coords_ == other.coords_; }

 private:
  std::vector<double> coords_;
};

/// x + a*y, dimensions must agree.
Point axpy(const Point& x, double a, const Point& y);
double norm(const Point& x);
double dist(const Point& a, const Point& b);

struct Ball {
  Point center;
  double radius;
};

struct Box {
  Point lo;
  Point hi;
};

/// A bounded open domain of R^m with an exact signed distance to its
/// boundary: positive inside, negative outside. Restricted to balls and
/// axis-aligned boxes so that erosion and admissibility stay exact.
class Domain {
 public:
  static Domain ball(Point center, double radius);
  static Domain box(Point lo, Point hi);

  int dim() const;
  /// Signed Euclidean distance to the boundary (> 0 iff interior).
  double distance_to_boundary(const Point& x) const;
  bool contains(const Point& x) const { return distance_to_boundary(x) > 0.0; }
  /// Radius of the largest inscribed open ball.
  double inradius() const;
  std::pair<Point, Point> bounding_box() const;

  bool is_ball() const { return std::holds_alternative<Ball>(shape_); }
  bool is_box() const { return std::holds_alternative<Box>(shape_); }
  const Ball& as_ball() const { return std::get<Ball>(shape_); }
  const Box& as_box() const { return std::get<Box>(shape_); }

  /// Canonical text form, parseable by parse_domain.
  std::string describe() const;

 private:
  explicit Domain(std::variant<Ball, Box> shape) : shape_(std::move(shape)) {}
  std::variant<Ball, Box> shape_;
};

/// D_r: the set of interior points whose closed r-ball stays in the base
/// domain. May be empty; emptiness is queryable, not an error.
class ErodedDomain {
 public:
  ErodedDomain(Domain base, double offset);

  const Domain& base() const { return base_; }
  double offset() const { return offset_; }
  int dim() const { return base_.dim(); }

  bool contains(const Point& x) const {
    return base_.distance_to_boundary(x) > offset_;
  }
  double distance_to_boundary(const Point& x) const {
    return base_.distance_to_boundary(x) - offset_;
  }
  bool empty() const { return offset_ >= base_.inradius(); }
  std::pair<Point, Point> bounding_box() const;

 private:
  Domain base_;
  double offset_;
};

/// True iff the closed ball of radius r about x lies inside d.
bool is_admissible_sphere(const Domain& d, const Point& x, double r);

/// True iff every x + r1*y + r2*z with |y|,|z| <= 1 lies inside d,
/// enforced as dist(x, boundary) > r1 + r2.
bool is_admissible_triple(const Domain& d, const Point& x, double r1, double r2);

ErodedDomain erode(const Domain& d, double r);

/// Deterministic axis-aligned lattice of interior points. The lattice is
/// anchored at the bounding-box lower corner plus spacing/2 per axis, so
/// lattice points never fall on the boundary. Last axis varies fastest.
std::vector<Point> sample_interior(const Domain& d, double spacing);
std::vector<Point> sample_interior(const ErodedDomain& d, double spacing);

/// Parses "ball cx cy [cz ...] R" or "box lo1 ... lom hi1 ... him".
Domain parse_domain(const std::string& text);

}  // namespace meanfield
