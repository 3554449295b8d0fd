#include "meanfield/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace meanfield {

namespace {

void check_dim_match(int a, int b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2)
    throw std::invalid_argument("Point: dimension must be >= 2");
  for (double c : coords_)
    if (!std::isfinite(c)) throw std::invalid_argument("Point: coordinates must be finite");
}

Point Point::zero(int dim) {
  return Point(std::vector<double>(static_cast<std::size_t>(dim), 0.0));
}

Point axpy(const Point& x, double a, const Point& y) {
  check_dim_match(x.dim(), y.dim(), "axpy");
  std::vector<double> out(static_cast<std::size_t>(x.dim()));
  for (int i = 0; i < x.dim(); ++i) out[static_cast<std::size_t>(i)] = x[i] + a * y[i];
  return Point(std::move(out));
}

double norm(const Point& x) {
  double s = 0.0;
  for (int i = 0; i < x.dim(); ++i) s += x[i] * x[i];
  return std::sqrt(s);
}

double dist(const Point& a, const Point& b) {
  check_dim_match(a.dim(), b.dim(), "dist");
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Domain Domain::ball(Point center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("Domain::ball: radius must be positive and finite");
  return Domain(Ball{std::move(center), radius});
}

Domain Domain::box(Point lo, Point hi) {
  check_dim_match(lo.dim(), hi.dim(), "Domain::box");
  for (int i = 0; i < lo.dim(); ++i)
    if (!(lo[i] < hi[i]))
      throw std::invalid_argument("Domain::box: lo must be strictly below hi per axis");
  return Domain(Box{std::move(lo), std::move(hi)});
}

int Domain::dim() const {
  if (is_ball()) return as_ball().center.dim();
  return as_box().lo.dim();
}

double Domain::distance_to_boundary(const Point& x) const {
  check_dim_match(x.dim(), dim(), "distance_to_boundary");
  if (is_ball()) {
    const Ball& b = as_ball();
    return b.radius - dist(x, b.center);
  }
  const Box& b = as_box();
  // q_i <= 0 inside per axis; the signed distance is exact on both sides.
  double max_q = -std::numeric_limits<double>::infinity();
  double outside_sq = 0.0;
  for (int i = 0; i < x.dim(); ++i) {
    const double q = std::max(b.lo[i] - x[i], x[i] - b.hi[i]);
    max_q = std::max(max_q, q);
    if (q > 0.0) outside_sq += q * q;
  }
  if (outside_sq > 0.0) return -std::sqrt(outside_sq);
  return -max_q;
}

double Domain::inradius() const {
  if (is_ball()) return as_ball().radius;
  const Box& b = as_box();
  double r = std::numeric_limits<double>::infinity();
  for (int i = 0; i < b.lo.dim(); ++i) r = std::min(r, (b.hi[i] - b.lo[i]) / 2.0);
  return r;
}

std::pair<Point, Point> Domain::bounding_box() const {
  if (is_ball()) {
    const Ball& b = as_ball();
    std::vector<double> lo(static_cast<std::size_t>(dim())), hi(lo.size());
    for (int i = 0; i < dim(); ++i) {
      lo[static_cast<std::size_t>(i)] = b.center[i] - b.radius;
      hi[static_cast<std::size_t>(i)] = b.center[i] + b.radius;
    }
    return {Point(std::move(lo)), Point(std::move(hi))};
  }
  const Box& b = as_box();
  return {b.lo, b.hi};
}

namespace {

void append_number(std::ostringstream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << ' ' << buf;
}

}  // namespace

std::string Domain::describe() const {
  std::ostringstream out;
  if (is_ball()) {
    const Ball& b = as_ball();
    out << "ball";
    for (int i = 0; i < dim(); ++i) append_number(out, b.center[i]);
    append_number(out, b.radius);
  } else {
    const Box& b = as_box();
    out << "box";
    for (int i = 0; i < dim(); ++i) append_number(out, b.lo[i]);
    for (int i = 0; i < dim(); ++i) append_number(out, b.hi[i]);
  }
  return out.str();
}

ErodedDomain::ErodedDomain(Domain base, double offset)
    : base_(std::move(base)), offset_(offset) {
  if (offset < 0.0 || !std::isfinite(offset))
    throw std::invalid_argument("ErodedDomain: offset must be nonnegative and finite");
}

std::pair<Point, Point> ErodedDomain::bounding_box() const {
  auto [lo, hi] = base_.bounding_box();
  for (int i = 0; i < dim(); ++i) {
    lo[i] += offset_;
    hi[i] -= offset_;
  }
  return {lo, hi};
}

bool is_admissible_sphere(const Domain& d, const Point& x, double r) {
  if (r < 0.0) throw std::invalid_argument("is_admissible_sphere: r must be >= 0");
  return d.distance_to_boundary(x) > r;
}

bool is_admissible_triple(const Domain& d, const Point& x, double r1, double r2) {
  if (r1 < 0.0 || r2 < 0.0)
    throw std::invalid_argument("is_admissible_triple: radii must be >= 0");
  return d.distance_to_boundary(x) > r1 + r2;
}

ErodedDomain erode(const Domain& d, double r) { return ErodedDomain(d, r); }

namespace {

// Lattice coordinates lo + spacing/2 + k*spacing per axis, last axis
// fastest; every emitted point passes the membership predicate.
template <typename Member>
std::vector<Point> lattice_points(const std::pair<Point, Point>& bounds, int dim,
                                  double spacing, Member&& member) {
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw std::invalid_argument("sample_interior: spacing must be positive");
  const Point& lo = bounds.first;
  const Point& hi = bounds.second;
  std::vector<int> counts(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    const double extent = hi[i] - lo[i];
    if (!(extent > 0.0)) return {};
    counts[static_cast<std::size_t>(i)] =
        static_cast<int>(std::floor((extent - spacing / 2.0) / spacing)) + 1;
    if (counts[static_cast<std::size_t>(i)] <= 0) return {};
  }
  std::vector<Point> out;
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  std::vector<double> coords(static_cast<std::size_t>(dim));
  while (true) {
    for (int i = 0; i < dim; ++i)
      coords[static_cast<std::size_t>(i)] =
          lo[i] + spacing / 2.0 + idx[static_cast<std::size_t>(i)] * spacing;
    Point p(coords);
    if (member(p)) out.push_back(std::move(p));
    int axis = dim - 1;
    while (axis >= 0) {
      if (++idx[static_cast<std::size_t>(axis)] <
          counts[static_cast<std::size_t>(axis)])
        break;
      idx[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return out;
}

}  // namespace

std::vector<Point> sample_interior(const Domain& d, double spacing) {
  return lattice_points(d.bounding_box(), d.dim(), spacing,
                        [&](const Point& p) { return d.contains(p); });
}

std::vector<Point> sample_interior(const ErodedDomain& d, double spacing) {
  if (d.empty()) return {};
  return lattice_points(d.bounding_box(), d.dim(), spacing,
                        [&](const Point& p) { return d.contains(p); });
}

Domain parse_domain(const std::string& text) {
  std::istringstream in(text);
  std::string kind;
  if (!(in >> kind)) throw std::invalid_argument("parse_domain: empty specification");
  std::vector<double> nums;
  double v;
  while (in >> v) nums.push_back(v);
  if (!in.eof())
    throw std::invalid_argument("parse_domain: malformed number in '" + text + "'");
  if (kind == "ball") {
    if (nums.size() < 3)
      throw std::invalid_argument("parse_domain: ball needs m>=2 center coords and a radius");
    const double radius = nums.back();
    nums.pop_back();
    return Domain::ball(Point(std::move(nums)), radius);
  }
  if (kind == "box") {
    if (nums.size() < 4 || nums.size() % 2 != 0)
      throw std::invalid_argument("parse_domain: box needs m>=2 lo coords then m hi coords");
    const std::size_t m = nums.size() / 2;
    std::vector<double> lo(nums.begin(), nums.begin() + static_cast<std::ptrdiff_t>(m));
    std::vector<double> hi(nums.begin() + static_cast<std::ptrdiff_t>(m), nums.end());
    return Domain::box(Point(std::move(lo)), Point(std::move(hi)));
  }
  throw std::invalid_argument("parse_domain: unknown shape '" + kind + "'");
}

}  // namespace meanfield
