#include "meanfield/means.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace meanfield {

namespace {

void check_mean_args(const ScalarField& u, const Point& x, const SphereQuadrature& rule) {
  if (u.dim() != x.dim())
    throw std::invalid_argument("spherical_mean: field/point dimension mismatch");
  if (rule.dim != x.dim())
    throw std::invalid_argument("spherical_mean: rule dimension mismatch");
}

void require_admissible_sphere(const ScalarField& u, const Point& x, double r) {
  if (u.support() && !is_admissible_sphere(*u.support(), x, r))
    throw std::runtime_error("spherical_mean: sphere of radius " + std::to_string(r) +
                             " is not admissible in the field's domain");
}

// sum_i w_i u(x + r y_i) with a reusable probe point and fixed pairwise
// summation order.
double mean_on_sphere(const ScalarField& u, const Point& x, double r,
                      const SphereQuadrature& rule) {
  std::vector<double> terms(rule.nodes.size());
  Point probe = x;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const Point& y = rule.nodes[i];
    for (int c = 0; c < x.dim(); ++c) probe[c] = x[c] + r * y[c];
    terms[i] = rule.weights[i] * u(probe);
  }
  return pairwise_sum(terms);
}

}  // namespace

double spherical_mean(const ScalarField& u, const Point& x, double r,
                      const SphereQuadrature& rule) {
  check_mean_args(u, x, rule);
  if (r < 0.0) throw std::invalid_argument("spherical_mean: r must be >= 0");
  if (r == 0.0) return u(x);
  require_admissible_sphere(u, x, r);
  return mean_on_sphere(u, x, r, rule);
}

double iterated_mean(const ScalarField& u, const Point& x, double r1, double r2,
                     const SphereQuadrature& rule, IteratedMethod method) {
  check_mean_args(u, x, rule);
  if (r1 < 0.0 || r2 < 0.0)
    throw std::invalid_argument("iterated_mean: radii must be >= 0");
  if (r1 == 0.0 && r2 == 0.0) return u(x);
  if (r1 == 0.0) return spherical_mean(u, x, r2, rule);
  if (r2 == 0.0) return spherical_mean(u, x, r1, rule);
  if (u.support() && !is_admissible_triple(*u.support(), x, r1, r2))
    throw std::runtime_error("iterated_mean: triple is not admissible in the field's domain");

  const std::size_t n = rule.nodes.size();
  if (method == IteratedMethod::nested) {
    std::vector<double> outer(n);
    Point shifted = x;
    for (std::size_t i = 0; i < n; ++i) {
      const Point& y = rule.nodes[i];
      for (int c = 0; c < x.dim(); ++c) shifted[c] = x[c] + r1 * y[c];
      outer[i] = rule.weights[i] * mean_on_sphere(u, shifted, r2, rule);
    }
    return pairwise_sum(outer);
  }
  std::vector<double> terms(n * n);
  Point probe = x;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& y = rule.nodes[i];
    for (std::size_t j = 0; j < n; ++j) {
      const Point& z = rule.nodes[j];
      for (int c = 0; c < x.dim(); ++c) probe[c] = x[c] + r1 * y[c] + r2 * z[c];
      terms[i * n + j] = rule.weights[i] * rule.weights[j] * u(probe);
    }
  }
  return pairwise_sum(terms);
}

double MeanField::node_coord(int axis, int j) const {
  return grid_lo[static_cast<std::size_t>(axis)] + j * spacing;
}

std::size_t MeanField::flat_index(const std::vector<int>& idx) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < counts.size(); ++a)
    flat = flat * static_cast<std::size_t>(counts[a]) + static_cast<std::size_t>(idx[a]);
  return flat;
}

Point MeanField::node(const std::vector<int>& idx) const {
  std::vector<double> coords(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a)
    coords[static_cast<std::size_t>(a)] = node_coord(a, idx[static_cast<std::size_t>(a)]);
  return Point(std::move(coords));
}

std::size_t MeanField::present_count() const {
  std::size_t n = 0;
  for (auto p : present) n += p;
  return n;
}

void MeanField::save_gridfield(std::ostream& out) const {
  out << "gridfield v1\n" << dim << "\n";
  for (std::size_t a = 0; a < counts.size(); ++a) out << (a ? " " : "") << counts[a];
  out << "\n";
  char buf[40];
  for (int a = 0; a < dim; ++a) {
    std::snprintf(buf, sizeof buf, "%.17g", node_coord(a, 0));
    out << (a ? " " : "") << buf;
  }
  for (int a = 0; a < dim; ++a) {
    std::snprintf(buf, sizeof buf, "%.17g", node_coord(a, counts[static_cast<std::size_t>(a)] - 1));
    out << " " << buf;
  }
  out << "\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (present[i]) {
      std::snprintf(buf, sizeof buf, "%.17g", values[i]);
      out << buf;
    } else {
      out << "nan";
    }
    out << ((i + 1) % 8 == 0 || i + 1 == values.size() ? "\n" : " ");
  }
}

void MeanField::save_csv(std::ostream& out) const {
  for (int a = 0; a < dim; ++a) out << "x" << (a + 1) << ",";
  out << "value\n";
  char buf[40];
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    if (present[flat]) {
      for (int a = 0; a < dim; ++a) {
        std::snprintf(buf, sizeof buf, "%.17g",
                      node_coord(a, idx[static_cast<std::size_t>(a)]));
        out << buf << ",";
      }
      std::snprintf(buf, sizeof buf, "%.17g", values[flat]);
      out << buf << "\n";
    }
    int axis = dim - 1;
    while (axis >= 0) {
      if (++idx[static_cast<std::size_t>(axis)] < counts[static_cast<std::size_t>(axis)])
        break;
      idx[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
  }
}

MeanField mean_field(const ScalarField& u, const Domain& d, double r, double spacing,
                     const SphereQuadrature& rule) {
  if (u.dim() != d.dim())
    throw std::invalid_argument("mean_field: field/domain dimension mismatch");
  if (rule.dim != d.dim())
    throw std::invalid_argument("mean_field: rule dimension mismatch");
  if (!(r > 0.0)) throw std::invalid_argument("mean_field: r must be positive");
  if (!(spacing > 0.0)) throw std::invalid_argument("mean_field: spacing must be positive");
  const ErodedDomain eroded = erode(d, r);
  if (eroded.empty())
    throw std::runtime_error("mean_field: eroded domain is empty (r >= inradius)");

  const auto [lo, hi] = eroded.bounding_box();
  MeanField out;
  out.dim = d.dim();
  out.spacing = spacing;
  out.radius = r;
  out.rule = rule.descriptor();
  out.grid_lo.resize(static_cast<std::size_t>(out.dim));
  out.counts.resize(static_cast<std::size_t>(out.dim));
  std::size_t total = 1;
  for (int a = 0; a < out.dim; ++a) {
    const double extent = hi[a] - lo[a];
    const int count = static_cast<int>(std::floor((extent - spacing / 2.0) / spacing)) + 1;
    if (count < 2)
      throw std::runtime_error("mean_field: spacing does not resolve the eroded domain "
                               "(need >= 2 lattice points per axis)");
    out.grid_lo[static_cast<std::size_t>(a)] = lo[a] + spacing / 2.0;
    out.counts[static_cast<std::size_t>(a)] = count;
    total *= static_cast<std::size_t>(count);
  }
  out.values.assign(total, std::numeric_limits<double>::quiet_NaN());
  out.present.assign(total, 0);

  std::vector<int> idx(static_cast<std::size_t>(out.dim), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    const Point p = out.node(idx);
    if (eroded.contains(p)) {
      out.values[flat] = spherical_mean(u, p, r, rule);
      out.present[flat] = 1;
    }
    int axis = out.dim - 1;
    while (axis >= 0) {
      if (++idx[static_cast<std::size_t>(axis)] <
          out.counts[static_cast<std::size_t>(axis)])
        break;
      idx[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
  }
  return out;
}

}  // namespace meanfield
