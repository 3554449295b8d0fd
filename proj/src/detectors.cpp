#include "meanfield/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "meanfield/specialfn.hpp"

namespace meanfield {

namespace {

constexpr double kPi = std::numbers::pi;

std::string confidence_for(const ScalarField& u) {
  return u.ground_truth() == GroundTruth::unknown ? "numerical only" : "analytic field";
}

DetectionReport base_report(std::string test, const ScalarField& u, const Domain& d,
                            const SphereQuadrature* rule, double tol) {
  DetectionReport rep;
  rep.test = std::move(test);
  rep.field_label = u.label();
  rep.domain = d.describe();
  rep.rule = rule ? rule->descriptor() : "";
  rep.confidence = confidence_for(u);
  rep.tolerance = tol;
  return rep;
}

void finalize(DetectionReport& rep) {
  double max_abs = 0.0, sum_abs = 0.0;
  bool all_pass = !rep.records.empty();
  for (const PointRecord& rec : rep.records) {
    max_abs = std::max(max_abs, std::abs(rec.residual));
    sum_abs += std::abs(rec.residual);
    all_pass = all_pass && rec.pass;
  }
  rep.max_abs_residual = max_abs;
  rep.mean_abs_residual = rep.records.empty() ? 0.0 : sum_abs / rep.records.size();
  rep.pass = all_pass;
}

bool sphere_ok(const ScalarField& u, const Domain& d, const Point& x, double r) {
  if (!is_admissible_sphere(d, x, r)) return false;
  if (u.support() && r > 0.0 && !is_admissible_sphere(*u.support(), x, r)) return false;
  return true;
}

void check_common(const ScalarField& u, const Domain& d, const SphereQuadrature& rule) {
  if (u.dim() != d.dim())
    throw std::invalid_argument("detector: field/domain dimension mismatch");
  if (rule.dim != d.dim())
    throw std::invalid_argument("detector: rule dimension mismatch");
}

// Shared driver for the finite-difference tests on mean fields: for each
// sampled radius, apply the discrete modified-Helmholtz operator to the
// callable x -> M(x, r, u) on the lattice of D_{r+h}.
DetectionReport fd_mean_test(const std::string& name, const ScalarField& u,
                             const Domain& d, double mu,
                             const std::vector<double>& radii, double spacing,
                             double h, const SphereQuadrature& rule, double tol,
                             double fd_constant) {
  check_common(u, d, rule);
  if (radii.empty()) throw std::invalid_argument(name + ": need at least one radius");
  if (!(h > 0.0)) throw std::invalid_argument(name + ": h must be positive");
  if (!(spacing > 0.0)) throw std::invalid_argument(name + ": spacing must be positive");

  DetectionReport rep = base_report(name, u, d, &rule, tol);
  rep.sampled_radii = radii;
  rep.fd_step = h;
  rep.fd_constant = fd_constant;
  if (mu > 0.0) rep.mu = mu;
  const double threshold = tol + fd_constant * h * h;

  const auto mean_r = [&](double r) {
    return [&u, &rule, r](const Point& p) { return spherical_mean(u, p, r, rule); };
  };
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument(name + ": radii must be positive");
    const ErodedDomain eroded = erode(d, r + h);
    if (eroded.empty())
      throw std::runtime_error(name + ": radius " + std::to_string(r) +
                               " plus stencil margin exhausts the domain");
    const std::vector<Point> lattice = sample_interior(eroded, spacing);
    if (lattice.empty())
      throw std::runtime_error(name + ": empty lattice for radius " + std::to_string(r));
    const auto field_r = mean_r(r);
    for (const Point& x : lattice) {
      const double res = helmholtz_residual(field_r, d.dim(), x, h, mu);
      rep.records.push_back({x, {r}, res, threshold, std::abs(res) <= threshold});
    }
  }
  finalize(rep);
  return rep;
}

}  // namespace

double gauss_residual(const ScalarField& u, const Point& x, double r,
                      const SphereQuadrature& rule) {
  return spherical_mean(u, x, r, rule) - u(x);
}

DetectionReport kellogg_test(const ScalarField& u, const Domain& d, double spacing,
                             const RadiusPolicy& policy, const SphereQuadrature& rule,
                             double tol) {
  check_common(u, d, rule);
  if (!(policy.single_fraction > 0.0 && policy.single_fraction < 1.0))
    throw std::invalid_argument("kellogg_test: single_fraction must lie in (0, 1)");
  const std::vector<Point> lattice = sample_interior(d, spacing);
  if (lattice.empty()) throw std::runtime_error("kellogg_test: empty sample set");

  DetectionReport rep = base_report("kellogg", u, d, &rule, tol);
  for (const Point& x : lattice) {
    const double r = policy.single_fraction * d.distance_to_boundary(x);
    if (!sphere_ok(u, d, x, r)) continue;
    const double res = gauss_residual(u, x, r, rule);
    rep.records.push_back({x, {r}, res, tol, std::abs(res) <= tol});
  }
  if (rep.records.empty())
    throw std::runtime_error("kellogg_test: no admissible samples");
  finalize(rep);
  return rep;
}

DetectionReport iterated_test(const ScalarField& u, const Domain& d, double spacing,
                              const RadiusPolicy& policy, const SphereQuadrature& rule,
                              double tol) {
  check_common(u, d, rule);
  if (policy.pair_fraction_first < 0.0 || policy.pair_fraction_second < 0.0 ||
      policy.pair_fraction_first + policy.pair_fraction_second >= 1.0)
    throw std::invalid_argument("iterated_test: pair fractions must be >= 0 and sum below 1");
  const std::vector<Point> lattice = sample_interior(d, spacing);
  if (lattice.empty()) throw std::runtime_error("iterated_test: empty sample set");

  DetectionReport rep = base_report("iterated", u, d, &rule, tol);
  for (const Point& x : lattice) {
    const double dist = d.distance_to_boundary(x);
    const double r1 = policy.pair_fraction_first * dist;
    const double r2 = policy.pair_fraction_second * dist;
    if (!is_admissible_triple(d, x, r1, r2)) continue;
    if (u.support() && !is_admissible_triple(*u.support(), x, r1, r2)) continue;
    const double res = iterated_mean(u, x, r1, r2, rule, IteratedMethod::nested) - u(x);
    rep.records.push_back({x, {r1, r2}, res, tol, std::abs(res) <= tol});
  }
  if (rep.records.empty())
    throw std::runtime_error("iterated_test: no admissible samples");
  finalize(rep);
  return rep;
}

DetectionReport mean_harmonicity_test(const ScalarField& u, const Domain& d,
                                      const std::vector<double>& radii, double spacing,
                                      double h, const SphereQuadrature& rule, double tol,
                                      double fd_constant) {
  return fd_mean_test("mean-harmonic", u, d, 0.0, radii, spacing, h, rule, tol,
                      fd_constant);
}

DetectionReport panharmonic_test(const ScalarField& u, const Domain& d, double mu,
                                 double spacing, const RadiusPolicy& policy,
                                 const SphereQuadrature& rule, double tol) {
  check_common(u, d, rule);
  if (!(mu > 0.0)) throw std::invalid_argument("panharmonic_test: mu must be positive");
  if (!(policy.single_fraction > 0.0 && policy.single_fraction < 1.0))
    throw std::invalid_argument("panharmonic_test: single_fraction must lie in (0, 1)");
  const std::vector<Point> lattice = sample_interior(d, spacing);
  if (lattice.empty()) throw std::runtime_error("panharmonic_test: empty sample set");

  DetectionReport rep = base_report("pan", u, d, &rule, tol);
  rep.mu = mu;
  for (const Point& x : lattice) {
    const double r = policy.single_fraction * d.distance_to_boundary(x);
    if (!sphere_ok(u, d, x, r)) continue;
    const double res =
        spherical_mean(u, x, r, rule) - pan_coeff(d.dim(), mu, r) * u(x);
    rep.records.push_back({x, {r}, res, tol, std::abs(res) <= tol});
  }
  if (rep.records.empty())
    throw std::runtime_error("panharmonic_test: no admissible samples");
  finalize(rep);
  return rep;
}

DetectionReport panharmonic_mean_test(const ScalarField& u, const Domain& d, double mu,
                                      const std::vector<double>& radii, double spacing,
                                      double h, const SphereQuadrature& rule, double tol,
                                      double fd_constant) {
  if (!(mu > 0.0))
    throw std::invalid_argument("panharmonic_mean_test: mu must be positive");
  return fd_mean_test("pan-mean", u, d, mu, radii, spacing, h, rule, tol, fd_constant);
}

MuEstimate estimate_mu(const ScalarField& u, const Domain& d, double spacing,
                       const std::vector<double>& radii, const SphereQuadrature& rule,
                       double u_floor, double dispersion_tol) {
  check_common(u, d, rule);
  if (radii.empty()) throw std::invalid_argument("estimate_mu: need at least one radius");
  const std::vector<Point> lattice = sample_interior(d, spacing);
  if (lattice.empty()) throw std::runtime_error("estimate_mu: empty sample set");

  double max_abs_u = 0.0;
  std::vector<double> u_values(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    u_values[i] = u(lattice[i]);
    max_abs_u = std::max(max_abs_u, std::abs(u_values[i]));
  }
  const double floor = u_floor < 0.0 ? 1e-6 * max_abs_u : u_floor;

  DetectionReport rep = base_report("estimate-mu", u, d, &rule, dispersion_tol);
  rep.sampled_radii = radii;

  struct Sample {
    Point x;
    double r;
    double mu_hat;
  };
  std::vector<Sample> samples;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const Point& x = lattice[i];
    if (std::abs(u_values[i]) < floor) continue;
    for (double r : radii) {
      if (!(r > 0.0)) throw std::invalid_argument("estimate_mu: radii must be positive");
      if (!sphere_ok(u, d, x, r)) continue;
      const double ratio = spherical_mean(u, x, r, rule) / u_values[i];
      if (ratio < 1.0 - kRatioClampTol) {
        // No real mu reproduces a ratio below 1.
        rep.records.push_back({x, {r}, ratio - 1.0, kRatioClampTol, false});
        ++rep.counterevidence;
        continue;
      }
      const double mu_hat = invert_pan_coeff(d.dim(), r, std::max(ratio, 1.0));
      samples.push_back({x, r, mu_hat});
    }
  }
  if (samples.empty() && rep.counterevidence == 0)
    throw std::runtime_error("estimate_mu: no usable samples (all below u_floor or "
                             "inadmissible)");

  MuEstimate est;
  if (!samples.empty()) {
    double mean = 0.0;
    for (const Sample& s : samples) mean += s.mu_hat;
    mean /= samples.size();
    double var = 0.0;
    for (const Sample& s : samples) var += (s.mu_hat - mean) * (s.mu_hat - mean);
    var /= samples.size();
    est.mu_hat = mean;
    est.dispersion = std::sqrt(var);
    for (const Sample& s : samples) {
      const double dev = s.mu_hat - mean;
      rep.records.push_back({s.x, {s.r}, dev, dispersion_tol,
                             std::abs(dev) <= dispersion_tol});
    }
  } else {
    est.mu_hat = 0.0;
    est.dispersion = std::numeric_limits<double>::infinity();
  }
  rep.mu_hat_mean = est.mu_hat;
  rep.mu_hat_stddev = est.dispersion;
  finalize(rep);
  est.report = std::move(rep);
  return est;
}

namespace {

void odometer_advance(std::vector<int>& idx, const std::vector<int>& counts, bool& done) {
  int axis = static_cast<int>(idx.size()) - 1;
  while (axis >= 0) {
    if (++idx[static_cast<std::size_t>(axis)] < counts[static_cast<std::size_t>(axis)])
      return;
    idx[static_cast<std::size_t>(axis)] = 0;
    --axis;
  }
  done = true;
}

void box_boundary(const Box& box, double spacing, std::vector<Point>& out) {
  const int m = box.lo.dim();
  for (int face_axis = 0; face_axis < m; ++face_axis) {
    for (int side = 0; side < 2; ++side) {
      // Inclusive lattice over the remaining axes; corners are included so
      // extrema at corners are captured.
      std::vector<int> counts, idx;
      std::vector<double> starts, steps;
      for (int a = 0; a < m; ++a) {
        if (a == face_axis) continue;
        const double extent = box.hi[a] - box.lo[a];
        const int n = std::max(2, static_cast<int>(std::ceil(extent / spacing)) + 1);
        counts.push_back(n);
        starts.push_back(box.lo[a]);
        steps.push_back(extent / (n - 1));
      }
      idx.assign(counts.size(), 0);
      bool done = counts.empty();
      std::vector<double> coords(static_cast<std::size_t>(m));
      while (!done) {
        std::size_t k = 0;
        for (int a = 0; a < m; ++a) {
          if (a == face_axis) {
            coords[static_cast<std::size_t>(a)] = side ? box.hi[a] : box.lo[a];
          } else {
            coords[static_cast<std::size_t>(a)] =
                starts[k] + idx[k] * steps[k];
            ++k;
          }
        }
        out.push_back(Point(coords));
        odometer_advance(idx, counts, done);
      }
    }
  }
}

void ball_boundary(const Ball& ball, double spacing, std::vector<Point>& out) {
  const int m = ball.center.dim();
  const double R = ball.radius;
  if (m == 2) {
    const int n = std::max(16, static_cast<int>(std::ceil(2.0 * kPi * R / spacing)));
    for (int k = 0; k < n; ++k) {
      const double theta = 2.0 * kPi * k / n;
      out.push_back(Point({ball.center[0] + R * std::cos(theta),
                           ball.center[1] + R * std::sin(theta)}));
    }
    return;
  }
  if (m == 3) {
    const int n_lat = std::max(3, static_cast<int>(std::ceil(kPi * R / spacing)) + 1);
    for (int i = 0; i < n_lat; ++i) {
      const double theta = kPi * i / (n_lat - 1);
      const double s = std::sin(theta), c = std::cos(theta);
      const int n_lon =
          std::max(1, static_cast<int>(std::ceil(2.0 * kPi * R * s / spacing)));
      for (int j = 0; j < n_lon; ++j) {
        const double phi = 2.0 * kPi * j / n_lon;
        out.push_back(Point({ball.center[0] + R * s * std::cos(phi),
                             ball.center[1] + R * s * std::sin(phi),
                             ball.center[2] + R * c}));
      }
    }
    return;
  }
  // m >= 4: deterministic quasi-uniform directions from a fixed seed; the
  // boundary maximum is approximate at this dimension.
  const SphereQuadrature dirs = sphere_rule(m, 8192, RuleKind::monte_carlo, 0x5eedba11u);
  for (const Point& y : dirs.nodes) out.push_back(axpy(ball.center, R, y));
}

}  // namespace

std::vector<Point> boundary_points(const Domain& d, double spacing) {
  if (!(spacing > 0.0))
    throw std::invalid_argument("boundary_points: spacing must be positive");
  std::vector<Point> out;
  if (d.is_box())
    box_boundary(d.as_box(), spacing, out);
  else
    ball_boundary(d.as_ball(), spacing, out);
  return out;
}

MaxPrincipleResult max_principle_check(const ScalarField& u, const Domain& d,
                                       double spacing, double boundary_spacing) {
  if (u.dim() != d.dim())
    throw std::invalid_argument("max_principle_check: field/domain dimension mismatch");
  const std::vector<Point> interior = sample_interior(d, spacing);
  if (interior.empty())
    throw std::invalid_argument("max_principle_check: empty interior lattice");
  const std::vector<Point> boundary = boundary_points(d, boundary_spacing);

  MaxPrincipleResult res;
  res.interior_max = -std::numeric_limits<double>::infinity();
  for (const Point& x : interior) {
    const double v = u(x);
    if (v > res.interior_max) {
      res.interior_max = v;
      res.interior_argmax = x;
    }
  }
  res.boundary_max = -std::numeric_limits<double>::infinity();
  for (const Point& x : boundary) res.boundary_max = std::max(res.boundary_max, u(x));
  res.margin = res.interior_max - res.boundary_max;
  return res;
}

DetectionReport max_principle_report(const ScalarField& u, const Domain& d,
                                     double spacing, double boundary_spacing,
                                     double lattice_tol) {
  const MaxPrincipleResult res = max_principle_check(u, d, spacing, boundary_spacing);
  DetectionReport rep = base_report("max-principle", u, d, nullptr, lattice_tol);
  rep.interior_max = res.interior_max;
  rep.boundary_max = res.boundary_max;
  rep.margin = res.margin;
  const double violation = std::max(res.margin, 0.0);
  rep.records.push_back({res.interior_argmax, {}, violation, lattice_tol,
                         violation <= lattice_tol});
  finalize(rep);
  return rep;
}

}  // namespace meanfield
