#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meanfield/fields.hpp"
#include "meanfield/geometry.hpp"
#include "meanfield/means.hpp"
#include "meanfield/quadrature.hpp"

namespace meanfield {

/// Default verdict tolerance for analytic catalog fields.
inline constexpr double kDefaultAnalyticTol = 1e-8;
/// Default verdict tolerance for interpolated grid fields.
inline constexpr double kDefaultGridTol = 1e-3;
/// Default scale for the h^2 truncation allowance of finite-difference
/// based tests (threshold = tol + C_fd * h^2).
inline constexpr double kDefaultFdConstant = 10.0;
/// Ratios this close below 1 are treated as mu = 0 rather than as
/// counterevidence; covers quadrature noise on harmonic fields.
inline constexpr double kRatioClampTol = 1e-9;

/// Test radii as fractions of the distance to the boundary. The single
/// fraction stays strictly inside dist/2; the pair fractions sum below 1 so
/// the triple (x, r1, r2) is admissible.
struct RadiusPolicy {
  double single_fraction = 0.45;
  double pair_fraction_first = 0.25;
  double pair_fraction_second = 0.20;
};

struct PointRecord {
  Point x;
  std::vector<double> radii;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Outcome of one detection run: per-point residuals against thresholds,
/// aggregate statistics, and a verdict. The verdict is the conjunction of
/// the per-record checks; for tests with a uniform threshold that is
/// exactly max |residual| <= threshold.
struct DetectionReport {
  std::string test;
  std::string field_label;
  std::string domain;
  std::string rule;
  std::string confidence;  // "analytic field" or "numerical only"
  double tolerance = 0.0;
  std::vector<double> sampled_radii;
  std::optional<double> mu;
  std::optional<double> fd_step;
  std::optional<double> fd_constant;
  std::optional<double> mu_hat_mean;
  std::optional<double> mu_hat_stddev;
  int counterevidence = 0;
  std::optional<double> interior_max;
  std::optional<double> boundary_max;
  std::optional<double> margin;
  std::vector<PointRecord> records;
  double max_abs_residual = 0.0;
  double mean_abs_residual = 0.0;
  bool pass = false;
};

/// M(x, r, u) - u(x); zero for harmonic fields on admissible spheres.
double gauss_residual(const ScalarField& u, const Point& x, double r,
                      const SphereQuadrature& rule);

/// One-radius mean-value test: r(x) = single_fraction * dist(x, boundary)
/// at every lattice point. Passing is necessary and (by the converse
/// mean-value theorem) characteristic for harmonicity.
DetectionReport kellogg_test(const ScalarField& u, const Domain& d, double spacing,
                             const RadiusPolicy& policy, const SphereQuadrature& rule,
                             double tol = kDefaultAnalyticTol);

/// Iterated-mean identity test: I(x, r1(x), r2(x), u) = u(x) over
/// admissible triples chosen by the pair fractions.
DetectionReport iterated_test(const ScalarField& u, const Domain& d, double spacing,
                              const RadiusPolicy& policy, const SphereQuadrature& rule,
                              double tol = kDefaultAnalyticTol);

/// Tests harmonicity of the mean fields M(., r, u) for each sampled radius
/// by the discrete Laplacian on the eroded domain. The per-record threshold
/// is tol + fd_constant * h^2 to absorb finite-difference truncation.
DetectionReport mean_harmonicity_test(const ScalarField& u, const Domain& d,
                                      const std::vector<double>& radii, double spacing,
                                      double h, const SphereQuadrature& rule,
                                      double tol = kDefaultAnalyticTol,
                                      double fd_constant = kDefaultFdConstant);

/// Panharmonic mean-value test: M(x, r(x), u) = a(mu r(x)) u(x).
DetectionReport panharmonic_test(const ScalarField& u, const Domain& d, double mu,
                                 double spacing, const RadiusPolicy& policy,
                                 const SphereQuadrature& rule,
                                 double tol = kDefaultAnalyticTol);

/// Tests that every mean field M(., r, u) satisfies the modified Helmholtz
/// equation with the same coefficient mu^2.
DetectionReport panharmonic_mean_test(const ScalarField& u, const Domain& d, double mu,
                                      const std::vector<double>& radii, double spacing,
                                      double h, const SphereQuadrature& rule,
                                      double tol = kDefaultAnalyticTol,
                                      double fd_constant = kDefaultFdConstant);

struct MuEstimate {
  double mu_hat = 0.0;
  double dispersion = 0.0;
  DetectionReport report;
};

/// Estimates the Yukawa parameter by inverting the mean ratio
/// M(x, r, u) / u(x) per admissible sample with |u(x)| >= u_floor.
/// Ratios below 1 - kRatioClampTol admit no real mu and are recorded as
/// counterevidence; ratios within the clamp band give mu = 0. Low
/// dispersion across samples is evidence of panharmonicity. u_floor < 0
/// selects the default 1e-6 * max |u| over the lattice.
MuEstimate estimate_mu(const ScalarField& u, const Domain& d, double spacing,
                       const std::vector<double>& radii, const SphereQuadrature& rule,
                       double u_floor = -1.0, double dispersion_tol = 1e-6);

struct MaxPrincipleResult {
  double interior_max = 0.0;
  double boundary_max = 0.0;
  double margin = 0.0;  // interior_max - boundary_max
  Point interior_argmax;
};

/// Compares the lattice maximum over the interior with the lattice maximum
/// over the boundary. Functions satisfying the mean-value identities attain
/// their maximum on the boundary, so the margin stays within lattice
/// resolution; a positive margin is evidence against them.
MaxPrincipleResult max_principle_check(const ScalarField& u, const Domain& d,
                                       double spacing, double boundary_spacing);

/// max_principle_check wrapped as a report; the record residual is the
/// positive part of the margin.
DetectionReport max_principle_report(const ScalarField& u, const Domain& d,
                                     double spacing, double boundary_spacing,
                                     double lattice_tol = 1e-9);

/// Deterministic boundary sample of the domain, corners included for boxes.
std::vector<Point> boundary_points(const Domain& d, double spacing);

}  // namespace meanfield
