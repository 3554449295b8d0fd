#include "meanfield/specialfn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace meanfield {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos g=7 coefficients (9 terms).
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kBesselZMax = 60.0;

// I_nu(z) / (z/2)^nu = sum_k (z^2/4)^k / (k! Gamma(nu+k+1)). Finite and
// equal to 1/Gamma(nu+1) at z = 0, which removes the singularity from the
// normalized coefficient a.
double bessel_i_scaled(double nu, double z) {
  const double q = z * z / 4.0;
  double term = 1.0 / gamma_fn(nu + 1.0);
  double sum = term;
  for (int k = 1; k <= 1000; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0))
    throw std::domain_error("gamma_fn: argument must be positive");
  if (x < 0.5) {
    // Reflection keeps the Lanczos sum on arguments >= 0.5.
    return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

double bessel_i(double nu, double z) {
  if (nu < 0.0) throw std::domain_error("bessel_i: order must be >= 0");
  if (z < 0.0) throw std::domain_error("bessel_i: argument must be >= 0");
  if (z > kBesselZMax)
    throw std::out_of_range("bessel_i: argument " + std::to_string(z) +
                            " exceeds supported range [0, 60]");
  // pow(0, 0) = 1, so z = 0 yields I_0(0) = 1 and I_nu(0) = 0 for nu > 0.
  return bessel_i_scaled(nu, z) * std::pow(z / 2.0, nu);
}

double pan_coeff(int m, double mu, double r) {
  if (m < 2) throw std::invalid_argument("pan_coeff: dimension must be >= 2");
  if (!(mu > 0.0)) throw std::invalid_argument("pan_coeff: mu must be positive");
  if (r < 0.0) throw std::invalid_argument("pan_coeff: r must be >= 0");
  const double z = mu * r;
  if (z > kBesselZMax)
    throw std::out_of_range("pan_coeff: mu*r = " + std::to_string(z) +
                            " exceeds supported range [0, 60]");
  const double nu = (m - 2) / 2.0;
  return gamma_fn(m / 2.0) * bessel_i_scaled(nu, z);
}

double invert_pan_coeff(int m, double r, double rho) {
  if (m < 2) throw std::invalid_argument("invert_pan_coeff: dimension must be >= 2");
  if (!(r > 0.0)) throw std::invalid_argument("invert_pan_coeff: r must be positive");
  if (rho < 1.0)
    throw std::domain_error("invert_pan_coeff: rho < 1 has no real solution");
  if (rho == 1.0) return 0.0;

  const double mu_cap = kBesselZMax / r;
  double lo = 0.0;
  double hi = 1.0 / r;
  int doublings = 0;
  while (pan_coeff(m, std::min(hi, mu_cap), r) < rho) {
    lo = hi;
    hi *= 2.0;
    if (hi >= mu_cap) {
      if (pan_coeff(m, mu_cap, r) < rho)
        throw std::out_of_range("invert_pan_coeff: rho exceeds a(60), outside the "
                                "supported Bessel range");
      hi = mu_cap;
      break;
    }
    if (++doublings > 60)
      throw std::runtime_error("invert_pan_coeff: bracket not found within 60 doublings");
  }
  // Bisection on the strictly increasing map mu -> a(mu r).
  while ((hi - lo) * r > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (pan_coeff(m, mid, r) < rho)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace meanfield
