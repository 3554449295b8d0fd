#pragma once

namespace meanfield {

/// Gamma function for x > 0 (Lanczos approximation, g=7, 9 coefficients).
double gamma_fn(double x);

/// Modified Bessel function I_nu(z) by ascending series, nu >= 0,
/// z in [0, 60]. The series is truncated once the next term drops below
/// 1e-17 times the partial sum.
double bessel_i(double nu, double z);

/// The sphere-mean amplification factor for solutions of the modified
/// Helmholtz equation in R^m:
///   a(mu r) = Gamma(m/2) * I_{(m-2)/2}(mu r) / (mu r / 2)^{(m-2)/2},
/// continuously extended with a = 1 at r = 0. Equals sinh(mu r)/(mu r)
/// for m = 3 and I_0(mu r) for m = 2.
double pan_coeff(int m, double mu, double r);

/// Inverse of pan_coeff in mu for fixed r: the unique mu >= 0 with
/// pan_coeff(m, mu, r) = rho. Bracket expansion by doubling from 1/r, then
/// bisection to absolute tolerance 1e-10 in mu*r. rho must be >= 1.
double invert_pan_coeff(int m, double r, double rho);

}  // namespace meanfield
