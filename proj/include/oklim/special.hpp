#pragma once

// Scalar special functions used by the Ewald kernels and the ball form factors.

namespace oklim::special {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// Exponential integral E1(z) for z > 0.
double e1(double z);

/// Entire function Ein(z) = integral_0^z (1 - exp(-t))/t dt = E1(z) + log z + euler_gamma.
double ein(double z);

/// erf(alpha r)/r, continuous at r = 0 where it equals 2 alpha/sqrt(pi).
double erf_over_r(double alpha, double r);

/// Fourier profile of the unit-mass ball: 3 (sin t - t cos t)/t^3 in 3D, 2 J1(t)/t in 2D.
double ball_form_factor(int dim, double t);

} // namespace oklim::special
