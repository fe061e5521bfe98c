#pragma once

#include <cmath>

#include "oklim/energy.hpp"
#include "oklim/torus.hpp"

// Per-particle limit energies.
//
// 2D: e2d(m) = m^2/(2 pi) + 2 sqrt(pi m), the disc solving the area-constrained
// perimeter problem plus the logarithmic mass term. Its lower-semicontinuous
// envelope over mass partitions is attained by n equal parts.
//
// 3D: the local problem has no closed form. Everything here evaluates the
// ball ansatz, an upper bound for the true infimum.

namespace oklim {

/// Positive particle mass.
class Mass {
  public:
    explicit Mass(double value);
    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }

  private:
    double value_;
};

/// Optimal equal partition of a 2D mass.
struct PartitionResult {
    int n = 1;
    double per_mass = 0.0;
    double envelope_value = 0.0;
};

/// 2^{2/3} pi: mass of each part in the continuous relaxation of the 2D partition problem.
inline const double optimal_part_mass_2d = std::cbrt(4.0) * pi;
/// 2^{-2/3} pi: a part lighter than this must be the only part of an optimal partition.
inline const double single_particle_threshold_2d = pi / std::cbrt(4.0);

double e2d(Mass m);
PartitionResult envelope_2d(Mass total);

/// Self-interaction constant -(1/2pi) double integral of log|x-y| over the disc of area m.
double f0(Mass m);

/// Radius of the 3D ball of volume m.
double ball_radius_3d(Mass m);
/// Perimeter 4 pi r^2 plus whole-space H^{-1} self energy 8 pi r^5/15 of the ball of volume m.
EnergyBreakdown e3d_ball(Mass m);

/// -(2/9) perimeter + (10/9) self energy of the ball of volume m; negative iff m < 2 pi.
double concavity_coefficient(Mass m);

/// Mass above which two far-apart balls of half the volume beat one ball.
double splitting_threshold_3d();

/// Largest difference quotient of the 2D envelope over `pairs` consecutive pairs of a
/// uniform grid on [delta, 1/delta].
double lipschitz_probe_envelope(double delta, int pairs = 10000);

} // namespace oklim
