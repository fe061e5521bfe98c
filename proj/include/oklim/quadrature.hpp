#pragma once

#include <vector>

#include "oklim/torus.hpp"

namespace oklim {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b].
GaussRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Product rule for the uniform average over a ball of radius `radius`
/// centered at the origin: weights sum to one. `order` sets the radial and
/// polar node counts; the azimuthal count is 2*order.
struct BallRule {
    std::vector<Vec> nodes;
    std::vector<double> weights;
};

BallRule ball_average_rule(int dim, double radius, int order);

} // namespace oklim
