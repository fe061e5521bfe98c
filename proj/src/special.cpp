#include "oklim/special.hpp"

#include <cmath>
#include <numbers>

namespace oklim::special {

double e1(double z) { return -std::expint(-z); }

double ein(double z) {
    if (z < 5.0) {
        double term = 1.0;
        double sum = 0.0;
        for (int k = 1; k < 200; ++k) {
            term *= -z / k; // (-z)^k / k!
            const double add = -term / k;
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum))
                break;
        }
        return sum;
    }
    return e1(z) + std::log(z) + euler_gamma;
}

double erf_over_r(double alpha, double r) {
    const double x = alpha * r;
    const double c = 2.0 * alpha / std::sqrt(std::numbers::pi);
    if (x < 1e-3) {
        const double x2 = x * x;
        return c * (1.0 - x2 / 3.0 + x2 * x2 / 10.0 - x2 * x2 * x2 / 42.0);
    }
    return std::erf(x) / r;
}

double ball_form_factor(int dim, double t) {
    const double t2 = t * t;
    if (dim == 3) {
        if (t < 1e-2)
            return 1.0 - t2 / 10.0 + t2 * t2 / 280.0 - t2 * t2 * t2 / 15120.0;
        return 3.0 * (std::sin(t) - t * std::cos(t)) / (t2 * t);
    }
    if (t < 1e-2)
        return 1.0 - t2 / 8.0 + t2 * t2 / 192.0 - t2 * t2 * t2 / 9216.0;
    return 2.0 * std::cyl_bessel_j(1.0, t) / t;
}

} // namespace oklim::special
