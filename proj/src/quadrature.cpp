#include "oklim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "oklim/error.hpp"

namespace oklim {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if (n == 0)
        return {1.0, 0.0};
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

} // namespace

GaussRule gauss_legendre(int n, double a, double b) {
    if (n < 1)
        throw Error(ErrorKind::invalid_argument, "gauss_legendre: n must be positive");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double dp = legendre(n, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = mid - half * x;
        rule.nodes[n - 1 - i] = mid + half * x;
        rule.weights[i] = rule.weights[n - 1 - i] = half * w;
    }
    return rule;
}

BallRule ball_average_rule(int dim, double radius, int order) {
    BallRule rule;
    const GaussRule radial = gauss_legendre(order, 0.0, radius);
    const int n_phi = 2 * order;
    if (dim == 2) {
        const double norm = 1.0 / (pi * radius * radius);
        for (int i = 0; i < order; ++i) {
            const double r = radial.nodes[i];
            const double wr = radial.weights[i] * r * norm * (2.0 * pi / n_phi);
            for (int p = 0; p < n_phi; ++p) {
                const double phi = 2.0 * pi * p / n_phi;
                rule.nodes.push_back({r * std::cos(phi), r * std::sin(phi), 0.0});
                rule.weights.push_back(wr);
            }
        }
        return rule;
    }
    const GaussRule polar = gauss_legendre(order, -1.0, 1.0);
    const double norm = 1.0 / (4.0 / 3.0 * pi * radius * radius * radius);
    for (int i = 0; i < order; ++i) {
        const double r = radial.nodes[i];
        const double wr = radial.weights[i] * r * r * norm;
        for (int j = 0; j < order; ++j) {
            const double c = polar.nodes[j];
            const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            const double w = wr * polar.weights[j] * (2.0 * pi / n_phi);
            for (int p = 0; p < n_phi; ++p) {
                const double phi = 2.0 * pi * p / n_phi;
                rule.nodes.push_back({r * s * std::cos(phi), r * s * std::sin(phi), r * c});
                rule.weights.push_back(w);
            }
        }
    }
    return rule;
}

} // namespace oklim
