#include "oklim/local.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oklim/error.hpp"
#include "oklim/torus.hpp"

namespace oklim {

Mass::Mass(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw Error(ErrorKind::invalid_argument, "mass must be positive and finite, got " + std::to_string(value));
}

double e2d(Mass m) { return m * m / (2.0 * pi) + 2.0 * std::sqrt(pi * m); }

PartitionResult envelope_2d(Mass total) {
    const double M = total;
    // No part of an optimal partition with n >= 2 is lighter than the single-particle threshold.
    const int n_max = static_cast<int>(std::ceil(M / single_particle_threshold_2d)) + 1;
    PartitionResult best{1, M, e2d(total)};
    for (int n = 2; n <= n_max; ++n) {
        const double value = n * e2d(Mass(M / n));
        if (value < best.envelope_value)
            best = {n, M / n, value};
    }
    return best;
}

double f0(Mass m) { return m * m / (8.0 * pi) * (1.0 - 2.0 * std::log(m / pi)); }

double ball_radius_3d(Mass m) { return std::cbrt(3.0 * m / (4.0 * pi)); }

EnergyBreakdown e3d_ball(Mass m) {
    const double r = ball_radius_3d(m);
    EnergyBreakdown e;
    e.perimeter_term = 4.0 * pi * r * r;
    e.self_h1_term = 8.0 * pi * std::pow(r, 5) / 15.0;
    e.assemble();
    return e;
}

double concavity_coefficient(Mass m) {
    const EnergyBreakdown e = e3d_ball(m);
    return -2.0 / 9.0 * e.perimeter_term + 10.0 / 9.0 * e.self_h1_term;
}

double splitting_threshold_3d() {
    auto gap = [](double m) { return e3d_ball(Mass(m)).total - 2.0 * e3d_ball(Mass(m / 2.0)).total; };
    double lo = 1e-3, hi = 1e3;
    double f_lo = gap(lo);
    if ((f_lo < 0.0) == (gap(hi) < 0.0))
        throw Error(ErrorKind::no_root, "splitting threshold: bracket [1e-3, 1e3] does not change sign");
    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = gap(mid);
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double lipschitz_probe_envelope(double delta, int pairs) {
    if (!(delta > 0.0 && delta < 1.0))
        throw Error(ErrorKind::invalid_argument, "lipschitz probe: delta must lie in (0,1)");
    if (pairs < 1)
        throw Error(ErrorKind::invalid_argument, "lipschitz probe: need at least one pair");
    const double lo = delta, hi = 1.0 / delta;
    const double h = (hi - lo) / pairs;
    double prev = envelope_2d(Mass(lo)).envelope_value;
    double slope = 0.0;
    for (int i = 1; i <= pairs; ++i) {
        const double cur = envelope_2d(Mass(lo + i * h)).envelope_value;
        slope = std::max(slope, std::abs(cur - prev) / h);
        prev = cur;
    }
    return slope;
}

} // namespace oklim
