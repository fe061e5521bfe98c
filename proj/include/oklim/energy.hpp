#pragma once

namespace oklim {

/// Itemized energy. Limit functionals leave eta and gamma at zero.
struct EnergyBreakdown {
    double perimeter_term = 0.0;
    double self_h1_term = 0.0;      // whole-space self-interaction of each particle
    double regular_self_term = 0.0; // regular-part (g) self-interaction
    double cross_term = 0.0;        // interaction between distinct particles
    double total = 0.0;
    double eta = 0.0;
    double gamma = 0.0;

    void assemble() { total = perimeter_term + self_h1_term + regular_self_term + cross_term; }
};

} // namespace oklim
