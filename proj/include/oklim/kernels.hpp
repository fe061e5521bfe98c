#pragma once

#include <span>
#include <vector>

#include "oklim/green.hpp"
#include "oklim/torus.hpp"

// Hot loops shared by the limit functionals, the optimizer and the sharp-interface
// evaluator. Each kernel has a serial reference and an OpenMP version; the OpenMP
// version reduces per-row partial sums in a fixed order, so its result does not
// depend on the thread count or schedule.

namespace oklim::kernels {

enum class Exec { serial, parallel };

struct Charge {
    Vec position;
    double mass;
};

/// Ordered pair sum sum_{i != j} m_i m_j G(x_i - x_j).
double interaction_energy(const GreenFunction& green, std::span<const Charge> charges, Exec exec = Exec::parallel);

/// Gradient of interaction_energy with respect to each position.
std::vector<Vec> interaction_gradient(const GreenFunction& green, std::span<const Charge> charges,
                                      Exec exec = Exec::parallel);

struct Ball {
    Vec center;
    double mass;
    double radius;
};

struct SpectralSums {
    double total = 0.0; // sum_k w(k) |S(k)|^2,  S(k) = sum_i m_i Phi(2 pi |k| a_i) e^{-2 pi i k.x_i}
    double self = 0.0;  // sum_k w(k) sum_i (m_i Phi(2 pi |k| a_i))^2
};

/// Gaussian-screened form-factor sums over 0 < |k| <= cutoff with
/// w(k) = exp(-pi^2 k^2/alpha^2)/(4 pi^2 k^2).
SpectralSums screened_spectral_sums(int dim, std::span<const Ball> balls, double alpha, int cutoff,
                                    Exec exec = Exec::parallel);

} // namespace oklim::kernels
