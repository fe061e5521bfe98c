#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oklim/green.hpp"
#include "oklim/limits.hpp"

namespace oklim {

struct PlaceOptions {
    int restarts = 8;
    std::uint64_t seed = 0;
    double tol = 1e-10;
    int max_iterations = 100000;
    EwaldParameters ewald{};
    /// Used as the first restart when present (positions must match the masses).
    std::optional<PointConfiguration> initial;
    /// Use the square lattice as one restart when the masses are equal and the count fits.
    bool inject_lattice = true;
    bool record_trace = false;
};

/// Candidate minimizer of the interaction energy sum_{i != j} m_i m_j G(x_i - x_j).
/// Outputs are stationary candidates; nothing here certifies global optimality.
struct OptimizationResult {
    PointConfiguration config;
    double energy = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    int restarts_used = 0;
    int best_restart = 0;
    bool converged = false;
    std::vector<double> pairwise_distances; // sorted min-image distances
    std::vector<double> energy_trace;       // accepted energies of the best restart, when recorded
};

/// Runs `restarts` independent descents (seeded, deterministic) and returns the
/// lowest-energy converged one; ties go to the lowest restart index. When no restart
/// reaches `tol` the best attempt is returned with converged = false.
OptimizationResult place(int dim, std::span<const double> masses, const PlaceOptions& options = {});

enum class Lattice { square, triangular_sheared };

const char* to_string(Lattice lattice) noexcept;

/// Square: n = k^d points on the k-grid. Triangular-sheared (2D): r rows of c points,
/// r even, alternate rows shifted by half a spacing, with the factorization n = r c
/// closest to equilateral. Throws incommensurate_count when n does not fit.
PointConfiguration lattice_arrangement(int dim, int n, double mass, Lattice lattice);
double lattice_candidate_energy(int dim, int n, double mass, Lattice lattice, const EwaldParameters& params = {});

std::vector<double> sorted_pair_distances(const PointConfiguration& config);

} // namespace oklim
