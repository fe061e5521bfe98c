#pragma once

#include <span>
#include <string>
#include <vector>

#include "oklim/energy.hpp"
#include "oklim/green.hpp"
#include "oklim/kernels.hpp"
#include "oklim/torus.hpp"

namespace oklim {

struct Particle {
    double mass;
    TorusPoint position;
};

/// Finite weighted point configuration sum_i m_i delta_{x_i} on T^d.
/// Construction rejects non-positive masses (invalid_argument) and positions closer
/// than 1e-9 in the min-image metric (coincident_points).
class PointConfiguration {
  public:
    PointConfiguration(int dim, std::vector<Particle> particles);

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return particles_.size(); }
    std::span<const Particle> particles() const noexcept { return particles_; }
    double total_mass() const;
    std::vector<kernels::Charge> charges() const;

    PointConfiguration translated(const Vec& shift) const;

  private:
    int dim_;
    std::vector<Particle> particles_;
};

/// Convention for the sum over distinct pairs: `ordered` counts (i,j) and (j,i),
/// `halved` counts each unordered pair once.
enum class PairConvention { ordered, halved };

/// Relative comparison used for 2D equal-mass checks.
bool masses_equal(double a, double b);

/// First-order limit: sum of envelope values in 2D, sum of ball-ansatz energies in 3D
/// (an upper bound for the true 3D value). Positions are never read.
double e0(const PointConfiguration& config);

/// Second-order limit. Breakdown fields: self_h1_term = n f0(m) (2D, zero in 3D),
/// regular_self_term = g(0) sum m_i^2, cross_term = the pair sum of m_i m_j G(x_i - x_j).
/// 2D configurations must have equal masses (unequal_masses_2d otherwise).
EnergyBreakdown f0_energy(const PointConfiguration& config, const EwaldParameters& params = {},
                          PairConvention convention = PairConvention::ordered);

struct AdmissibilityReport {
    bool is_optimal_partition = false;
    bool is_compact = false;
    bool heuristic = false; // 3D verdicts rest on the ball ansatz
    std::vector<std::string> detail;
};

AdmissibilityReport check_admissible(const PointConfiguration& config);

} // namespace oklim
