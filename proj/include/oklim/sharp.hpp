#pragma once

#include <span>
#include <vector>

#include "oklim/energy.hpp"
#include "oklim/green.hpp"
#include "oklim/kernels.hpp"
#include "oklim/limits.hpp"

// Rescaled sharp-interface energies for configurations of disjoint balls.
//
// A configuration with scale eta encodes v = eta^{-d} sum_i chi_{B_i}, where B_i has
// volume eta^d m_i. The rescaled energies are
//
//   3D:  E = eta int |grad v| + eta |v|^2_{H^{-1}(T^3)}
//   2D:  E = eta int |grad v| + |log eta|^{-1} |v|^2_{H^{-1}(T^2)}
//
// and |v|^2 = sum_{ij} m_i m_j A_ij, A_ij the average of G over B_i x B_j.

namespace oklim {

/// Physical radius of the ball carrying mass m at scale eta.
double ball_radius(int dim, double mass, double eta);

/// gamma = eta^{-3} (3D) or 1/(|log eta| eta^3) (2D).
double gamma_for(int dim, double eta);

/// Disjoint balls on T^d at scale eta in (0, 0.25]. Construction enforces diameters
/// below 1/2 (diameter_too_large) and min-image clearance of at least 1e-6 between
/// balls (overlapping_balls).
class BallConfiguration {
  public:
    BallConfiguration(int dim, double eta, std::vector<Particle> particles);
    BallConfiguration(const PointConfiguration& points, double eta);

    int dim() const noexcept { return dim_; }
    double eta() const noexcept { return eta_; }
    std::size_t size() const noexcept { return particles_.size(); }
    std::span<const Particle> particles() const noexcept { return particles_; }
    double radius(std::size_t i) const { return radii_[i]; }
    double total_mass() const;
    PointConfiguration points() const;

  private:
    int dim_;
    double eta_;
    std::vector<Particle> particles_;
    std::vector<double> radii_;
};

struct SharpOptions {
    int fourier_cutoff = 24;
    double alpha = 0.0; // 0 selects min(pi * fourier_cutoff / 6.5, 1.25 / largest radius)
    kernels::Exec exec = kernels::Exec::parallel;
};

struct SharpEvaluation {
    EnergyBreakdown energy;
    double alpha = 0.0;
    double truncation_bound = 0.0; // bound on the neglected lattice terms, in energy units
};

/// Ewald-split spectral evaluation: the Gaussian-screened form-factor sum over
/// 0 < |k| <= cutoff plus the complementary short-range real-space part, whose
/// singular piece is integrated in closed form over each pair of balls and whose
/// smooth remainder uses product Gauss quadrature. Throws cutoff_too_small when the
/// cutoff is below 16 or the truncation bound exceeds 1e-8 of the total.
SharpEvaluation sharp_evaluate(const BallConfiguration& config, const SharpOptions& options = {});
EnergyBreakdown sharp_energy(const BallConfiguration& config, const SharpOptions& options = {});

/// Same energy from the mean-value identity for Delta G = 1 away from the lattice:
///   A_ij = G(x_i - x_j) + (a_i^2 + a_j^2)/(2(d+2)),   A_ii = s_i + g(0) + a_i^2/(d+2),
/// with s_i the whole-space self term of the ball.
EnergyBreakdown ball_energy_mean_value(const BallConfiguration& config, const EwaldParameters& params = {});

struct ExpansionRow {
    double eta;
    double energy;   // E_eta
    double quotient; // F_eta
    EnergyBreakdown breakdown;
};

/// F_eta = (E_eta - sum_i e3d_ball(m_i))/eta in 3D, |log eta| (E_eta - n e2d(m)) in 2D,
/// for balls of the template's masses at its positions. 2D templates must be
/// admissible (equal masses, optimal partition, compact); otherwise not_admissible.
std::vector<ExpansionRow> second_order_quotient(const PointConfiguration& tmpl, std::span<const double> etas,
                                                const SharpOptions& options = {});

/// Limit estimate from the two smallest etas under the model F_eta = F_0 + c eta.
double richardson_linear(std::span<const ExpansionRow> rows);

struct OriginalScale {
    double energy; // E(u) = eta^2 E_eta (3D) or eta E_eta (2D)
    double gamma;
};

OriginalScale rescale_to_original(const EnergyBreakdown& breakdown, int dim);

/// 2D concentration estimate: sum of support diameters against eta times the
/// perimeter term (= eta^2 sum_i int |grad v_i|).
struct DiameterEstimate {
    double diameter_sum;
    double perimeter_bound;
    bool holds;
};

DiameterEstimate diameter_estimate(const BallConfiguration& config);

} // namespace oklim
