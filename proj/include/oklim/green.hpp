#pragma once

#include <compare>
#include <vector>

#include "oklim/torus.hpp"

namespace oklim {

/// Ewald splitting parameter and lattice shell radii for the real and Fourier sums.
struct EwaldParameters {
    double alpha = 1.7724538509055160273; // sqrt(pi)
    int real_cutoff = 6;
    int fourier_cutoff = 5;

    /// Smallest cutoffs whose combined tail bound is below 1e-13 in both dimensions.
    static EwaldParameters for_alpha(double alpha);
    /// Defaults, with alpha taken from OKLIM_EWALD_ALPHA when set.
    static EwaldParameters from_environment();

    /// Bound on the neglected real-space and Fourier terms of G.
    double tail_bound(int dim) const;
    void validate() const;

    auto operator<=>(const EwaldParameters&) const = default;
};

/// Zero-mean periodic Green's function of -Laplace on the unit torus,
/// -Lap G = delta - 1, evaluated by Ewald summation:
///
///   G(x) = sum_{k != 0} exp(-pi^2 k^2/alpha^2) cos(2 pi k.x) / (4 pi^2 k^2)
///        + sum_n psi(|x + n|) - 1/(4 alpha^2)
///
/// with psi(r) = erfc(alpha r)/(4 pi r) in 3D and E1(alpha^2 r^2)/(4 pi) in 2D.
/// The regular part is g = G - s with s(r) = 1/(4 pi r) (3D) or -log(r)/(2 pi) (2D),
/// taken on the min-image representative.
///
/// Instances are immutable after construction and safe to share between threads.
class GreenFunction {
  public:
    explicit GreenFunction(int dim, EwaldParameters params = {});

    int dim() const noexcept { return dim_; }
    const EwaldParameters& params() const noexcept { return params_; }

    /// Throws Error(singular_point) when the min-image distance is below 1e-9.
    double operator()(const Vec& x) const;
    Vec gradient(const Vec& x) const;
    double regular_part(const Vec& x) const;
    double regular_part_at_zero() const noexcept { return g0_; }

    /// Singular part s(r) of the decomposition G = s + g.
    double singular_part(double r) const;

  private:
    struct Mode {
        Vec wave; // 2 pi k
        double coeff;
    };

    Vec checked_min_image(const Vec& x) const;
    double fourier_sum(const Vec& x) const;
    double screened(double r) const;
    double screened_derivative(double r) const;

    int dim_;
    EwaldParameters params_;
    std::vector<Vec> shifts_;
    std::vector<Mode> modes_;
    double background_;
    double reach_; // real-space terms beyond this radius are below 1e-19
    double g0_;
};

/// Shared evaluator for (dim, params), built once on first use.
const GreenFunction& green_function(int dim, const EwaldParameters& params = {});

double green_eval(int dim, const Vec& x, const EwaldParameters& params = {});
Vec green_grad(int dim, const Vec& x, const EwaldParameters& params = {});
double regular_part(int dim, const Vec& x, const EwaldParameters& params = {});
double regular_part_at_zero(int dim, const EwaldParameters& params = {});

inline constexpr double singular_guard = 1e-9;

/// Bounds on the neglected terms of the Ewald sums for unit charge: real-space
/// shells beyond `cutoff` and Fourier modes beyond `cutoff`.
double ewald_real_tail(int dim, double alpha, int cutoff);
double ewald_fourier_tail(int dim, double alpha, int cutoff);

} // namespace oklim
