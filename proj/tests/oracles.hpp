#pragma once

// Independent reference computations used only by the test suites.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "oklim/quadrature.hpp"
#include "oklim/torus.hpp"

namespace oklim::oracle {

/// Direct Fourier lattice sum for G = sum_{k != 0} e^{2 pi i k.x} / (4 pi^2 |k|^2).
/// The sum along the axis with the largest |x_a| is carried out exactly:
///   sum_n e^{2 pi i n z}/(n^2 + q^2) = (pi/q) cosh(pi q (1 - 2z))/sinh(pi q),  z in [0,1],
///   sum_{n != 0} e^{2 pi i n z}/n^2 = 2 pi^2 (z^2 - z + 1/6),
/// and the remaining transverse lattice is truncated at |k_perp| <= cutoff.
inline double green_direct_fourier(int dim, Vec x, int cutoff = 60) {
    x = min_image(dim, x);
    int axis = 0;
    for (int a = 1; a < dim; ++a)
        if (std::abs(x[a]) > std::abs(x[axis]))
            axis = a;
    const double z = std::abs(x[axis]);
    std::vector<double> perp;
    for (int a = 0; a < dim; ++a)
        if (a != axis)
            perp.push_back(x[a]);

    double sum = (z * z - z + 1.0 / 6.0) / 2.0; // k_perp = 0
    auto longitudinal = [z](double q) {
        const double e = std::exp(-2.0 * pi * q);
        return (pi / q) * (std::exp(-2.0 * pi * q * z) + std::exp(-2.0 * pi * q * (1.0 - z))) / (1.0 - e);
    };
    if (dim == 2) {
        for (int k = 1; k <= cutoff; ++k)
            sum += 2.0 * std::cos(2.0 * pi * k * perp[0]) * longitudinal(k) / (4.0 * pi * pi);
        return sum;
    }
    for (int i = -cutoff; i <= cutoff; ++i)
        for (int j = -cutoff; j <= cutoff; ++j) {
            if ((i == 0 && j == 0) || i * i + j * j > cutoff * cutoff)
                continue;
            const double q = std::sqrt(double(i * i + j * j));
            sum += std::cos(2.0 * pi * (i * perp[0] + j * perp[1])) * longitudinal(q) / (4.0 * pi * pi);
        }
    return sum;
}

/// -(1/2pi) double integral of log|x - y| over the disc of area `area`, by brute-force
/// product quadrature: x on a polar Gauss grid, y in polar coordinates centered at x
/// (angle by trapezoid, radius by Gauss-Legendre after rho = R t^2).
inline double disc_log_self_energy(double area, int n) {
    const double radius = std::sqrt(area / pi);
    const GaussRule rx = gauss_legendre(n, 0.0, radius);
    const GaussRule rt = gauss_legendre(n, 0.0, 1.0);
    const int n_theta = 2 * n;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = rx.nodes[i];
        double outer = 0.0; // rotation invariance: integrate over x at angle 0, weight by 2 pi r
        for (int t = 0; t < n_theta; ++t) {
            const double th = 2.0 * pi * (t + 0.5) / n_theta;
            // chord from x = (r, 0) along direction th to the circle of radius R
            const double b = r * std::cos(th);
            const double reach = -b + std::sqrt(b * b - (r * r - radius * radius));
            double inner = 0.0;
            for (int k = 0; k < n; ++k) {
                const double u = rt.nodes[k];
                const double rho = reach * u * u;
                inner += rt.weights[k] * std::log(rho) * rho * (2.0 * reach * u);
            }
            outer += inner * (2.0 * pi / n_theta);
        }
        total += rx.weights[i] * 2.0 * pi * r * outer;
    }
    return -total / (2.0 * pi);
}

/// Whole-space H^{-1} self energy of the unit-density ball of radius R, from the radial
/// Poisson solution: -Lap u = chi_B gives u(r) = (1/r) int_0^r s^2 ds + int_r^R s ds inside,
/// and the energy is int_B u, all integrals by Gauss-Legendre quadrature.
inline double ball_poisson_self_energy(double radius, int n) {
    const GaussRule outer = gauss_legendre(n, 0.0, radius);
    double energy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = outer.nodes[i];
        const GaussRule left = gauss_legendre(n, 0.0, r);
        const GaussRule right = gauss_legendre(n, r, radius);
        double u = 0.0;
        for (int k = 0; k < n; ++k) {
            u += left.weights[k] * left.nodes[k] * left.nodes[k] / r;
            u += right.weights[k] * right.nodes[k];
        }
        energy += outer.weights[i] * 4.0 * pi * r * r * u;
    }
    return energy;
}

/// Perimeter of the disc of area m as the limit of inscribed regular polygons: the sum
/// of n chord lengths, relative error about pi^2/(6 n^2).
inline double disc_perimeter(double area, int n) {
    const double radius = std::sqrt(area / pi);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t0 = 2.0 * pi * i / n, t1 = 2.0 * pi * (i + 1) / n;
        s += std::hypot(radius * (std::cos(t1) - std::cos(t0)), radius * (std::sin(t1) - std::sin(t0)));
    }
    return s;
}

/// Power series for J1(t), used to check the 2D form factor.
inline double bessel_j1_series(double t) {
    double term = t / 2.0, sum = term;
    for (int k = 1; k < 80; ++k) {
        term *= -(t * t / 4.0) / (k * (k + 1.0));
        sum += term;
    }
    return sum;
}

} // namespace oklim::oracle
