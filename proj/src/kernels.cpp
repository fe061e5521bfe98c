#include "oklim/kernels.hpp"

#include <cmath>

#include "oklim/special.hpp"

namespace oklim::kernels {

namespace {

Vec difference(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

double row_energy(const GreenFunction& green, std::span<const Charge> c, std::size_t i) {
    double row = 0.0;
    for (std::size_t j = i + 1; j < c.size(); ++j)
        row += c[j].mass * green(difference(c[i].position, c[j].position));
    return 2.0 * c[i].mass * row;
}

Vec row_gradient(const GreenFunction& green, std::span<const Charge> c, std::size_t i) {
    Vec g{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (j == i)
            continue;
        const Vec gj = green.gradient(difference(c[i].position, c[j].position));
        for (int a = 0; a < 3; ++a)
            g[a] += c[j].mass * gj[a];
    }
    for (double& v : g)
        v *= 2.0 * c[i].mass;
    return g;
}

// One k_x slab of the half-space sum (k_x = i >= 0; for i = 0 only the upper half of the slab).
SpectralSums spectral_slab(int dim, std::span<const Ball> balls, double alpha, int cutoff, int i) {
    SpectralSums s;
    const int zr = dim == 3 ? cutoff : 0;
    std::vector<double> weighted(balls.size());
    for (int j = -cutoff; j <= cutoff; ++j)
        for (int l = -zr; l <= zr; ++l) {
            const bool upper = i > 0 || j > 0 || (j == 0 && l > 0);
            const int k2 = i * i + j * j + l * l;
            if (!upper || k2 > cutoff * cutoff)
                continue;
            const double kn = std::sqrt(double(k2));
            const double w = 2.0 * std::exp(-pi * pi * k2 / (alpha * alpha)) / (4.0 * pi * pi * k2);
            double re = 0.0, im = 0.0, self = 0.0;
            for (std::size_t b = 0; b < balls.size(); ++b) {
                const double amp = balls[b].mass * special::ball_form_factor(dim, 2.0 * pi * kn * balls[b].radius);
                const double phase = 2.0 * pi * (i * balls[b].center[0] + j * balls[b].center[1] + l * balls[b].center[2]);
                re += amp * std::cos(phase);
                im -= amp * std::sin(phase);
                self += amp * amp;
            }
            s.total += w * (re * re + im * im);
            s.self += w * self;
        }
    return s;
}

} // namespace

double interaction_energy(const GreenFunction& green, std::span<const Charge> charges, Exec exec) {
    const std::size_t n = charges.size();
    if (exec == Exec::serial) {
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j)
                    e += charges[i].mass * charges[j].mass * green(difference(charges[i].position, charges[j].position));
        return e;
    }
    std::vector<double> rows(n, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i)
        rows[i] = row_energy(green, charges, i);
    double e = 0.0;
    for (double r : rows)
        e += r;
    return e;
}

std::vector<Vec> interaction_gradient(const GreenFunction& green, std::span<const Charge> charges, Exec exec) {
    const std::size_t n = charges.size();
    std::vector<Vec> grad(n);
    if (exec == Exec::serial) {
        for (std::size_t i = 0; i < n; ++i)
            grad[i] = row_gradient(green, charges, i);
        return grad;
    }
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i)
        grad[i] = row_gradient(green, charges, i);
    return grad;
}

SpectralSums screened_spectral_sums(int dim, std::span<const Ball> balls, double alpha, int cutoff, Exec exec) {
    if (exec == Exec::serial) {
        // full lattice, no symmetry folding
        SpectralSums s;
        const int zr = dim == 3 ? cutoff : 0;
        for (int i = -cutoff; i <= cutoff; ++i)
            for (int j = -cutoff; j <= cutoff; ++j)
                for (int l = -zr; l <= zr; ++l) {
                    const int k2 = i * i + j * j + l * l;
                    if (k2 == 0 || k2 > cutoff * cutoff)
                        continue;
                    const double kn = std::sqrt(double(k2));
                    const double w = std::exp(-pi * pi * k2 / (alpha * alpha)) / (4.0 * pi * pi * k2);
                    double re = 0.0, im = 0.0, self = 0.0;
                    for (const Ball& b : balls) {
                        const double amp = b.mass * special::ball_form_factor(dim, 2.0 * pi * kn * b.radius);
                        const double phase = 2.0 * pi * (i * b.center[0] + j * b.center[1] + l * b.center[2]);
                        re += amp * std::cos(phase);
                        im -= amp * std::sin(phase);
                        self += amp * amp;
                    }
                    s.total += w * (re * re + im * im);
                    s.self += w * self;
                }
        return s;
    }
    std::vector<SpectralSums> slabs(cutoff + 1);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i <= cutoff; ++i)
        slabs[i] = spectral_slab(dim, balls, alpha, cutoff, i);
    SpectralSums s;
    for (const SpectralSums& slab : slabs) {
        s.total += slab.total;
        s.self += slab.self;
    }
    return s;
}

} // namespace oklim::kernels
