#include "oklim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "oklim/error.hpp"
#include "oklim/kernels.hpp"

namespace oklim {

namespace {

constexpr double armijo = 1e-4;
constexpr double coalescence_guard = 1e-4;

struct Descent {
    std::vector<Vec> positions;
    double energy = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double min_pair_distance(int dim, const std::vector<Vec>& x) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            d = std::min(d, norm(dim, min_image(dim, {x[i][0] - x[j][0], x[i][1] - x[j][1], x[i][2] - x[j][2]})));
    return d;
}

std::vector<kernels::Charge> as_charges(const std::vector<Vec>& x, std::span<const double> masses) {
    std::vector<kernels::Charge> c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        c[i] = {x[i], masses[i]};
    return c;
}

std::vector<Vec> random_positions(int dim, std::size_t n, std::mt19937_64& rng) {
    std::vector<Vec> x(n);
    do {
        for (Vec& p : x)
            for (int a = 0; a < dim; ++a)
                p[a] = uniform01(rng);
    } while (n > 1 && min_pair_distance(dim, x) < 10 * coalescence_guard);
    return x;
}

Descent descend(const GreenFunction& green, std::span<const double> masses, std::vector<Vec> x,
                const PlaceOptions& options) {
    const int dim = green.dim();
    const std::size_t n = x.size();
    Descent out;
    auto energy = [&](const std::vector<Vec>& y) {
        return kernels::interaction_energy(green, as_charges(y, masses), kernels::Exec::parallel);
    };
    double e = energy(x);
    std::vector<Vec> g = kernels::interaction_gradient(green, as_charges(x, masses), kernels::Exec::parallel);
    auto norm2 = [&](const std::vector<Vec>& v) {
        double s = 0.0;
        for (const Vec& p : v)
            for (int a = 0; a < dim; ++a)
                s += p[a] * p[a];
        return s;
    };
    double gn2 = norm2(g);
    if (options.record_trace)
        out.trace.push_back(e);
    double step = 0.1 / static_cast<double>(n);
    int it = 0;
    for (; it < options.max_iterations; ++it) {
        if (std::sqrt(gn2) <= options.tol) {
            out.converged = true;
            break;
        }
        // Near a minimum the Armijo decrease drops below the round-off of E; inside that
        // band a step is accepted when it shrinks the gradient instead.
        const double noise = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(e));
        double s = 2.0 * step;
        bool accepted = false;
        std::vector<Vec> trial(n);
        std::vector<Vec> g_trial;
        double e_trial = 0.0;
        while (s > 1e-20) {
            for (std::size_t i = 0; i < n; ++i)
                for (int a = 0; a < dim; ++a)
                    trial[i][a] = wrap_unit(x[i][a] - s * g[i][a]);
            if (min_pair_distance(dim, trial) < coalescence_guard) {
                s *= 0.5;
                continue;
            }
            e_trial = energy(trial);
            g_trial.clear();
            if (e_trial <= e - armijo * s * gn2) {
                accepted = true;
                break;
            }
            if (e_trial <= e + noise) {
                g_trial = kernels::interaction_gradient(green, as_charges(trial, masses), kernels::Exec::parallel);
                if (norm2(g_trial) < gn2) {
                    accepted = true;
                    break;
                }
            }
            s *= 0.5;
        }
        if (!accepted)
            break; // line search exhausted
        if (!(e_trial <= e + noise))
            throw Error(ErrorKind::invalid_argument, "descent step increased the energy");
        step = s;
        x = std::move(trial);
        e = e_trial;
        g = g_trial.empty() ? kernels::interaction_gradient(green, as_charges(x, masses), kernels::Exec::parallel)
                            : std::move(g_trial);
        gn2 = norm2(g);
        if (options.record_trace)
            out.trace.push_back(e);
    }
    if (!out.converged && std::sqrt(gn2) <= options.tol)
        out.converged = true;
    out.positions = std::move(x);
    out.energy = e;
    out.grad_norm = std::sqrt(gn2);
    out.iterations = it;
    return out;
}

PointConfiguration to_config(int dim, const std::vector<Vec>& x, std::span<const double> masses) {
    std::vector<Particle> particles;
    for (std::size_t i = 0; i < x.size(); ++i)
        particles.push_back({masses[i], TorusPoint(dim, std::span<const double>(x[i].data(), dim))});
    return PointConfiguration(dim, std::move(particles));
}

} // namespace

const char* to_string(Lattice lattice) noexcept {
    return lattice == Lattice::square ? "square" : "triangular-sheared";
}

std::vector<double> sorted_pair_distances(const PointConfiguration& config) {
    std::vector<double> d;
    const auto p = config.particles();
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            d.push_back(torus_distance(p[i].position, p[j].position));
    std::sort(d.begin(), d.end());
    return d;
}

PointConfiguration lattice_arrangement(int dim, int n, double mass, Lattice lattice) {
    if (dim != 2 && dim != 3)
        throw Error(ErrorKind::invalid_argument, "dimension must be 2 or 3");
    if (n < 1)
        throw Error(ErrorKind::invalid_argument, "particle count must be positive");
    std::vector<Particle> particles;
    if (lattice == Lattice::square) {
        const int k = static_cast<int>(std::lround(std::pow(n, 1.0 / dim)));
        if (static_cast<int>(std::lround(std::pow(k, dim))) != n)
            throw Error(ErrorKind::incommensurate_count,
                        std::to_string(n) + " points do not form a square lattice in " + std::to_string(dim) + "D");
        const int kz = dim == 3 ? k : 1;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                for (int l = 0; l < kz; ++l) {
                    const double c[3] = {double(i) / k, double(j) / k, double(l) / k};
                    particles.push_back({mass, TorusPoint(dim, std::span<const double>(c, dim))});
                }
        return PointConfiguration(dim, std::move(particles));
    }
    if (dim != 2)
        throw Error(ErrorKind::incommensurate_count, "the triangular-sheared arrangement is two-dimensional");
    int best_rows = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int rows = 2; rows <= n; rows += 2) {
        if (n % rows != 0)
            continue;
        const double gap = std::abs(double(rows) / (n / rows) - 2.0 / std::sqrt(3.0));
        if (gap < best_gap) {
            best_gap = gap;
            best_rows = rows;
        }
    }
    if (best_rows == 0)
        throw Error(ErrorKind::incommensurate_count,
                    std::to_string(n) + " points do not fill an even number of sheared rows");
    const int cols = n / best_rows;
    for (int r = 0; r < best_rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const double xy[2] = {(c + 0.5 * (r % 2)) / cols, double(r) / best_rows};
            particles.push_back({mass, TorusPoint(2, std::span<const double>(xy, 2))});
        }
    return PointConfiguration(2, std::move(particles));
}

double lattice_candidate_energy(int dim, int n, double mass, Lattice lattice, const EwaldParameters& params) {
    const PointConfiguration config = lattice_arrangement(dim, n, mass, lattice);
    return kernels::interaction_energy(green_function(dim, params), config.charges());
}

OptimizationResult place(int dim, std::span<const double> masses, const PlaceOptions& options) {
    if (dim != 2 && dim != 3)
        throw Error(ErrorKind::invalid_argument, "dimension must be 2 or 3");
    if (masses.size() < 2)
        throw Error(ErrorKind::invalid_argument, "placement needs at least two particles");
    for (double m : masses)
        if (!(m > 0.0) || !std::isfinite(m))
            throw Error(ErrorKind::invalid_argument, "particle masses must be positive");
    if (!(options.tol >= 1e-12 && options.tol <= 1e-4))
        throw Error(ErrorKind::invalid_argument, "tolerance must lie in [1e-12, 1e-4]");
    if (options.restarts < 1)
        throw Error(ErrorKind::invalid_argument, "need at least one restart");
    const GreenFunction& green = green_function(dim, options.ewald);
    const std::size_t n = masses.size();

    std::vector<std::vector<Vec>> starts;
    if (options.initial) {
        if (options.initial->dim() != dim || options.initial->size() != n)
            throw Error(ErrorKind::invalid_argument, "initial configuration does not match the masses");
        std::vector<Vec> x;
        for (const Particle& p : options.initial->particles())
            x.push_back(p.position.coords());
        starts.push_back(std::move(x));
    }
    const bool equal = std::all_of(masses.begin(), masses.end(), [&](double m) { return masses_equal(m, masses[0]); });
    if (options.inject_lattice && equal && static_cast<int>(starts.size()) < options.restarts) {
        try {
            const PointConfiguration lattice = lattice_arrangement(dim, static_cast<int>(n), masses[0], Lattice::square);
            std::vector<Vec> x;
            for (const Particle& p : lattice.particles())
                x.push_back(p.position.coords());
            starts.push_back(std::move(x));
        } catch (const Error&) {
            // count does not fit a square lattice
        }
    }
    for (int r = static_cast<int>(starts.size()); r < options.restarts; ++r) {
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(seq);
        starts.push_back(random_positions(dim, n, rng));
    }

    std::vector<Descent> runs(starts.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t r = 0; r < starts.size(); ++r)
        runs[r] = descend(green, masses, starts[r], options);

    std::size_t best = 0;
    bool any = false;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const bool better = !any ? true : runs[r].energy < runs[best].energy;
        if (runs[r].converged && better) {
            best = r;
            any = true;
        }
    }
    if (!any)
        for (std::size_t r = 1; r < runs.size(); ++r)
            if (runs[r].energy < runs[best].energy)
                best = r;

    const Descent& d = runs[best];
    PointConfiguration config = to_config(dim, d.positions, masses);
    std::vector<double> distances = sorted_pair_distances(config);
    return OptimizationResult{std::move(config), d.energy, d.grad_norm, d.iterations, static_cast<int>(runs.size()),
                              static_cast<int>(best), d.converged, std::move(distances), d.trace};
}

} // namespace oklim
