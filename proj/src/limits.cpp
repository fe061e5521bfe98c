#include "oklim/limits.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <tuple>

#include "oklim/error.hpp"
#include "oklim/local.hpp"

namespace oklim {

namespace {

std::string format(const char* fmt, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, fmt, a, b);
    return buf;
}

// Every grouping of the masses into merged blocks (n <= 8), or all single pair merges beyond that.
double best_regrouping_3d(std::span<const double> masses) {
    const std::size_t n = masses.size();
    double best = std::numeric_limits<double>::infinity();
    auto energy_of = [](std::span<const double> blocks) {
        double e = 0.0;
        for (double m : blocks)
            e += e3d_ball(Mass(m)).total;
        return e;
    };
    if (n <= 8) {
        std::vector<int> label(n, 0);
        std::function<void(std::size_t, int)> visit = [&](std::size_t i, int used) {
            if (i == n) {
                std::vector<double> blocks(used, 0.0);
                for (std::size_t k = 0; k < n; ++k)
                    blocks[label[k]] += masses[k];
                best = std::min(best, energy_of(blocks));
                return;
            }
            for (int b = 0; b <= used; ++b) {
                label[i] = b;
                visit(i + 1, std::max(used, b + 1));
            }
        };
        visit(0, 0);
        return best;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<double> blocks;
            for (std::size_t k = 0; k < n; ++k)
                if (k != i && k != j)
                    blocks.push_back(masses[k]);
            blocks.push_back(masses[i] + masses[j]);
            best = std::min(best, energy_of(blocks));
        }
    return best;
}

// Summation order fixed by (mass, position) so that results do not depend on the
// order in which particles were listed.
std::vector<kernels::Charge> canonical_charges(const PointConfiguration& config) {
    std::vector<kernels::Charge> c = config.charges();
    std::sort(c.begin(), c.end(), [](const kernels::Charge& a, const kernels::Charge& b) {
        return std::tie(a.mass, a.position) < std::tie(b.mass, b.position);
    });
    return c;
}

double sorted_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms)
        s += t;
    return s;
}

} // namespace

PointConfiguration::PointConfiguration(int dim, std::vector<Particle> particles)
    : dim_(dim), particles_(std::move(particles)) {
    if (dim != 2 && dim != 3)
        throw Error(ErrorKind::invalid_argument, "dimension must be 2 or 3");
    if (particles_.empty())
        throw Error(ErrorKind::invalid_argument, "configuration has no particles");
    for (const Particle& p : particles_) {
        if (!(p.mass > 0.0) || !std::isfinite(p.mass))
            throw Error(ErrorKind::invalid_argument, "particle masses must be positive");
        if (p.position.dim() != dim)
            throw Error(ErrorKind::invalid_argument, "particle position has the wrong dimension");
    }
    for (std::size_t i = 0; i < particles_.size(); ++i)
        for (std::size_t j = i + 1; j < particles_.size(); ++j)
            if (torus_distance(particles_[i].position, particles_[j].position) < singular_guard)
                throw Error(ErrorKind::coincident_points,
                            "particles " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

double PointConfiguration::total_mass() const {
    double m = 0.0;
    for (const Particle& p : particles_)
        m += p.mass;
    return m;
}

std::vector<kernels::Charge> PointConfiguration::charges() const {
    std::vector<kernels::Charge> c;
    c.reserve(particles_.size());
    for (const Particle& p : particles_)
        c.push_back({p.position.coords(), p.mass});
    return c;
}

PointConfiguration PointConfiguration::translated(const Vec& shift) const {
    std::vector<Particle> moved = particles_;
    for (Particle& p : moved)
        p.position = p.position.translated(shift);
    return PointConfiguration(dim_, std::move(moved));
}

bool masses_equal(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

double e0(const PointConfiguration& config) {
    std::vector<double> terms;
    for (const Particle& p : config.particles())
        terms.push_back(config.dim() == 2 ? envelope_2d(Mass(p.mass)).envelope_value : e3d_ball(Mass(p.mass)).total);
    return sorted_sum(std::move(terms));
}

EnergyBreakdown f0_energy(const PointConfiguration& config, const EwaldParameters& params, PairConvention convention) {
    const GreenFunction& green = green_function(config.dim(), params);
    const auto particles = config.particles();
    const double g0 = green.regular_part_at_zero();
    EnergyBreakdown e;
    if (config.dim() == 2) {
        const double m = particles[0].mass;
        for (const Particle& p : particles)
            if (!masses_equal(p.mass, m))
                throw Error(ErrorKind::unequal_masses_2d, "2D second-order limit requires equal masses");
        e.self_h1_term = particles.size() * f0(Mass(m));
    }
    std::vector<double> self;
    for (const Particle& p : particles)
        self.push_back(g0 * p.mass * p.mass);
    e.regular_self_term = sorted_sum(std::move(self));
    const auto charges = canonical_charges(config);
    const double pairs = kernels::interaction_energy(green, charges);
    e.cross_term = convention == PairConvention::ordered ? pairs : 0.5 * pairs;
    e.assemble();
    return e;
}

AdmissibilityReport check_admissible(const PointConfiguration& config) {
    AdmissibilityReport report;
    const auto particles = config.particles();
    const double total = config.total_mass();
    if (config.dim() == 2) {
        const double m = particles[0].mass;
        const bool equal = std::all_of(particles.begin(), particles.end(),
                                       [m](const Particle& p) { return masses_equal(p.mass, m); });
        if (!equal) {
            report.detail.push_back("masses are not all equal; optimal 2D partitions have equal parts");
        } else {
            const double value = particles.size() * e2d(Mass(m));
            const PartitionResult best = envelope_2d(Mass(total));
            report.is_optimal_partition = value <= best.envelope_value * (1.0 + 1e-12);
            report.detail.push_back(format("n e2d(m) = %.17g, envelope of total mass = %.17g", value, best.envelope_value));
        }
        report.is_compact = true;
        for (const Particle& p : particles) {
            const PartitionResult own = envelope_2d(Mass(p.mass));
            if (own.n != 1) {
                report.is_compact = false;
                report.detail.push_back(format("mass %.17g prefers splitting into %.0f parts", p.mass, own.n));
            }
        }
        return report;
    }

    report.heuristic = true;
    std::vector<double> masses;
    double current = 0.0;
    for (const Particle& p : particles) {
        masses.push_back(p.mass);
        current += e3d_ball(Mass(p.mass)).total;
    }
    double best = best_regrouping_3d(masses);
    for (std::size_t k = 1; k <= particles.size() + 2; ++k)
        best = std::min(best, k * e3d_ball(Mass(total / k)).total);
    for (std::size_t i = 0; i < masses.size(); ++i) {
        double split = current - e3d_ball(Mass(masses[i])).total + 2.0 * e3d_ball(Mass(masses[i] / 2.0)).total;
        best = std::min(best, split);
    }
    report.is_optimal_partition = current <= best * (1.0 + 1e-12);
    report.detail.push_back(format("ball-ansatz sum = %.17g, best regrouping = %.17g", current, best));
    const double threshold = splitting_threshold_3d();
    report.is_compact = std::all_of(masses.begin(), masses.end(), [threshold](double m) { return m <= threshold; });
    report.detail.push_back(format("ball-ansatz heuristic: compact iff every m <= %.17g", threshold));
    return report;
}

} // namespace oklim
