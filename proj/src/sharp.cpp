#include "oklim/sharp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "oklim/error.hpp"
#include "oklim/local.hpp"
#include "oklim/quadrature.hpp"
#include "oklim/special.hpp"

namespace oklim {

namespace {

constexpr double real_reach = 6.5; // alpha * gap beyond which screened terms are negligible

double prefactor(int dim, double eta) { return dim == 3 ? eta : 1.0 / std::abs(std::log(eta)); }

// Average over B_a x B_a of the whole-space kernel 1/(4 pi r) or -log(r)/(2 pi).
double singular_self_average(int dim, double a) {
    if (dim == 3)
        return 6.0 / (5.0 * 4.0 * pi * a);
    return -(std::log(a) - 0.25) / (2.0 * pi);
}

// Same for disjoint balls with centers at distance D (mean-value property).
double singular_pair_average(int dim, double distance) {
    return dim == 3 ? 1.0 / (4.0 * pi * distance) : -std::log(distance) / (2.0 * pi);
}

// Smooth remainder s(r) - psi(r) of the screened real-space kernel.
double smooth_kernel(int dim, double alpha, double r) {
    if (dim == 3)
        return special::erf_over_r(alpha, r) / (4.0 * pi);
    return (special::euler_gamma + 2.0 * std::log(alpha) - special::ein(alpha * alpha * r * r)) / (4.0 * pi);
}

} // namespace

double ball_radius(int dim, double mass, double eta) {
    return dim == 3 ? eta * std::cbrt(3.0 * mass / (4.0 * pi)) : eta * std::sqrt(mass / pi);
}

double gamma_for(int dim, double eta) {
    return dim == 3 ? 1.0 / (eta * eta * eta) : 1.0 / (std::abs(std::log(eta)) * eta * eta * eta);
}

BallConfiguration::BallConfiguration(int dim, double eta, std::vector<Particle> particles)
    : dim_(dim), eta_(eta), particles_(std::move(particles)) {
    if (dim != 2 && dim != 3)
        throw Error(ErrorKind::invalid_argument, "dimension must be 2 or 3");
    if (!(eta > 0.0 && eta <= 0.25))
        throw Error(ErrorKind::invalid_argument, "eta must lie in (0, 0.25]");
    if (particles_.empty())
        throw Error(ErrorKind::invalid_argument, "configuration has no particles");
    for (const Particle& p : particles_) {
        if (!(p.mass > 0.0) || !std::isfinite(p.mass))
            throw Error(ErrorKind::invalid_argument, "particle masses must be positive");
        if (p.position.dim() != dim)
            throw Error(ErrorKind::invalid_argument, "particle position has the wrong dimension");
        radii_.push_back(ball_radius(dim, p.mass, eta));
        if (2.0 * radii_.back() >= 0.5)
            throw Error(ErrorKind::diameter_too_large, "ball diameter must be below 1/2");
    }
    for (std::size_t i = 0; i < particles_.size(); ++i)
        for (std::size_t j = i + 1; j < particles_.size(); ++j) {
            const double gap = torus_distance(particles_[i].position, particles_[j].position) - radii_[i] - radii_[j];
            if (gap < 1e-6)
                throw Error(ErrorKind::overlapping_balls,
                            "balls " + std::to_string(i) + " and " + std::to_string(j) + " overlap or touch");
        }
}

BallConfiguration::BallConfiguration(const PointConfiguration& points, double eta)
    : BallConfiguration(points.dim(), eta, std::vector<Particle>(points.particles().begin(), points.particles().end())) {}

double BallConfiguration::total_mass() const {
    double m = 0.0;
    for (const Particle& p : particles_)
        m += p.mass;
    return m;
}

PointConfiguration BallConfiguration::points() const { return PointConfiguration(dim_, particles_); }

SharpEvaluation sharp_evaluate(const BallConfiguration& config, const SharpOptions& options) {
    const int dim = config.dim();
    const int cutoff = options.fourier_cutoff;
    if (cutoff < 16)
        throw Error(ErrorKind::cutoff_too_small, "Fourier cutoff must be at least 16");
    const double eta = config.eta();
    const auto particles = config.particles();
    const std::size_t n = particles.size();
    double a_max = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        a_max = std::max(a_max, config.radius(i));
    // Large balls get a softer split so the smooth remainder stays cheap to integrate.
    const double alpha = options.alpha > 0.0 ? options.alpha : std::min(pi * cutoff / real_reach, 1.25 / a_max);
    const double total_mass = config.total_mass();

    std::vector<kernels::Ball> balls;
    for (std::size_t i = 0; i < n; ++i)
        balls.push_back({particles[i].position.coords(), particles[i].mass, config.radius(i)});
    const kernels::SpectralSums spectral = kernels::screened_spectral_sums(dim, balls, alpha, cutoff, options.exec);

    // Real-space part, accumulated as mass-weighted averages.
    const double reach = real_reach / alpha;
    const int images = static_cast<int>(std::ceil(reach + 0.5 + std::sqrt(double(dim)) / 2.0));
    std::map<std::pair<std::size_t, int>, BallRule> rules;
    auto rule_for = [&](std::size_t i, int order) -> const BallRule& {
        auto it = rules.find({i, order});
        if (it == rules.end())
            it = rules.emplace(std::pair{i, order}, ball_average_rule(dim, config.radius(i), order)).first;
        return it->second;
    };

    double self_regular = 0.0; // sum_i m_i^2 (A_ii - s_i) without the Fourier and background parts
    double cross_real = 0.0;
    double self_singular = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ai = config.radius(i);
        self_singular += particles[i].mass * particles[i].mass * singular_self_average(dim, ai);
        for (std::size_t j = i; j < n; ++j) {
            const double aj = config.radius(j);
            const Vec d = displacement(particles[i].position, particles[j].position);
            const double spread = alpha * (ai + aj);
            const int order = dim == 3 ? std::clamp(4 + static_cast<int>(std::ceil(1.6 * spread)), 4, 16)
                                       : std::clamp(6 + static_cast<int>(std::ceil(3.0 * spread)), 6, 32);
            const BallRule& ri = rule_for(i, order);
            const BallRule& rj = rule_for(j, order);
            double pair = 0.0;
            const int zr = dim == 3 ? images : 0;
            for (int s = -images; s <= images; ++s)
                for (int t = -images; t <= images; ++t)
                    for (int u = -zr; u <= zr; ++u) {
                        const Vec shift{d[0] + s, d[1] + t, d[2] + u};
                        const double distance = norm(dim, shift);
                        const bool central = i == j && s == 0 && t == 0 && u == 0;
                        if (!central && distance - ai - aj >= reach)
                            continue;
                        double smooth = 0.0;
                        for (std::size_t p = 0; p < ri.nodes.size(); ++p) {
                            double row = 0.0;
                            for (std::size_t q = 0; q < rj.nodes.size(); ++q) {
                                const Vec z{ri.nodes[p][0] - rj.nodes[q][0] + shift[0],
                                            ri.nodes[p][1] - rj.nodes[q][1] + shift[1],
                                            ri.nodes[p][2] - rj.nodes[q][2] + shift[2]};
                                row += rj.weights[q] * smooth_kernel(dim, alpha, norm(dim, z));
                            }
                            smooth += ri.weights[p] * row;
                        }
                        // the singular piece of the central self term is counted in self_singular
                        pair += (central ? 0.0 : singular_pair_average(dim, distance)) - smooth;
                    }
            const double mm = particles[i].mass * particles[j].mass;
            if (i == j)
                self_regular += mm * pair;
            else
                cross_real += 2.0 * mm * pair;
        }
    }

    double self_mass2 = 0.0;
    for (const Particle& p : particles)
        self_mass2 += p.mass * p.mass;
    const double background = 1.0 / (4.0 * alpha * alpha);

    const double P = prefactor(dim, eta);
    SharpEvaluation out;
    out.alpha = alpha;
    EnergyBreakdown& e = out.energy;
    e.eta = eta;
    e.gamma = gamma_for(dim, eta);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = config.radius(i);
        const double surface = dim == 3 ? 4.0 * pi * a * a : 2.0 * pi * a;
        e.perimeter_term += eta * surface / std::pow(eta, dim);
    }
    e.self_h1_term = P * self_singular;
    e.regular_self_term = P * (spectral.self + self_regular - background * self_mass2);
    e.cross_term = P * ((spectral.total - spectral.self) + cross_real - background * (total_mass * total_mass - self_mass2));
    e.assemble();

    out.truncation_bound = P * total_mass * total_mass *
                           (ewald_fourier_tail(dim, alpha, cutoff) + ewald_real_tail(dim, alpha, images) + 1e-19);
    if (out.truncation_bound > 1e-8 * std::abs(e.total))
        throw Error(ErrorKind::cutoff_too_small, "lattice-sum truncation bound exceeds 1e-8 of the total energy");
    return out;
}

EnergyBreakdown sharp_energy(const BallConfiguration& config, const SharpOptions& options) {
    return sharp_evaluate(config, options).energy;
}

EnergyBreakdown ball_energy_mean_value(const BallConfiguration& config, const EwaldParameters& params) {
    const int dim = config.dim();
    const double eta = config.eta();
    const GreenFunction& green = green_function(dim, params);
    const auto particles = config.particles();
    const double P = prefactor(dim, eta);
    EnergyBreakdown e;
    e.eta = eta;
    e.gamma = gamma_for(dim, eta);
    for (std::size_t i = 0; i < particles.size(); ++i) {
        const double a = config.radius(i);
        const double m = particles[i].mass;
        const double surface = dim == 3 ? 4.0 * pi * a * a : 2.0 * pi * a;
        e.perimeter_term += eta * surface / std::pow(eta, dim);
        e.self_h1_term += P * m * m * singular_self_average(dim, a);
        e.regular_self_term += P * m * m * (green.regular_part_at_zero() + a * a / (dim + 2.0));
        for (std::size_t j = 0; j < particles.size(); ++j) {
            if (j == i)
                continue;
            const double b = config.radius(j);
            const double G = green(displacement(particles[i].position, particles[j].position));
            e.cross_term += P * m * particles[j].mass * (G + (a * a + b * b) / (2.0 * (dim + 2.0)));
        }
    }
    e.assemble();
    return e;
}

std::vector<ExpansionRow> second_order_quotient(const PointConfiguration& tmpl, std::span<const double> etas,
                                                const SharpOptions& options) {
    const int dim = tmpl.dim();
    double reference = 0.0;
    if (dim == 2) {
        const AdmissibilityReport report = check_admissible(tmpl);
        if (!report.is_optimal_partition || !report.is_compact)
            throw Error(ErrorKind::not_admissible, "not an admissible limit configuration");
        reference = tmpl.size() * e2d(Mass(tmpl.particles()[0].mass));
    } else {
        for (const Particle& p : tmpl.particles())
            reference += e3d_ball(Mass(p.mass)).total;
    }
    std::vector<ExpansionRow> rows;
    for (double eta : etas) {
        const EnergyBreakdown e = sharp_energy(BallConfiguration(tmpl, eta), options);
        const double quotient = dim == 3 ? (e.total - reference) / eta : std::abs(std::log(eta)) * (e.total - reference);
        rows.push_back({eta, e.total, quotient, e});
    }
    return rows;
}

double richardson_linear(std::span<const ExpansionRow> rows) {
    if (rows.size() < 2)
        throw Error(ErrorKind::invalid_argument, "Richardson extrapolation needs at least two etas");
    std::vector<ExpansionRow> sorted(rows.begin(), rows.end());
    std::sort(sorted.begin(), sorted.end(), [](const ExpansionRow& a, const ExpansionRow& b) { return a.eta < b.eta; });
    const ExpansionRow& small = sorted[0];
    const ExpansionRow& next = sorted[1];
    if (small.eta == next.eta)
        throw Error(ErrorKind::invalid_argument, "Richardson extrapolation needs distinct etas");
    return (next.eta * small.quotient - small.eta * next.quotient) / (next.eta - small.eta);
}

OriginalScale rescale_to_original(const EnergyBreakdown& breakdown, int dim) {
    const double eta = breakdown.eta;
    if (!(eta > 0.0 && eta < 1.0))
        throw Error(ErrorKind::invalid_argument, "breakdown carries no valid eta");
    const double factor = dim == 3 ? eta * eta : eta;
    return {factor * breakdown.total, gamma_for(dim, eta)};
}

DiameterEstimate diameter_estimate(const BallConfiguration& config) {
    if (config.dim() != 2)
        throw Error(ErrorKind::invalid_argument, "the diameter estimate is a 2D statement");
    DiameterEstimate d{0.0, 0.0, false};
    for (std::size_t i = 0; i < config.size(); ++i)
        d.diameter_sum += 2.0 * config.radius(i);
    const double eta = config.eta();
    for (std::size_t i = 0; i < config.size(); ++i)
        d.perimeter_bound += eta * (eta * 2.0 * pi * config.radius(i) / (eta * eta));
    d.holds = d.perimeter_bound >= d.diameter_sum;
    return d;
}

} // namespace oklim
