// oklim: command-line front end for the limit-energy library.
//
// Exit codes: 0 success, 1 usage/schema, 2 singular point, 3 physical validation,
// 4 admissibility.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oklim/config_io.hpp"
#include "oklim/error.hpp"
#include "oklim/green.hpp"
#include "oklim/limits.hpp"
#include "oklim/local.hpp"
#include "oklim/optimize.hpp"
#include "oklim/sharp.hpp"
#include "oklim/version.hpp"

using json = nlohmann::ordered_json;
using namespace oklim;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::singular_point: return 2;
    case ErrorKind::coincident_points:
    case ErrorKind::overlapping_balls:
    case ErrorKind::diameter_too_large:
    case ErrorKind::cutoff_too_small: return 3;
    case ErrorKind::unequal_masses_2d:
    case ErrorKind::not_admissible: return 4;
    default: return 1;
    }
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError(std::string("malformed ") + what + ": '" + text + "'");
        }
        if (used != item.size() || !std::isfinite(v))
            throw UsageError(std::string("malformed ") + what + ": '" + text + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw UsageError(std::string(what) + " must not be empty");
    return out;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json ewald_json(const EwaldParameters& p) {
    return {{"alpha", p.alpha}, {"real_cutoff", p.real_cutoff}, {"fourier_cutoff", p.fourier_cutoff}};
}

// Echo of every option of a subcommand, defaults included.
json echo_params(const CLI::App& sub) {
    json params = json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help")
            continue;
        const std::string& name = opt->get_lnames()[0];
        if (opt->get_expected_max() == 0) {
            params[name] = opt->count() > 0;
            continue;
        }
        const auto& results = opt->results();
        if (!results.empty()) {
            std::string joined;
            for (std::size_t i = 0; i < results.size(); ++i)
                joined += (i ? "," : "") + results[i];
            params[name] = joined;
        } else if (!opt->get_default_str().empty()) {
            params[name] = opt->get_default_str();
        } else {
            params[name] = nullptr;
        }
    }
    return params;
}

class Manifest {
  public:
    Manifest(const CLI::App& sub, const EwaldParameters& ewald)
        : start_(std::chrono::steady_clock::now()), command_(sub.get_name()), params_(echo_params(sub)),
          ewald_(ewald) {}

    // wall_time is the only field that varies between identical reruns.
    json finish() const {
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return {{"command", command_},
                {"params", params_},
                {"version", version},
                {"ewald", ewald_json(ewald_)},
                {"wall_time", wall}};
    }

  private:
    std::chrono::steady_clock::time_point start_;
    std::string command_;
    json params_;
    EwaldParameters ewald_;
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw UsageError("cannot write " + out_path);
    out << text;
}

std::string breakdown_header() { return "kind,eta,gamma,perimeter_term,self_h1_term,regular_self_term,cross_term,total,e0"; }

std::string breakdown_row(const char* kind, const EnergyBreakdown& b, double e0_value) {
    return std::string(kind) + "," + fmt(b.eta) + "," + fmt(b.gamma) + "," + fmt(b.perimeter_term) + "," +
           fmt(b.self_h1_term) + "," + fmt(b.regular_self_term) + "," + fmt(b.cross_term) + "," + fmt(b.total) +
           "," + fmt(e0_value);
}

json breakdown_json(const EnergyBreakdown& b) {
    return {{"perimeter_term", b.perimeter_term}, {"self_h1_term", b.self_h1_term},
            {"regular_self_term", b.regular_self_term}, {"cross_term", b.cross_term},
            {"total", b.total}};
}

PairConvention parse_convention(const std::string& s) {
    if (s == "ordered")
        return PairConvention::ordered;
    if (s == "halved")
        return PairConvention::halved;
    throw UsageError("pair convention must be 'ordered' or 'halved'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Limit energies of periodic point and ball configurations on the flat torus"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version);

    // green
    int g_dim = 3;
    std::string g_x;
    bool g_grad = false, g_regular = false;
    CLI::App* green_cmd = app.add_subcommand("green", "Evaluate the torus Green's function");
    green_cmd->add_option("--dim", g_dim, "Dimension (2 or 3)")->required()->check(CLI::IsMember({2, 3}));
    green_cmd->add_option("--x", g_x, "Comma-separated point")->required();
    green_cmd->add_flag("--grad", g_grad, "Also print the gradient");
    green_cmd->add_flag("--regular", g_regular, "Also print the regular part g = G - singular part");

    // local
    int l_dim = 2;
    double l_mass = 1.0;
    bool l_partition = false, l_threshold = false, l_splitting = false, l_concavity = false;
    CLI::App* local_cmd = app.add_subcommand("local", "Single-particle (local) problem");
    local_cmd->add_option("--dim", l_dim, "Dimension (2 or 3)")->required()->check(CLI::IsMember({2, 3}));
    local_cmd->add_option("--mass", l_mass, "Mass")->required()->check(CLI::PositiveNumber);
    local_cmd->add_flag("--partition", l_partition, "Optimal equal partition (2D)");
    local_cmd->add_flag("--threshold", l_threshold, "Single-particle and optimal part masses (2D)");
    local_cmd->add_flag("--splitting", l_splitting, "Splitting threshold of the ball ansatz (3D)");
    local_cmd->add_flag("--concavity", l_concavity, "Concavity coefficient (3D)");

    // energy
    std::string e_config, e_convention = "ordered", e_out;
    std::optional<double> e_eta;
    CLI::App* energy_cmd = app.add_subcommand("energy", "Evaluate a configuration file");
    energy_cmd->add_option("--config", e_config, "Configuration JSON")->required();
    energy_cmd->add_option("--eta", e_eta, "Scale; evaluates the sharp-interface energy of the balls");
    energy_cmd->add_option("--pair-convention", e_convention, "ordered or halved")->capture_default_str();
    energy_cmd->add_option("--out", e_out, "Output CSV (default stdout)");

    // expand
    std::string x_config, x_etas, x_out;
    bool x_richardson = false;
    CLI::App* expand_cmd = app.add_subcommand("expand", "Second-order quotients over a sweep of scales");
    expand_cmd->add_option("--config", x_config, "Configuration JSON")->required();
    expand_cmd->add_option("--etas", x_etas, "Comma-separated scales")->required();
    expand_cmd->add_flag("--richardson", x_richardson, "Extrapolate the 3D quotient to eta = 0");
    expand_cmd->add_option("--out", x_out, "Output CSV (default stdout)");

    // place
    int p_dim = 2, p_n = 2, p_restarts = 8;
    double p_mass = 1.0, p_tol = 1e-10;
    std::uint64_t p_seed = 0;
    bool p_lattice = false;
    std::string p_out, p_start;
    CLI::App* place_cmd = app.add_subcommand("place", "Search for low-energy point configurations");
    place_cmd->add_option("--dim", p_dim, "Dimension (2 or 3)")->required()->check(CLI::IsMember({2, 3}));
    place_cmd->add_option("--n", p_n, "Number of particles")->required()->check(CLI::Range(2, 10000));
    place_cmd->add_option("--mass", p_mass, "Mass of each particle")->required()->check(CLI::PositiveNumber);
    place_cmd->add_option("--restarts", p_restarts, "Independent descents")->capture_default_str()->check(
        CLI::Range(1, 100000));
    place_cmd->add_option("--seed", p_seed, "Random seed")->capture_default_str();
    place_cmd->add_option("--tol", p_tol, "Gradient-norm tolerance")->capture_default_str()->check(
        CLI::Range(1e-12, 1e-4));
    place_cmd->add_flag("--lattice-compare", p_lattice, "Append lattice candidate energies");
    place_cmd->add_option("--config", p_start, "Starting configuration JSON (used as the first restart)");
    place_cmd->add_option("--out", p_out, "Output JSON (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const EwaldParameters ewald = EwaldParameters::from_environment();

        if (green_cmd->parsed()) {
            const std::vector<double> x = parse_list(g_x, "--x");
            if (static_cast<int>(x.size()) != g_dim)
                throw UsageError("--x needs " + std::to_string(g_dim) + " coordinates");
            Vec v{0.0, 0.0, 0.0};
            for (int a = 0; a < g_dim; ++a)
                v[a] = x[a];
            const double G = green_eval(g_dim, v, ewald);
            if (!g_grad && !g_regular) {
                std::cout << json(G).dump() << "\n";
                return 0;
            }
            json out{{"G", G}};
            if (g_grad) {
                const Vec grad = green_grad(g_dim, v, ewald);
                out["grad"] = std::vector<double>(grad.begin(), grad.begin() + g_dim);
            }
            if (g_regular)
                out["g"] = regular_part(g_dim, v, ewald);
            std::cout << out.dump() << "\n";
            return 0;
        }

        if (local_cmd->parsed()) {
            const Mass m(l_mass);
            json out{{"dim", l_dim}, {"mass", l_mass}};
            if (l_dim == 2) {
                if (l_splitting || l_concavity)
                    throw UsageError("--splitting and --concavity apply to dim 3");
                out["e2d"] = e2d(m);
                out["f0"] = f0(m);
                const PartitionResult p = envelope_2d(m);
                out["envelope"] = p.envelope_value;
                if (l_partition)
                    out["partition"] = {{"n", p.n}, {"per_mass", p.per_mass}, {"envelope_value", p.envelope_value}};
                if (l_threshold)
                    out["threshold"] = {{"single_particle", single_particle_threshold_2d},
                                        {"optimal_part_mass", optimal_part_mass_2d}};
            } else {
                if (l_partition || l_threshold)
                    throw UsageError("--partition and --threshold apply to dim 2");
                out["radius"] = ball_radius_3d(m);
                out["e3d_ball"] = breakdown_json(e3d_ball(m));
                if (l_concavity)
                    out["concavity_coefficient"] = concavity_coefficient(m);
                if (l_splitting)
                    out["splitting_threshold"] = splitting_threshold_3d();
            }
            std::cout << out.dump() << "\n";
            return 0;
        }

        if (energy_cmd->parsed()) {
            const Manifest manifest(*energy_cmd, ewald);
            const PairConvention convention = parse_convention(e_convention);
            const ConfigDocument doc = load_config(e_config);
            const PointConfiguration points = doc.points();
            const std::optional<double> eta = e_eta ? e_eta : doc.eta;
            const double e0_value = e0(points);
            std::string row;
            if (eta) {
                if (convention != PairConvention::ordered)
                    throw UsageError("--pair-convention applies to the limit energy only");
                row = breakdown_row("sharp", sharp_energy(BallConfiguration(points, *eta)), e0_value);
            } else {
                row = breakdown_row("limit", f0_energy(points, ewald, convention), e0_value);
            }
            emit("# manifest " + manifest.finish().dump() + "\n" + breakdown_header() + "\n" + row + "\n", e_out);
            return 0;
        }

        if (expand_cmd->parsed()) {
            const Manifest manifest(*expand_cmd, ewald);
            const std::vector<double> etas = parse_list(x_etas, "--etas");
            const ConfigDocument doc = load_config(x_config);
            const PointConfiguration points = doc.points();
            const std::vector<ExpansionRow> rows = second_order_quotient(points, etas);
            const double limit = f0_energy(points, ewald).total;
            auto gap = [&](double v) { return (v - limit) / std::abs(limit); };
            std::string csv = "kind,eta,E_eta,F_eta,rel_gap\n";
            for (const ExpansionRow& r : rows)
                csv += "sample," + fmt(r.eta) + "," + fmt(r.energy) + "," + fmt(r.quotient) + "," + fmt(gap(r.quotient)) + "\n";
            if (x_richardson) {
                if (points.dim() == 3) {
                    const double f = richardson_linear(rows);
                    csv += "richardson,0,," + fmt(f) + "," + fmt(gap(f)) + "\n";
                } else {
                    std::cerr << "note: no extrapolation in 2D (logarithmic corrections)\n";
                }
            }
            csv += "limit,0,," + fmt(limit) + ",0\n";
            emit("# manifest " + manifest.finish().dump() + "\n" + csv, x_out);
            return 0;
        }

        if (place_cmd->parsed()) {
            const Manifest manifest(*place_cmd, ewald);
            PlaceOptions options;
            options.restarts = p_restarts;
            options.seed = p_seed;
            options.tol = p_tol;
            options.ewald = ewald;
            if (!p_start.empty()) {
                const ConfigDocument doc = load_config(p_start);
                if (doc.dim != p_dim || static_cast<int>(doc.particles.size()) != p_n)
                    throw UsageError("starting configuration does not match --dim/--n");
                std::vector<Particle> particles = doc.particles;
                for (Particle& p : particles)
                    p.mass = p_mass;
                options.initial = PointConfiguration(p_dim, std::move(particles));
            }
            const std::vector<double> masses(p_n, p_mass);
            const OptimizationResult r = place(p_dim, masses, options);
            json result{{"converged", r.converged},
                        {"energy", r.energy},
                        {"grad_norm", r.grad_norm},
                        {"iterations", r.iterations},
                        {"restarts_used", r.restarts_used},
                        {"best_restart", r.best_restart},
                        {"pairwise_distances", r.pairwise_distances},
                        {"config", config_to_json(r.config)}};
            json out{{"result", result}};
            if (p_lattice) {
                json rows = json::array();
                for (Lattice l : {Lattice::square, Lattice::triangular_sheared}) {
                    try {
                        rows.push_back({{"lattice", to_string(l)},
                                        {"energy", lattice_candidate_energy(p_dim, p_n, p_mass, l, ewald)}});
                    } catch (const Error& e) {
                        if (e.kind() != ErrorKind::incommensurate_count)
                            throw;
                        rows.push_back({{"lattice", to_string(l)}, {"skipped", e.what()}});
                    }
                }
                out["lattice"] = rows;
            }
            out["manifest"] = manifest.finish();
            emit(out.dump(2) + "\n", p_out);
            if (!r.converged)
                std::cerr << "warning: no restart reached the gradient tolerance\n";
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const SchemaError& e) {
        std::cerr << "schema error at " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
