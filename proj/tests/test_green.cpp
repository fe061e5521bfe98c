#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "oklim/error.hpp"
#include "oklim/green.hpp"
#include "oklim/quadrature.hpp"
#include "oracles.hpp"

using namespace oklim;

namespace {

// Madelung constant of the simple cubic lattice; g3(0) = -M/(4 pi).
constexpr double madelung_sc = 2.8372974794806;

Vec permuted(const Vec& x) { return {x[2], x[0], x[1]}; }

} // namespace

TEST_SUITE("green") {
    TEST_CASE("Ewald sum agrees with the direct Fourier lattice sum") {
        gen::Rng rng(21);
        for (int dim : {2, 3})
            for (int i = 0; i < 12; ++i) {
                const Vec x = rng.point_away_from_origin(dim, 0.05);
                CHECK(std::abs(green_eval(dim, x) - oracle::green_direct_fourier(dim, x)) <= 1e-8);
            }
    }

    TEST_CASE("value at the cube center") {
        const double v = green_eval(3, {0.5, 0.5, 0.5});
        CHECK(v < 0.0);
        CHECK(v == doctest::Approx(oracle::green_direct_fourier(3, {0.5, 0.5, 0.5})).epsilon(1e-10));
        const GreenFunction other(3, EwaldParameters::for_alpha(2 * std::sqrt(pi)));
        CHECK(std::abs(other({0.5, 0.5, 0.5}) - v) < 1e-10);
    }

    TEST_CASE("splitting parameter does not change the value") {
        gen::Rng rng(22);
        for (int dim : {2, 3}) {
            const GreenFunction a(dim, EwaldParameters::for_alpha(1.2));
            const GreenFunction b(dim, EwaldParameters::for_alpha(3.5));
            for (int i = 0; i < 40; ++i) {
                const Vec x = rng.point_away_from_origin(dim, 1e-3);
                CHECK(std::abs(a(x) - b(x)) <= 1e-10);
            }
        }
    }

    TEST_CASE("symmetries: evenness, permutations, sign flips, periodicity") {
        gen::Rng rng(23);
        for (int i = 0; i < 50; ++i) {
            const Vec x = rng.point_away_from_origin(3, 0.01);
            const double v = green_eval(3, x);
            CHECK(green_eval(3, {-x[0], -x[1], -x[2]}) == doctest::Approx(v).epsilon(1e-12));
            CHECK(green_eval(3, permuted(x)) == doctest::Approx(v).epsilon(1e-12));
            CHECK(green_eval(3, {-x[0], x[1], x[2]}) == doctest::Approx(v).epsilon(1e-12));
            CHECK(green_eval(3, {x[0] + 2, x[1] - 1, x[2] + 5}) == doctest::Approx(v).epsilon(1e-12));
            const Vec y = rng.point_away_from_origin(2, 0.01);
            const double w = green_eval(2, y);
            CHECK(green_eval(2, {-y[0], -y[1], 0}) == doctest::Approx(w).epsilon(1e-12));
            CHECK(green_eval(2, {y[1], y[0], 0}) == doctest::Approx(w).epsilon(1e-12));
        }
    }

    TEST_CASE("singular point is rejected") {
        CHECK_THROWS_AS(green_eval(2, {0.0, 0.0, 0.0}), Error);
        try {
            green_eval(3, {1.0, 0.0, -2.0});
            FAIL("expected a throw");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::singular_point);
        }
    }

    TEST_CASE("regular constants") {
        CHECK(regular_part_at_zero(3) == doctest::Approx(-madelung_sc / (4 * pi)).epsilon(1e-11));
        for (int dim : {2, 3}) {
            const double g0 = regular_part_at_zero(dim);
            for (int cut : {6, 8, 10}) {
                EwaldParameters p;
                p.real_cutoff = cut;
                CHECK(std::abs(regular_part_at_zero(dim, p) - g0) < 1e-8);
            }
            CHECK(std::abs(regular_part_at_zero(dim, EwaldParameters::for_alpha(2 * std::sqrt(pi))) - g0) < 1e-10);
        }
    }

    TEST_CASE("2D near-origin behavior and continuity of g") {
        const double g0 = regular_part_at_zero(2);
        const double r = 1e-4;
        CHECK(std::abs(green_eval(2, {r, 0, 0}) - (-std::log(r) / (2 * pi) + g0)) < 1e-6);
        double last = 1.0;
        for (double s : {1e-2, 1e-3, 1e-4}) {
            const double d = std::abs(regular_part(2, {s / std::sqrt(2.0), s / std::sqrt(2.0), 0}) - g0);
            CHECK(d < last);
            last = d;
        }
    }

    TEST_CASE("3D regular part is G minus the Coulomb term") {
        const Vec x{0.25, 0.0, 0.0};
        CHECK(regular_part(3, x) == doctest::Approx(green_eval(3, x) - 1.0 / (4 * pi * 0.25)).epsilon(1e-13));
        const Vec y{0.1, 0.2, 0.05};
        CHECK(regular_part(3, y) == doctest::Approx(regular_part(3, permuted(y))).epsilon(1e-12));
    }

    TEST_CASE("gradient: finite differences, antisymmetry, critical point") {
        gen::Rng rng(24);
        for (int dim : {2, 3})
            for (int i = 0; i < 10; ++i) {
                const Vec x = rng.point_away_from_origin(dim, 0.05);
                const Vec g = green_grad(dim, x);
                const Vec gm = green_grad(dim, {-x[0], -x[1], -x[2]});
                for (int a = 0; a < dim; ++a) {
                    Vec p = x, m = x;
                    p[a] += 1e-6;
                    m[a] -= 1e-6;
                    const double fd = (green_eval(dim, p) - green_eval(dim, m)) / 2e-6;
                    CHECK(g[a] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
                    CHECK(std::abs(g[a] + gm[a]) < 1e-12);
                }
            }
        const Vec c = green_grad(2, {0.5, 0.5, 0.0});
        CHECK(std::abs(c[0]) < 1e-13);
        CHECK(std::abs(c[1]) < 1e-13);
    }

    TEST_CASE("Laplacian equals one away from the lattice") {
        const Vec x{0.3, 0.17, 0.41};
        for (int dim : {2, 3}) {
            const double h = 1e-3;
            double lap = 0.0;
            for (int a = 0; a < dim; ++a) {
                Vec p = x, m = x;
                p[a] += h;
                m[a] -= h;
                lap += (green_eval(dim, p) - 2 * green_eval(dim, x) + green_eval(dim, m)) / (h * h);
            }
            CHECK(lap == doctest::Approx(1.0).epsilon(1e-5));
        }
    }

    TEST_CASE("tail bounds honour the accuracy contract") {
        const EwaldParameters p;
        CHECK_NOTHROW(p.validate());
        for (int dim : {2, 3})
            CHECK(p.tail_bound(dim) < 1e-12);
        EwaldParameters bad;
        bad.fourier_cutoff = 0;
        CHECK_THROWS_AS(bad.validate(), Error);
        CHECK(ewald_real_tail(3, 2.0, 8) < ewald_real_tail(3, 2.0, 4));
        CHECK(ewald_fourier_tail(2, 2.0, 8) < ewald_fourier_tail(2, 2.0, 4));
    }
}

// The grid average plus the analytic integral over the excluded central cell
// approximates the (zero) mean of G.
TEST_CASE("green: zero mean on a centered grid" * doctest::test_suite("green")) {
    const int N = 64;
    const double h = 1.0 / N;
    const GaussRule rule = gauss_legendre(24, -1.0, 1.0);
    for (int dim : {2, 3}) {
        const GreenFunction& G = green_function(dim);
        double sum = 0.0;
        const int nz = dim == 3 ? N : 1;
        // Use the x -> -x and permutation symmetry: only a fundamental wedge would be
        // cheaper, but the plain loop keeps the check independent of those properties.
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                for (int k = 0; k < nz; ++k) {
                    if (i == 0 && j == 0 && k == 0)
                        continue;
                    sum += G({i * h, j * h, k * h});
                }
        double cell = 0.0;
        if (dim == 3) {
            // integral of 1/|x| over [-h/2,h/2]^3: six pyramids, each (h^2/8) * int_{[-1,1]^2} (1+u^2+v^2)^{-1/2}
            double I = 0.0;
            for (std::size_t a = 0; a < rule.nodes.size(); ++a)
                for (std::size_t b = 0; b < rule.nodes.size(); ++b)
                    I += rule.weights[a] * rule.weights[b] /
                         std::sqrt(1 + rule.nodes[a] * rule.nodes[a] + rule.nodes[b] * rule.nodes[b]);
            cell = 6 * h * h * I / 8 / (4 * pi) + regular_part_at_zero(3) * h * h * h;
        } else {
            // integral of log|x| over [-h/2,h/2]^2 = h^2 (log h + 4 [(1/4) log(1/2) - 1/8 + J/8])
            double J = 0.0;
            for (std::size_t a = 0; a < rule.nodes.size(); ++a)
                J += rule.weights[a] * 0.5 * std::log1p(rule.nodes[a] * rule.nodes[a]);
            const double log_int = h * h * (std::log(h) + 4 * (0.25 * std::log(0.5) - 0.125 + J / 8));
            cell = -log_int / (2 * pi) + regular_part_at_zero(2) * h * h;
        }
        const double mean = sum * std::pow(h, dim) + cell;
        CAPTURE(dim);
        CHECK(std::abs(mean) <= 1e-4);
    }
}
