#include "oklim/green.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include "oklim/error.hpp"
#include "oklim/special.hpp"

namespace oklim {

namespace {

constexpr double real_reach = 6.5; // alpha * r beyond which psi < 1e-19

double real_tail_impl(int dim, double alpha, int cutoff) {
    const double r0 = cutoff - std::sqrt(double(dim));
    if (r0 <= 0.0)
        return 1.0;
    if (dim == 3)
        return std::erfc(alpha * r0) / (2.0 * alpha * alpha);
    return std::erfc(alpha * r0) * std::sqrt(pi) / (4.0 * alpha * alpha * alpha * r0);
}

double fourier_tail_impl(int dim, double alpha, int cutoff) {
    const double k0 = cutoff - std::sqrt(double(dim));
    if (k0 <= 0.0)
        return 1.0;
    const double gauss = alpha * std::sqrt(pi) / (2.0 * pi) * std::erfc(pi * k0 / alpha);
    return dim == 3 ? gauss / pi : gauss / (2.0 * pi * k0);
}

} // namespace

EwaldParameters EwaldParameters::for_alpha(double alpha) {
    EwaldParameters p;
    p.alpha = alpha;
    p.real_cutoff = 1;
    p.fourier_cutoff = 1;
    p.validate();
    while (std::max(real_tail_impl(2, alpha, p.real_cutoff), real_tail_impl(3, alpha, p.real_cutoff)) > 5e-14)
        ++p.real_cutoff;
    while (std::max(fourier_tail_impl(2, alpha, p.fourier_cutoff), fourier_tail_impl(3, alpha, p.fourier_cutoff)) > 5e-14)
        ++p.fourier_cutoff;
    return p;
}

EwaldParameters EwaldParameters::from_environment() {
    if (const char* env = std::getenv("OKLIM_EWALD_ALPHA"); env && *env) {
        char* end = nullptr;
        const double alpha = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(alpha > 0.0) || !std::isfinite(alpha))
            throw Error(ErrorKind::invalid_argument, std::string("OKLIM_EWALD_ALPHA is not a positive number: ") + env);
        return for_alpha(alpha);
    }
    return EwaldParameters{};
}

double EwaldParameters::tail_bound(int dim) const {
    return real_tail_impl(dim, alpha, real_cutoff) + fourier_tail_impl(dim, alpha, fourier_cutoff);
}

void EwaldParameters::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw Error(ErrorKind::invalid_argument, "Ewald alpha must be positive");
    if (real_cutoff < 1 || fourier_cutoff < 1)
        throw Error(ErrorKind::invalid_argument, "Ewald cutoffs must be positive");
}

GreenFunction::GreenFunction(int dim, EwaldParameters params) : dim_(dim), params_(params) {
    if (dim != 2 && dim != 3)
        throw Error(ErrorKind::invalid_argument, "dimension must be 2 or 3");
    params_.validate();
    const double alpha = params_.alpha;
    background_ = 1.0 / (4.0 * alpha * alpha);
    reach_ = real_reach / alpha;

    const int rc = params_.real_cutoff;
    const int zr = dim == 3 ? rc : 0;
    for (int i = -rc; i <= rc; ++i)
        for (int j = -rc; j <= rc; ++j)
            for (int l = -zr; l <= zr; ++l)
                if (i * i + j * j + l * l <= rc * rc)
                    shifts_.push_back({double(i), double(j), double(l)});

    const int fc = params_.fourier_cutoff;
    const int zf = dim == 3 ? fc : 0;
    for (int i = 0; i <= fc; ++i)
        for (int j = -fc; j <= fc; ++j)
            for (int l = -zf; l <= zf; ++l) {
                // half space: first nonzero component positive
                const bool upper = i > 0 || (i == 0 && (j > 0 || (j == 0 && l > 0)));
                const int k2 = i * i + j * j + l * l;
                if (!upper || k2 > fc * fc)
                    continue;
                const double coeff = 2.0 * std::exp(-pi * pi * k2 / (alpha * alpha)) / (4.0 * pi * pi * k2);
                modes_.push_back({{2.0 * pi * i, 2.0 * pi * j, 2.0 * pi * l}, coeff});
            }

    g0_ = regular_part(Vec{0.0, 0.0, 0.0});
}

double GreenFunction::singular_part(double r) const {
    return dim_ == 3 ? 1.0 / (4.0 * pi * r) : -std::log(r) / (2.0 * pi);
}

double GreenFunction::screened(double r) const {
    const double a = params_.alpha;
    if (dim_ == 3)
        return std::erfc(a * r) / (4.0 * pi * r);
    return special::e1(a * a * r * r) / (4.0 * pi);
}

double GreenFunction::screened_derivative(double r) const {
    const double a = params_.alpha;
    const double gauss = std::exp(-a * a * r * r);
    if (dim_ == 3)
        return -(std::erfc(a * r) / (r * r) + 2.0 * a / std::sqrt(pi) * gauss / r) / (4.0 * pi);
    return -gauss / (2.0 * pi * r);
}

double GreenFunction::fourier_sum(const Vec& x) const {
    double s = 0.0;
    for (const Mode& m : modes_)
        s += m.coeff * std::cos(m.wave[0] * x[0] + m.wave[1] * x[1] + m.wave[2] * x[2]);
    return s;
}

Vec GreenFunction::checked_min_image(const Vec& x) const {
    const Vec y = min_image(dim_, x);
    if (norm(dim_, y) < singular_guard)
        throw Error(ErrorKind::singular_point, "Green's function evaluated at a singular point");
    return y;
}

double GreenFunction::operator()(const Vec& x) const {
    const Vec y = checked_min_image(x);
    double real = 0.0;
    for (const Vec& n : shifts_) {
        const double r = norm(dim_, Vec{y[0] + n[0], y[1] + n[1], y[2] + n[2]});
        if (r < reach_)
            real += screened(r);
    }
    return fourier_sum(y) + real - background_;
}

Vec GreenFunction::gradient(const Vec& x) const {
    const Vec y = checked_min_image(x);
    Vec g{0.0, 0.0, 0.0};
    for (const Mode& m : modes_) {
        const double s = m.coeff * std::sin(m.wave[0] * y[0] + m.wave[1] * y[1] + m.wave[2] * y[2]);
        for (int a = 0; a < dim_; ++a)
            g[a] -= s * m.wave[a];
    }
    for (const Vec& n : shifts_) {
        const Vec z{y[0] + n[0], y[1] + n[1], y[2] + n[2]};
        const double r = norm(dim_, z);
        if (r >= reach_)
            continue;
        const double f = screened_derivative(r) / r;
        for (int a = 0; a < dim_; ++a)
            g[a] += f * z[a];
    }
    return g;
}

double GreenFunction::regular_part(const Vec& x) const {
    const Vec y = min_image(dim_, x);
    const double r0 = norm(dim_, y);
    const double a = params_.alpha;
    double real = 0.0;
    for (const Vec& n : shifts_) {
        if (n[0] == 0.0 && n[1] == 0.0 && n[2] == 0.0)
            continue;
        const double r = norm(dim_, Vec{y[0] + n[0], y[1] + n[1], y[2] + n[2]});
        if (r < reach_)
            real += screened(r);
    }
    // psi(r) - s(r) for the central image, written without cancellation
    const double central = dim_ == 3
                               ? -special::erf_over_r(a, r0) / (4.0 * pi)
                               : (special::ein(a * a * r0 * r0) - special::euler_gamma - 2.0 * std::log(a)) / (4.0 * pi);
    return fourier_sum(y) + real + central - background_;
}

double ewald_real_tail(int dim, double alpha, int cutoff) { return real_tail_impl(dim, alpha, cutoff); }
double ewald_fourier_tail(int dim, double alpha, int cutoff) { return fourier_tail_impl(dim, alpha, cutoff); }

const GreenFunction& green_function(int dim, const EwaldParameters& params) {
    using Key = std::tuple<int, double, int, int>;
    static std::mutex mutex;
    static std::map<Key, std::unique_ptr<const GreenFunction>> cache;
    const Key key{dim, params.alpha, params.real_cutoff, params.fourier_cutoff};
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<const GreenFunction>(dim, params)).first;
    return *it->second;
}

double green_eval(int dim, const Vec& x, const EwaldParameters& params) { return green_function(dim, params)(x); }

Vec green_grad(int dim, const Vec& x, const EwaldParameters& params) {
    return green_function(dim, params).gradient(x);
}

double regular_part(int dim, const Vec& x, const EwaldParameters& params) {
    return green_function(dim, params).regular_part(x);
}

double regular_part_at_zero(int dim, const EwaldParameters& params) {
    return green_function(dim, params).regular_part_at_zero();
}

} // namespace oklim
