#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <span>

namespace oklim {

inline constexpr double pi = std::numbers::pi;

/// Small fixed vector; 2D quantities leave the third component at zero.
using Vec = std::array<double, 3>;

/// Reduce x to [0, 1).
inline double wrap_unit(double x) {
    double r = x - std::floor(x);
    return r >= 1.0 ? 0.0 : r;
}

/// Reduce x to the centered cell [-1/2, 1/2).
inline double wrap_centered(double x) {
    double r = x - std::floor(x + 0.5);
    return r >= 0.5 ? r - 1.0 : r;
}

inline Vec min_image(int dim, const Vec& d) {
    Vec r{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a)
        r[a] = wrap_centered(d[a]);
    return r;
}

inline double norm(int dim, const Vec& v) {
    double s = 0.0;
    for (int a = 0; a < dim; ++a)
        s += v[a] * v[a];
    return std::sqrt(s);
}


/// A point on the unit flat torus T^d, d in {2,3}; coordinates are kept in [0,1).
class TorusPoint {
  public:
    TorusPoint() = default;
    TorusPoint(int dim, std::span<const double> coords);
    TorusPoint(int dim, std::initializer_list<double> coords)
        : TorusPoint(dim, std::span<const double>(coords.begin(), coords.size())) {}

    int dim() const noexcept { return dim_; }
    double operator[](int a) const { return x_[a]; }
    const Vec& coords() const noexcept { return x_; }

    TorusPoint translated(const Vec& shift) const;

  private:
    int dim_ = 2;
    Vec x_{0.0, 0.0, 0.0};
};

/// Min-image representative of a - b in [-1/2,1/2)^d.
Vec displacement(const TorusPoint& a, const TorusPoint& b);
/// d(a,b) = min over integer shifts k of |a - b - k|; at most sqrt(d)/2.
double torus_distance(const TorusPoint& a, const TorusPoint& b);

} // namespace oklim
