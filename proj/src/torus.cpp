#include "oklim/torus.hpp"

#include <string>

#include "oklim/error.hpp"

namespace oklim {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::singular_point: return "singular point";
    case ErrorKind::coincident_points: return "coincident points";
    case ErrorKind::unequal_masses_2d: return "unequal masses in 2D";
    case ErrorKind::overlapping_balls: return "overlapping balls";
    case ErrorKind::diameter_too_large: return "diameter too large";
    case ErrorKind::cutoff_too_small: return "cutoff too small";
    case ErrorKind::no_root: return "no root";
    case ErrorKind::incommensurate_count: return "incommensurate count";
    case ErrorKind::not_admissible: return "not an admissible limit configuration";
    }
    return "unknown";
}

TorusPoint::TorusPoint(int dim, std::span<const double> coords) : dim_(dim) {
    if (dim != 2 && dim != 3)
        throw Error(ErrorKind::invalid_argument, "dimension must be 2 or 3, got " + std::to_string(dim));
    if (static_cast<int>(coords.size()) != dim)
        throw Error(ErrorKind::invalid_argument, "expected " + std::to_string(dim) + " coordinates, got " +
                                                     std::to_string(coords.size()));
    for (int a = 0; a < dim; ++a) {
        if (!std::isfinite(coords[a]))
            throw Error(ErrorKind::invalid_argument, "non-finite coordinate");
        x_[a] = wrap_unit(coords[a]);
    }
}

TorusPoint TorusPoint::translated(const Vec& shift) const {
    TorusPoint p = *this;
    for (int a = 0; a < dim_; ++a)
        p.x_[a] = wrap_unit(x_[a] + shift[a]);
    return p;
}

Vec displacement(const TorusPoint& a, const TorusPoint& b) {
    Vec d{0.0, 0.0, 0.0};
    for (int k = 0; k < a.dim(); ++k)
        d[k] = a[k] - b[k];
    return min_image(a.dim(), d);
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) { return norm(a.dim(), displacement(a, b)); }

} // namespace oklim
