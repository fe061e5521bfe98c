#pragma once

#include <stdexcept>
#include <string>

namespace oklim {

enum class ErrorKind {
    invalid_argument,
    singular_point,
    coincident_points,
    unequal_masses_2d,
    overlapping_balls,
    diameter_too_large,
    cutoff_too_small,
    no_root,
    incommensurate_count,
    not_admissible,
};

const char* to_string(ErrorKind kind) noexcept;

/// Library error carrying a machine-readable kind. The CLI maps kinds to exit codes.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace oklim
