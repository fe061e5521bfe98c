#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "oklim/limits.hpp"

// Configuration files:
//   {"dim": 2|3, "particles": [{"mass": m, "position": [x, y(, z)]}, ...], "eta": optional}
// with positions in [0,1). One schema serves point and ball configurations.

namespace oklim {

/// Schema violation; pointer() is the JSON pointer of the offending value.
class SchemaError : public std::runtime_error {
  public:
    SchemaError(std::string pointer, const std::string& what)
        : std::runtime_error(pointer + ": " + what), pointer_(std::move(pointer)) {}
    const std::string& pointer() const noexcept { return pointer_; }

  private:
    std::string pointer_;
};

struct ConfigDocument {
    int dim = 2;
    std::vector<Particle> particles;
    std::optional<double> eta;

    /// Physical validation happens here (coincident points, non-positive masses).
    PointConfiguration points() const { return PointConfiguration(dim, particles); }
};

ConfigDocument parse_config(const nlohmann::json& doc);
ConfigDocument load_config(const std::filesystem::path& path);

nlohmann::json config_to_json(const PointConfiguration& config, std::optional<double> eta = std::nullopt);

} // namespace oklim
