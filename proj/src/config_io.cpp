#include "oklim/config_io.hpp"

#include <cmath>
#include <fstream>

namespace oklim {

namespace {

double number_at(const nlohmann::json& v, const std::string& pointer) {
    if (!v.is_number())
        throw SchemaError(pointer, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
        throw SchemaError(pointer, "expected a finite number");
    return x;
}

} // namespace

ConfigDocument parse_config(const nlohmann::json& doc) {
    if (!doc.is_object())
        throw SchemaError("", "expected an object");
    ConfigDocument out;
    if (!doc.contains("dim"))
        throw SchemaError("/dim", "missing");
    if (!doc["dim"].is_number_integer() || (doc["dim"].get<int>() != 2 && doc["dim"].get<int>() != 3))
        throw SchemaError("/dim", "expected 2 or 3");
    out.dim = doc["dim"].get<int>();

    if (!doc.contains("particles"))
        throw SchemaError("/particles", "missing");
    const auto& ps = doc["particles"];
    if (!ps.is_array() || ps.empty())
        throw SchemaError("/particles", "expected a non-empty array");
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string base = "/particles/" + std::to_string(i);
        const auto& p = ps[i];
        if (!p.is_object())
            throw SchemaError(base, "expected an object");
        if (!p.contains("mass"))
            throw SchemaError(base + "/mass", "missing");
        const double mass = number_at(p["mass"], base + "/mass");
        if (!p.contains("position"))
            throw SchemaError(base + "/position", "missing");
        const auto& pos = p["position"];
        if (!pos.is_array() || pos.size() != static_cast<std::size_t>(out.dim))
            throw SchemaError(base + "/position", "expected " + std::to_string(out.dim) + " coordinates");
        double c[3] = {0.0, 0.0, 0.0};
        for (int a = 0; a < out.dim; ++a) {
            const std::string ptr = base + "/position/" + std::to_string(a);
            c[a] = number_at(pos[a], ptr);
            if (c[a] < 0.0 || c[a] >= 1.0)
                throw SchemaError(ptr, "coordinate outside [0,1)");
        }
        out.particles.push_back({mass, TorusPoint(out.dim, std::span<const double>(c, out.dim))});
    }
    if (doc.contains("eta") && !doc["eta"].is_null())
        out.eta = number_at(doc["eta"], "/eta");
    for (const auto& [key, value] : doc.items())
        if (key != "dim" && key != "particles" && key != "eta")
            throw SchemaError("/" + key, "unknown field");
    return out;
}

ConfigDocument load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

nlohmann::json config_to_json(const PointConfiguration& config, std::optional<double> eta) {
    nlohmann::json doc;
    doc["dim"] = config.dim();
    doc["particles"] = nlohmann::json::array();
    for (const Particle& p : config.particles()) {
        nlohmann::json pos = nlohmann::json::array();
        for (int a = 0; a < config.dim(); ++a)
            pos.push_back(p.position[a]);
        doc["particles"].push_back({{"mass", p.mass}, {"position", pos}});
    }
    if (eta)
        doc["eta"] = *eta;
    return doc;
}

} // namespace oklim
