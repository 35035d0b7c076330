#include "minkabs/config.hpp"

#include "minkabs/error.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

namespace minkabs {

void ModelConfig::validate() const
{
    if (lattice < 8 || (lattice & (lattice - 1)) != 0) {
        throw ConfigError("N must be a power of two >= 8, got " + std::to_string(lattice));
    }
    if (pad < 1) throw ConfigError("pad must be >= 1");
    if (interpolation_points < 2 || interpolation_points % 2 != 0) {
        throw ConfigError("interpolation_points must be even and >= 2");
    }
    if (spacing.dim() != 1 || !(spacing.value() > 0.0)) throw ConfigError("a must be a positive time span");
    if (mass.dim() != -1 || !(mass.value() > 0.0)) throw ConfigError("m must be a positive inverse time");
    if (cutoff() < 8.0 * mass.value()) throw ConfigError("momentum cutoff pi/a must be >= 8 m");
    if (!same_observer(t0.observer(), u0)) throw ConfigError("t0 must be an instant of u0");
}

double ModelConfig::cutoff() const { return std::numbers::pi / spacing.value(); }

double ModelConfig::chi_max() const
{
    const double half = 0.5 * cutoff();
    const double m = mass.value();
    const double w = std::sqrt(half * half + m * m);
    return std::asinh(0.25 * std::numbers::pi / (spacing.value() * w));
}

double ModelConfig::box_side() const { return lattice * spacing.value(); }

RunSettings parse_settings(const std::string& text, RunSettings s)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a flat JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "N") s.model.lattice = value.get<int>();
            else if (key == "a") s.model.spacing = seconds(value.get<double>());
            else if (key == "m") s.model.mass = per_second(value.get<double>());
            else if (key == "pad") s.model.pad = value.get<int>();
            else if (key == "interpolation_points") s.model.interpolation_points = value.get<int>();
            else if (key == "seed") s.seed = value.get<std::uint64_t>();
            else if (key == "chi") s.rapidity = value.get<double>();
            else if (key == "trials") s.trials = value.get<int>();
            else throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::type_error& e) {
        throw ConfigError(std::string("config value has wrong type: ") + e.what());
    }
    if (s.trials < 1) throw ConfigError("trials must be >= 1");
    s.model.validate();
    return s;
}

RunSettings load_settings(const std::string& path, RunSettings defaults)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_settings(ss.str(), std::move(defaults));
}

unsigned worker_threads()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("MINKABS_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return n;
}

} // namespace minkabs
