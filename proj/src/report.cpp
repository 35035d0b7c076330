#include "minkabs/report.hpp"

#include "json.hpp"

#include <cstdio>
#include <sstream>

namespace minkabs {

namespace {

using ordered = nlohmann::ordered_json;

ordered settings_json(const RunSettings& s)
{
    ordered j;
    j["N"] = s.model.lattice;
    j["a"] = s.model.spacing.value();
    j["m"] = s.model.mass.value();
    j["pad"] = s.model.pad;
    j["interpolation_points"] = s.model.interpolation_points;
    j["seed"] = s.seed;
    j["chi"] = s.rapidity;
    j["trials"] = s.trials;
    j["chi_max"] = s.model.chi_max();
    return j;
}

std::string csv_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string to_string(Bound b)
{
    switch (b) {
    case Bound::at_most: return "max";
    case Bound::at_least: return "min";
    case Bound::above: return "above";
    }
    return "?";
}

CheckRecord make_check(std::string name, double residual, double tolerance, Bound bound, int lattice)
{
    bool pass = false;
    switch (bound) {
    case Bound::at_most: pass = residual <= tolerance; break;
    case Bound::at_least: pass = residual >= tolerance; break;
    case Bound::above: pass = residual > tolerance; break;
    }
    return {std::move(name), residual, tolerance, bound, lattice, pass};
}

bool RunReport::all_pass() const
{
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

std::string to_json(const RunReport& r)
{
    ordered j;
    j["suite"] = r.suite;
    j["pass"] = r.all_pass();
    j["config"] = settings_json(r.settings);
    j["checks"] = ordered::array();
    for (const auto& c : r.checks) {
        ordered e;
        e["name"] = c.name;
        e["residual"] = c.residual;
        e["tolerance"] = c.tolerance;
        e["kind"] = to_string(c.bound);
        e["pass"] = c.pass;
        e["N"] = c.lattice;
        j["checks"].push_back(e);
    }
    j["convergence"] = ordered::array();
    for (const auto& t : r.tables) {
        ordered e;
        e["name"] = t.name;
        e["rows"] = ordered::array();
        for (const auto& row : t.rows) e["rows"].push_back({{"N", row.lattice}, {"residual", row.residual}});
        j["convergence"].push_back(e);
    }
    j["measurements"] = ordered::array();
    for (const auto& m : r.measurements) {
        j["measurements"].push_back({{"name", m.name}, {"value", m.value}, {"unit", m.unit}});
    }
    if (!r.sweep.empty()) {
        j["sweep"] = ordered::array();
        for (const auto& s : r.sweep) {
            j["sweep"].push_back(
                {{"delta_t_sec", s.delta_t}, {"rapidity", s.rapidity}, {"leakage", s.leakage}, {"N", s.lattice}});
        }
    }
    return j.dump(2) + "\n";
}

std::string to_csv(const std::vector<SweepRow>& rows)
{
    std::ostringstream out;
    out << "delta_t_sec,rapidity,leakage,N\n";
    for (const auto& r : rows) {
        out << csv_number(r.delta_t) << ',' << csv_number(r.rapidity) << ',' << csv_number(r.leakage) << ',' << r.lattice << '\n';
    }
    return out.str();
}

} // namespace minkabs
