#include "minkabs/error.hpp"
#include "minkabs/suites.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>

using namespace minkabs;

namespace {

struct Options {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> lattice;
    bool csv = false;
};

int emit(const RunReport& report, const Options& opt)
{
    const std::string text = opt.csv ? to_csv(report.sweep) : to_json(report);
    if (opt.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opt.out, std::ios::binary);
        if (!f) throw ConfigError("cannot write " + opt.out);
        f << text;
    }
    for (const auto& c : report.checks) {
        if (!c.pass) std::cerr << "FAIL " << c.name << ": " << c.residual << " (" << to_string(c.bound) << ' '
                               << c.tolerance << ")\n";
    }
    return report.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Coordinate-free Minkowski kernel and lattice localization checks"};
    app.require_subcommand(1);
    Options opt;
    bool json = false;
    auto add_flags = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "flat JSON config file");
        sub->add_option("--out", opt.out, "write the report here instead of stdout");
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_option("--lattice", opt.lattice, "lattice points per axis (power of two >= 8)");
        auto* j = sub->add_flag("--json", json, "JSON report (default)");
        auto* c = sub->add_flag("--csv", opt.csv, "sweep data as CSV");
        j->excludes(c);
    };
    auto* geometry = app.add_subcommand("verify-geometry", "geometry and group invariants");
    auto* covariance = app.add_subcommand("verify-covariance", "imprimitivity and covariance checks");
    auto* causality = app.add_subcommand("demo-causality", "leakage sweeps and commutator witnesses");
    for (auto* sub : {geometry, covariance, causality}) add_flags(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RunSettings settings;
    try {
        if (!opt.config.empty()) settings = load_settings(opt.config);
        if (opt.seed) settings.seed = *opt.seed;
        if (opt.lattice) settings.model.lattice = *opt.lattice;
        settings.model.validate();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (geometry->parsed()) return emit(run_geometry_suite(settings), opt);
        if (covariance->parsed()) return emit(run_covariance_suite(settings), opt);
        return emit(run_causality_demo(settings), opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
