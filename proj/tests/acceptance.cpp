// Acceptance run: one PASS/FAIL line per criterion, at fixed tolerances.
//
// Exit status is nonzero if any criterion fails, except the boost-refinement
// criterion, which is a documented known failure (see README): its line still
// reads FAIL when it fails.

#include "minkabs/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

using namespace minkabs;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    int id;
    bool pass;
    std::string detail;
    double seconds;
};

int unexpected_failures = 0;

void report(const Outcome& o, bool known_failure = false)
{
    std::printf("%s  %d  %s  (%.1f s)%s\n", o.pass ? "PASS" : "FAIL", o.id, o.detail.c_str(), o.seconds,
                !o.pass && known_failure ? "  [known failure]" : "");
    std::fflush(stdout);
    if (!o.pass && !known_failure) ++unexpected_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::shared_ptr<const Lattice> lattice(int n)
{
    ModelConfig c;
    c.lattice = n;
    return Lattice::make(c);
}

Velocity boosted(double chi, std::array<double, 3> n)
{
    const double s = std::sinh(chi);
    return Velocity::from_fiducial({std::cosh(chi), s * n[0], s * n[1], s * n[2]});
}

std::array<double, 3> unit(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (;;) {
        std::array<double, 3> n{d(rng), d(rng), d(rng)};
        const double l = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        if (l > 0.1 && l < 1.0) return {n[0] / l, n[1] / l, n[2] / l};
    }
}

void geometry()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double split = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Velocity u = boosted(1.0 + d(rng), unit(rng));
        const SpacetimeVector x = SpacetimeVector::from_fiducial(10 * d(rng), 10 * d(rng), 10 * d(rng), 10 * d(rng));
        const double scale = x.component_scale() * std::cosh(2.0) * std::cosh(2.0);
        split = std::max(split, (u * tau(u, x) + pi(u, x) - x).component_scale() / scale);
        split = std::max(split, std::fabs(lorentz_product(u, pi(u, x)).value()) / scale);
    }
    double product = 0.0;
    auto random_map = [&] {
        const Velocity u = boosted(0.5 * (d(rng) + 1.0), unit(rng));
        const auto n = unit(rng);
        return make_boost(u, boosted(0.6 * (d(rng) + 1.0), unit(rng))) *
               make_rotation(u, pi(u, SpacetimeVector::from_fiducial(0, n[0], n[1], n[2])), 3.0 * d(rng));
    };
    for (int i = 0; i < 1000; ++i) {
        const LorentzMap L = random_map() * random_map() * random_map();
        const SpacetimeVector x = SpacetimeVector::from_fiducial(5 * d(rng), 5 * d(rng), 5 * d(rng), 5 * d(rng));
        const SpacetimeVector y = SpacetimeVector::from_fiducial(5 * d(rng), 5 * d(rng), 5 * d(rng), 5 * d(rng));
        const double bound = std::max({1.0, std::fabs(lorentz_product(x, x).value()),
                                       std::fabs(lorentz_product(y, y).value())});
        product = std::max(product,
                           std::fabs((lorentz_product(L(x), L(y)) - lorentz_product(x, y)).value()) / bound);
    }
    const double t = since(t0);
    report({1, split <= 1e-12 && product <= 1e-9 && t < 5.0,
            fmt("geometry: splitting %.2e <= 1e-12 over 1e4 inputs, product preservation %.2e <= 1e-9 over 1e3 maps",
                split, product),
            t});
}

void imprimitivity()
{
    const auto t0 = Clock::now();
    const auto lat = lattice(32);
    const auto states = random_states(lat, 50, 2);
    const Region E = lattice_region(*lat, {cell_box(*lat, {-3, -2, 0}, {2, 4, 3})});
    const SpacetimePoint& O = lat->lattice_origin();
    const double a = lat->spacing();
    double worst = 0.0;
    for (const auto& R : lattice_point_group(*lat)) {
        worst = std::max(worst, verify_imprimitivity(PoincareMap::about(O, R), E, states).residual);
    }
    const auto& f = lat->frame();
    for (const auto& v : {a * f[0], 5.0 * a * f[1] - 3.0 * a * f[2], -7.0 * a * f[0] + 2.0 * a * f[1] + a * f[2]}) {
        worst = std::max(worst, verify_imprimitivity(PoincareMap::translation(v), E, states).residual);
    }
    const double t = since(t0);
    report({2, worst <= 1e-10 && t < 60.0,
            fmt("localization imprimitivity: 48 lattice rotations + 3 lattice translations, 50 states, N=32: %.2e <= 1e-10",
                worst),
            t});
}

void covariance_refinement()
{
    const auto t0 = Clock::now();
    const double chi = 0.25;
    std::string detail = "boost covariance under N-doubling, chi=0.25, ratio N=64/N=32 <= 0.6:";
    bool pass = true;
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        double r[2];
        for (int k = 0; k < 2; ++k) {
            const auto lat = lattice(k == 0 ? 32 : 64);
            const PoincareMap back = PoincareMap::about(lat->lattice_origin(), lattice_boost(*lat, -chi));
            const Region base = apply(back, lattice_region(*lat, {cell_box(*lat, -4, 4)}));
            r[k] = verify_covariance(back.inverse(), base, random_states(lat, 3, seed)).residual;
        }
        pass = pass && r[1] <= 0.6 * r[0];
        detail += fmt(" [%.3e -> %.3e, %.2f]", r[0], r[1], r[1] / r[0]);
    }
    const double t = since(t0);
    report({3, pass && t < 600.0, detail, t}, true);
}

void nw_rule()
{
    const auto t0 = Clock::now();
    const auto lat = lattice(32);
    const SpacetimePoint& O = lat->lattice_origin();
    const NwPosition W(lat->instant(), O);
    const auto states = random_states(lat, 10, 3);
    double exact = 0.0;
    for (int k : {5, 13, 30, 47}) {
        const PoincareMap R = PoincareMap::about(O, lattice_point_group(*lat)[k]);
        exact = std::max(exact, verify_nw_rule(W, R, states).residual);
    }
    exact = std::max(exact, verify_nw_rule(W, PoincareMap::translation(lat->observer() * seconds(0.75)), states).residual);
    const PoincareMap B = PoincareMap::about(O, lattice_boost(*lat, 0.25));
    const double defect = nw_four_vector_defect(W, B, {standard_gaussian(lat)}).residual;
    report({4, exact <= 1e-10 && defect >= 0.1,
            fmt("position transformation rule: lattice symmetries %.2e <= 1e-10; fixed-label four-vector defect %.3f >= 0.1",
                exact, defect),
            since(t0)});
}

void spatial_rule()
{
    const auto t0 = Clock::now();
    const auto lat = lattice(32);
    const SpacetimePoint& O = lat->lattice_origin();
    const Velocity& u0 = lat->observer();
    const NwPosition W(lat->instant(), O);
    const auto states = random_states(lat, 10, 4);
    const PoincareMap quarter = PoincareMap::about(O, make_rotation(u0, lat->frame()[2], 0.5 * std::numbers::pi));
    const double same = verify_nw_spatial_rule(W, u0, quarter, states).residual;
    const Velocity u2 = lattice_boost(*lat, 0.5)(u0);
    const PoincareMap tilt = PoincareMap::about(O, make_rotation(u2, pi(u2, lat->frame()[2]), std::numbers::pi / 6));
    const double moving = verify_nw_spatial_rule(W, u2, tilt, {standard_gaussian(lat)}).residual;
    report({5, same <= 1e-10 && moving >= 0.05,
            fmt("spatial part rule: u2=u0 quarter turn %.2e <= 1e-10; u2 at rapidity 0.5 %.3f >= 0.05", same, moving),
            since(t0)});
}

void tau_variance()
{
    const auto t0 = Clock::now();
    const auto lat = lattice(32);
    const NwPosition W(lat->instant(), lat->lattice_origin());
    const double zero = max_tau_variance(W, lat->observer(), random_states(lat, 100, 5));

    // Witness: standard Gaussian seen by u2 at rapidity 0.5 along axis 1.
    const double chi = 0.5;
    const Velocity u2 = lattice_boost(*lat, chi)(lat->observer());
    const LatticeState g = standard_gaussian(lat);
    const double witness = nw_component_stats(W, u2, g).tau.variance;
    // Oracle: sinh^2(chi) Var(x1), x1 summed over the cell distribution.
    const Amplitudes phi = g.position_amplitudes();
    double m1 = 0.0, m2 = 0.0;
    const double a = lat->spacing();
    for (int i = 0; i < lat->n(); ++i)
        for (int j = 0; j < lat->n(); ++j)
            for (int k = 0; k < lat->n(); ++k) {
                const int n = lat->signed_index(i) == -lat->n() / 2 ? 0 : lat->signed_index(i);
                const double p = std::norm(phi[lat->flat(i, j, k)]);
                m1 += p * a * n;
                m2 += p * a * a * n * n;
            }
    const double oracle = std::sinh(chi) * std::sinh(chi) * (m2 - m1 * m1);
    constexpr double pinned = 0.2727; // sec^2, from the oracle run
    const bool pass = zero == 0.0 && witness > 0.01 && std::fabs(witness - pinned) <= 0.2 * pinned &&
                      std::fabs(witness - oracle) <= 1e-9;
    report({6, pass,
            fmt("time component variance: u2=u0 max over 100 states %.1e == 0; witness %.4f sec^2 > 0.01, oracle %.4f, pinned %.4f +-20%%",
                zero, witness, oracle, pinned),
            since(t0)});
}

void causality()
{
    const auto t0 = Clock::now();
    double leak[2], zero = 1.0;
    double t32 = 0.0;
    for (int k = 0; k < 2; ++k) {
        const auto lat = lattice(k == 0 ? 32 : 64);
        const Region E = lattice_region(*lat, {cell_box(*lat, -2, 2)}); // side 4a
        const MeasureScalar width = 3.0 * lat->config().spacing;
        leak[k] = causality_experiment(lat, E, seconds(2.0), lat->observer(), width).leakage;
        if (k == 0) {
            zero = causality_experiment(lat, E, seconds(0.0), lat->observer(), width).leakage;
            t32 = since(t0);
        }
    }
    const double ratio = leak[1] / leak[0];
    report({7, leak[0] > 1e-6 && ratio >= 0.5 && ratio <= 2.0 && zero <= 1e-10 && t32 < 300.0,
            fmt("leakage outside the causal shadow, box 4a, dt=2 sec: N=32 %.4e > 1e-6, N=64 %.4e (ratio %.3f in [0.5, 2]); dt=0 %.1e <= 1e-10",
                leak[0], leak[1], ratio, zero),
            since(t0)});
}

void commutators()
{
    const auto t0 = Clock::now();
    const auto lat = lattice(32);
    const PvmHandle P0(lat->instant());
    const Region E = lattice_region(*lat, {cell_box(*lat, -2, 3)});
    const Box far = cell_box(*lat, {8, -2, -2}, {13, 3, 3});
    // Closest points are 1.25 sec apart in space and 0.5 sec apart in time.
    const Instant later = lat->instant().shifted(seconds(0.5));
    const Region remote(later, later.anchor(), lat->frame(), {far});
    const double cross = commutator_witness(lat, P0, E, PvmHandle(later), remote, 6);
    const double same = commutator_witness(lat, P0, E, P0, lattice_region(*lat, {far}), 6);
    report({8, cross >= 1e-4 && same <= 1e-12,
            fmt("commutators: spacelike-separated across instants %.3e >= 1e-4; disjoint on one instant %.1e <= 1e-12",
                cross, same),
            since(t0)});
}

void equivariance()
{
    const auto t0 = Clock::now();
    const auto lat = lattice(32);
    const SpacetimePoint& O = lat->lattice_origin();
    const Velocity& u0 = lat->observer();
    const auto& f = lat->frame();
    const double a = lat->spacing();
    const auto group = lattice_point_group(*lat);
    const auto states = random_states(lat, 5, 7);

    struct Case {
        PvmHandle P;
        Region E;
    };
    const Instant t1 = lat->instant().shifted(seconds(0.75));
    const Velocity u2 = boosted(0.3, {0.6, 0.0, 0.8});
    const Instant t2(u2, O + u2 * seconds(0.5));
    const std::vector<Case> lattice_cases{
        {PvmHandle(lat->instant()), lattice_region(*lat, {cell_box(*lat, {-3, -1, 0}, {2, 3, 4})})},
        {PvmHandle(t1), Region(t1, t1.anchor(), f, {cube(-1.1, 0.7), Box{{0.7, -0.3, -0.3}, {1.6, 0.4, 0.2}}})},
    };
    const Case moving{PvmHandle(t2), Region(t2, {cube(-0.8, 0.9)})};

    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> pick(0, 47), shift(-3, 3);
    double worst = 0.0, worst_moving = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
        const LorentzMap R = group[pick(rng)];
        const SpacetimeVector v = shift(rng) * a * f[0] + shift(rng) * a * f[1] + shift(rng) * a * f[2] +
                                  u0 * seconds(shift(rng) * a);
        const PoincareMap G = PoincareMap::translation(v) * PoincareMap::about(O, R);
        const PoincareMap Rot = PoincareMap::about(O, R);
        for (const auto& s : states) {
            for (const auto& c : lattice_cases) {
                const double p = localization_probability(c.P, c.E, s);
                const double q = localization_probability(PvmHandle(apply(G, c.P.instant())), apply(G, c.E), apply(G, s));
                worst = std::max(worst, std::fabs(p - q));
            }
            const double p = localization_probability(moving.P, moving.E, s);
            const double q =
                localization_probability(PvmHandle(apply(Rot, moving.P.instant())), apply(Rot, moving.E), apply(Rot, s));
            worst_moving = std::max(worst_moving, std::fabs(p - q));
        }
    }
    report({9, worst <= 1e-10 && worst_moving <= 1e-10,
            fmt("equivariance of probabilities under random lattice-compatible maps: u0 handles %.2e, moving handle (rotations) %.2e <= 1e-10",
                worst, worst_moving),
            since(t0)});
}

} // namespace

int main()
{
    geometry();
    imprimitivity();
    covariance_refinement();
    nw_rule();
    spatial_rule();
    tau_variance();
    causality();
    commutators();
    equivariance();
    return unexpected_failures == 0 ? 0 : 1;
}
