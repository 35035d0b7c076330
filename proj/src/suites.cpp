#include "minkabs/suites.hpp"

#include "minkabs/error.hpp"
#include "minkabs/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace minkabs {

namespace {

struct Sampler {
    std::mt19937_64 rng;
    std::uniform_real_distribution<double> unit{-1.0, 1.0};

    explicit Sampler(std::uint64_t seed) : rng(seed) {}

    double uniform(double lo, double hi) { return lo + 0.5 * (unit(rng) + 1.0) * (hi - lo); }

    std::array<double, 3> direction()
    {
        for (;;) {
            std::array<double, 3> d{unit(rng), unit(rng), unit(rng)};
            const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
            if (n > 0.1 && n <= 1.0) return {d[0] / n, d[1] / n, d[2] / n};
        }
    }

    Velocity velocity(double max_rapidity)
    {
        const double chi = uniform(0.0, max_rapidity);
        const auto d = direction();
        const double s = std::sinh(chi);
        return normalize_velocity(SpacetimeVector::from_fiducial(std::cosh(chi), s * d[0], s * d[1], s * d[2]));
    }

    SpacetimeVector vector(double scale)
    {
        return SpacetimeVector::from_fiducial(scale * unit(rng), scale * unit(rng), scale * unit(rng),
                                              scale * unit(rng));
    }

    LorentzMap lorentz()
    {
        const Velocity u = velocity(1.0);
        switch (static_cast<int>(uniform(0.0, 4.0))) {
        case 0: return make_boost(u, velocity(1.5));
        case 1: {
            const auto d = direction();
            return make_rotation(u, pi(u, SpacetimeVector::from_fiducial(0.0, d[0], d[1], d[2])),
                                 uniform(-std::numbers::pi, std::numbers::pi));
        }
        case 2: return space_inversion(u);
        default: return make_boost(velocity(1.0), u) * make_rotation(u, pi(u, vector(1.0)), uniform(0.0, 3.0));
        }
    }
};

double relative(double err, double scale) { return err / std::max(1.0, scale); }

LorentzMap point_group_element(const Lattice& lat, const LorentzMap& target)
{
    for (const auto& R : lattice_point_group(lat)) {
        if (R.distance(target) < 1e-12) return R;
    }
    throw DomainError("not a lattice symmetry");
}

} // namespace

RunReport run_geometry_suite(const RunSettings& s)
{
    RunReport r{"verify-geometry", s, {}, {}, {}, {}};
    Sampler g(s.seed);

    double split = 0.0, orth = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Velocity u = g.velocity(2.0);
        const SpacetimeVector x = g.vector(10.0);
        const SpacetimeVector back = u * tau(u, x) + pi(u, x);
        const double scale = x.component_scale() * std::cosh(2.0) * std::cosh(2.0);
        split = std::max(split, relative((back - x).component_scale(), scale));
        orth = std::max(orth, relative(std::fabs(lorentz_product(u, pi(u, x)).value()), scale));
    }
    r.checks.push_back(make_check("splitting_identity", split, 1e-12));
    r.checks.push_back(make_check("spatial_part_orthogonal", orth, 1e-12));

    double product = 0.0, inverse = 0.0, assoc = 0.0, lorentz = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const LorentzMap L = g.lorentz() * g.lorentz() * g.lorentz();
        const SpacetimeVector x = g.vector(5.0), y = g.vector(5.0);
        const double scale = L(x).component_scale() * L(y).component_scale() + x.component_scale() * y.component_scale();
        product = std::max(product, relative(std::fabs((lorentz_product(L(x), L(y)) - lorentz_product(x, y)).value()),
                                             scale));
        lorentz = std::max(lorentz, is_lorentz(L) ? 0.0 : 1.0);

        const PoincareMap P(L, g.vector(3.0)), Q(g.lorentz(), g.vector(3.0)), R(g.lorentz(), g.vector(3.0));
        inverse = std::max(inverse, (P * P.inverse()).distance(PoincareMap::identity()));
        assoc = std::max(assoc, ((P * Q) * R).distance(P * (Q * R)) /
                                    std::max(1.0, (P * Q * R).linear().fiducial_matrix().norm()));
    }
    r.checks.push_back(make_check("lorentz_product_preserved", product, 1e-9));
    r.checks.push_back(make_check("composed_maps_are_lorentz", lorentz, 0.0));
    r.checks.push_back(make_check("inverse_law", inverse, 1e-9));
    r.checks.push_back(make_check("associativity", assoc, 1e-9));

    // Causal class is invariant under Lorentz maps away from the cone.
    double flips = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const SpacetimeVector x = g.vector(4.0);
        const double q = lorentz_product(x, x).value();
        if (std::fabs(q) < 1e-3 * x.component_scale() * x.component_scale()) continue;
        const LorentzMap L = g.lorentz();
        if (causal_class(L(x)) != causal_class(x)) flips += 1.0;
    }
    r.checks.push_back(make_check("causal_class_invariant", flips, 0.0));

    // Mixing dimensions must be rejected.
    double missed = 0.0;
    try {
        (void)(seconds(1.0) + seconds_squared(1.0));
        missed += 1.0;
    } catch (const DimensionError&) {
    }
    try {
        (void)(seconds(1.0) < per_second(1.0));
        missed += 1.0;
    } catch (const DimensionError&) {
    }
    r.checks.push_back(make_check("dimension_errors_raised", missed, 0.0));
    return r;
}

RunReport run_covariance_suite(const RunSettings& s)
{
    RunReport r{"verify-covariance", s, {}, {}, {}, {}};
    const auto lat = Lattice::make(s.model);
    const int N = lat->n();
    const double a = lat->spacing();
    const SpacetimePoint& O = lat->lattice_origin();
    const Velocity& u0 = lat->observer();
    const auto states = random_states(lat, s.trials, s.seed);

    // Imprimitivity on t0.
    const Region E = lattice_region(*lat, {cell_box(*lat, {-3, -2, 0}, {2, 4, 3})});
    double worst = 0.0;
    for (const auto& R : lattice_point_group(*lat)) {
        worst = std::max(worst, verify_imprimitivity(PoincareMap::about(O, R), E, states).residual);
    }
    r.checks.push_back(make_check("imprimitivity_point_group", worst, 1e-10, Bound::at_most, N));
    const PoincareMap shift = PoincareMap::translation(3.0 * a * lat->frame()[0] - 2.0 * a * lat->frame()[2]);
    r.checks.push_back(make_check("imprimitivity_lattice_translation", verify_imprimitivity(shift, E, states).residual, 1e-10,
                                  Bound::at_most, N));

    // Covariance: exact along u0, convergent for boosts.
    const PoincareMap later = PoincareMap::translation(u0 * seconds(1.5));
    r.checks.push_back(make_check("covariance_time_translation", verify_covariance(later, E, states).residual, 1e-10,
                                  Bound::at_most, N));

    double drift = 0.0;
    for (int k = 0; k < 3; ++k) {
        ConvergenceTable table{"covariance_boost_seed_" + std::to_string(s.seed + k), {}};
        for (int n : {N, 2 * N}) {
            RunSettings refined = s;
            refined.model.lattice = n;
            const auto fine = Lattice::make(refined.model);
            const PoincareMap back = PoincareMap::about(fine->lattice_origin(), lattice_boost(*fine, -s.rapidity));
            const Region base = apply(back, lattice_region(*fine, {cell_box(*fine, -4, 4)}));
            const auto rep = verify_covariance(back.inverse(), base, random_states(fine, 3, s.seed + k));
            table.rows.push_back({n, rep.residual});
            if (n == N) drift = std::max(drift, rep.norm_drift);
        }
        r.checks.push_back(make_check("covariance_boost_ratio_seed_" + std::to_string(s.seed + k),
                                      table.rows[1].residual / table.rows[0].residual, 0.6, Bound::at_most, 2 * N));
        r.tables.push_back(std::move(table));
    }
    r.measurements.push_back({"boost_norm_drift", drift, "1"});
    r.measurements.push_back({"chi_max", s.model.chi_max(), "1"});

    // Newton-Wigner transformation rules.
    const NwPosition W(lat->instant(), O);
    const LorentzMap quarter = point_group_element(*lat, make_rotation(u0, lat->frame()[2], 0.5 * std::numbers::pi));
    const PoincareMap rot = PoincareMap::about(O, quarter);
    r.checks.push_back(make_check("nw_rule_lattice_rotation", verify_nw_rule(W, rot, states).residual, 1e-10,
                                  Bound::at_most, N));
    r.checks.push_back(make_check("nw_rule_time_translation", verify_nw_rule(W, later, states).residual, 1e-10,
                                  Bound::at_most, N));
    const std::vector<LatticeState> standard{standard_gaussian(lat)};
    const PoincareMap boost = PoincareMap::about(O, lattice_boost(*lat, s.rapidity));
    r.checks.push_back(make_check("nw_fixed_label_not_four_vector",
                                  nw_four_vector_defect(W, boost, standard).residual, 0.1, Bound::at_least, N));

    r.checks.push_back(make_check("nw_spatial_same_observer_rotation",
                                  verify_nw_spatial_rule(W, u0, rot, states).residual, 1e-10, Bound::at_most, N));
    const Velocity u2 = lattice_boost(*lat, 0.5)(u0);
    const PoincareMap tilt = PoincareMap::about(O, make_rotation(u2, pi(u2, lat->frame()[2]), std::numbers::pi / 6));
    r.checks.push_back(make_check("nw_spatial_moving_observer_witness", verify_nw_spatial_rule(W, u2, tilt, standard).residual,
                                  0.05, Bound::at_least, N));

    r.checks.push_back(make_check("nw_tau_variance_same_observer",
                                  max_tau_variance(W, u0, random_states(lat, 100, s.seed + 100)), 0.0,
                                  Bound::at_most, N));
    r.checks.push_back(make_check("nw_tau_variance_moving_observer",
                                  nw_component_stats(W, u2, standard.front()).tau.variance, 0.01, Bound::above, N));
    return r;
}

RunReport run_causality_demo(const RunSettings& s)
{
    RunReport r{"demo-causality", s, {}, {}, {}, {}};
    const auto lat = Lattice::make(s.model);
    const int N = lat->n();
    const Velocity& u0 = lat->observer();
    const MeasureScalar width = 3.0 * s.model.spacing;
    const Region E = lattice_region(*lat, {cell_box(*lat, -2, 2)});

    double initial = 1.0, leak0 = 0.0, smallest = 1.0, leak2 = 0.0;
    for (double dt : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0}) {
        const auto c = causality_experiment(lat, E, seconds(dt), u0, width);
        r.sweep.push_back({dt, 0.0, c.leakage, N});
        initial = std::min(initial, c.initial_probability);
        if (dt == 0.0) leak0 = c.leakage;
        else smallest = std::min(smallest, c.leakage);
        if (dt == 2.0) leak2 = c.leakage;
    }
    double drift = 0.0;
    for (double chi : {0.1, 0.2, 0.3, 0.4}) {
        if (chi > s.model.chi_max()) continue;
        const auto c = causality_experiment(lat, E, seconds(2.0), lattice_boost(*lat, chi)(u0), width);
        r.sweep.push_back({2.0, chi, c.leakage, N});
        drift = std::max(drift, c.norm_drift);
    }

    RunSettings refined = s;
    refined.model.lattice = 2 * N;
    const auto fine = Lattice::make(refined.model);
    const double leak2_fine =
        causality_experiment(fine, lattice_region(*fine, {cell_box(*fine, -2, 2)}), seconds(2.0), u0, width).leakage;
    r.tables.push_back({"leakage_dt_2_sec", {{N, leak2}, {2 * N, leak2_fine}}});

    r.checks.push_back(make_check("initial_localization_deficit", 1.0 - initial, 1e-6, Bound::at_most, N));
    r.checks.push_back(make_check("leakage_dt_0", leak0, 1e-10, Bound::at_most, N));
    r.checks.push_back(make_check("leakage_positive_dt", smallest, 1e-6, Bound::above, N));
    r.checks.push_back(make_check("leakage_doubling_log2_ratio", std::fabs(std::log2(leak2_fine / leak2)), 1.0,
                                  Bound::at_most, 2 * N));

    // Commutators: spacelike-separated cells across instants, and disjoint cells on one instant.
    const Region inner = lattice_region(*lat, {cell_box(*lat, -2, 3)});
    const Box far = cell_box(*lat, {8, -2, -2}, {13, 3, 3});
    const Instant later = lat->instant().shifted(seconds(0.5));
    const Region remote(later, later.anchor(), lat->frame(), {far});
    const PvmHandle P0(lat->instant());
    r.checks.push_back(make_check("commutator_spacelike_cross_instant",
                                  commutator_witness(lat, P0, inner, PvmHandle(later), remote, s.seed), 1e-4,
                                  Bound::at_least, N));
    r.checks.push_back(make_check("commutator_same_instant_disjoint",
                                  commutator_witness(lat, P0, inner, P0, lattice_region(*lat, {far}), s.seed), 1e-12,
                                  Bound::at_most, N));
    r.measurements.push_back({"boost_norm_drift", drift, "1"});
    return r;
}

} // namespace minkabs
