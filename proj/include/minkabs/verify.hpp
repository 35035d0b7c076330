#pragma once

#include "minkabs/quantum.hpp"

#include <cstdint>
#include <vector>

namespace minkabs {

/// Residual of an operator identity over a batch of states.
struct ResidualReport {
    double residual = 0.0;   // max over states of |lhs s - rhs s|
    double norm_drift = 0.0; // largest boost norm drift seen while evaluating (0 on exact paths)
    int states = 0;
};

/// `count` random band-limited states from a seeded engine.
std::vector<LatticeState> random_states(const std::shared_ptr<const Lattice>& lat, int count, std::uint64_t seed);

/// The standard test state: Gaussian of width 1 sec at the lattice origin, at rest.
LatticeState standard_gaussian(const std::shared_ptr<const Lattice>& lat);

/// Imprimitivity: | U_S P_{u0,t0}(E) U_S^-1 s - P_{u0,t0}(S[E]) s | for S stabilizing t0.
ResidualReport verify_imprimitivity(const PoincareMap& S, const Region& E, const std::vector<LatticeState>& states);

/**
 * Covariance: | U_L P_{u,t}(E) U_L^-1 s - P_{Lu,L[t]}(L[E]) s | with (u, t) = E's instant.
 * Both sides go through the covariance-defined PVMs, so the residual measures how
 * well the numerical representation composes (exact for lattice symmetries).
 */
ResidualReport verify_covariance(const PoincareMap& L, const Region& E, const std::vector<LatticeState>& states);

/// | U_L W^o_{u,t} U_L^-1 s - L^-1 W^{Lo}_{Lu,L[t]} s |.
ResidualReport verify_nw_rule(const NwPosition& W, const PoincareMap& L, const std::vector<LatticeState>& states);

/// | U_L Q U_L^-1 s - L Q s | for the fixed-label Q = W; large when Q is not a four-vector operator.
ResidualReport nw_four_vector_defect(const NwPosition& W, const PoincareMap& L,
                                        const std::vector<LatticeState>& states);

/// | U_L pi_{u2}(W) U_L^-1 s - L^-1 pi_{u2}(W) s | for L fixing u2 (R = restriction of L to E_u2).
ResidualReport verify_nw_spatial_rule(const NwPosition& W, const Velocity& u2, const PoincareMap& L,
                            const std::vector<LatticeState>& states);

/// Largest tau_{u2}-variance of W over the states.
double max_tau_variance(const NwPosition& W, const Velocity& u2, const std::vector<LatticeState>& states);

/// Localized state: P_{u0,t0}(E) g renormalized, g a Gaussian centered in E.
LatticeState localized_state(const std::shared_ptr<const Lattice>& lat, const Region& E, const MeasureScalar& width);

struct CausalityResult {
    double leakage = 0.0;        // 1 - P(grown region) / total
    double initial_probability = 0.0;
    double norm_drift = 0.0;
    Region grown;
};

/**
 * Prepares a state localized in E (on t0), and measures the probability that
 * P_{u2,t'} finds outside (E + T) intersected with t', where t' is the u2-instant
 * through E's origin shifted by dt along u2. Throws DomainError for dt < 0.
 */
CausalityResult causality_experiment(const std::shared_ptr<const Lattice>& lat, const Region& E,
                                     const MeasureScalar& dt, const Velocity& u2, const MeasureScalar& width);

/// Max over unit states of | [P_a(E_a), P_b(E_b)] s |, estimated by power iteration
/// on the (negative semi-definite) square of the commutator from random starts.
double commutator_witness(const std::shared_ptr<const Lattice>& lat, const PvmHandle& Pa, const Region& Ea,
                          const PvmHandle& Pb, const Region& Eb, std::uint64_t seed, int starts = 3,
                          int iterations = 12);

/// The 48 signed permutations of the lattice axes, as elements of O_u0.
std::vector<LorentzMap> lattice_point_group(const Lattice& lat);

/// Canonical boost of rapidity chi along lattice axis `axis`.
LorentzMap lattice_boost(const Lattice& lat, double chi, int axis = 0);

/// Box [lo, hi)^3 in lattice cells: the cells with signed index in [lo, hi) per axis.
Box cell_box(const Lattice& lat, int lo, int hi);
Box cell_box(const Lattice& lat, std::array<int, 3> lo, std::array<int, 3> hi);

/// Region on t0 with the lattice origin and frame.
Region lattice_region(const Lattice& lat, std::vector<Box> boxes);

} // namespace minkabs
