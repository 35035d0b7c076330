#pragma once

#include "minkabs/lattice.hpp"
#include "minkabs/region.hpp"

#include <random>

namespace minkabs {

/**
 * Gaussian wave packet on the lattice: psi(p) ~ exp(-w^2 |p - k|^2 - i (p - k).c),
 * so the position probability has standard deviation `width` per axis around `center`.
 *
 * `mean_momentum` is an element of E_u0 carrying momentum in 1/sec, stored as a
 * spacetime vector whose length in seconds equals the momentum in 1/sec.
 * Requires width >= 3a, center in t0 inside the lattice box and |k| <= cutoff / 2.
 */
LatticeState make_gaussian(const std::shared_ptr<const Lattice>& lat, const SpacetimePoint& center,
                           const MeasureScalar& width, const SpacetimeVector& mean_momentum = {});

/// Normalized superposition of 1-3 random Gaussians, kept well inside the band
/// and the central half of the box. Deterministic for a given engine state.
LatticeState random_state(const std::shared_ptr<const Lattice>& lat, std::mt19937_64& rng);

/// Labels of the PVM P_{u,t}.
class PvmHandle {
public:
    explicit PvmHandle(const Instant& t) : t_(t) {}
    PvmHandle(const Velocity& u, const Instant& t);

    const Velocity& observer() const { return t_.observer(); }
    const Instant& instant() const { return t_; }

private:
    Instant t_;
};

/**
 * The map used to carry the lattice PVM to (u, t): the canonical boost from u0
 * to u about the lattice origin, followed by the translation along u that puts
 * the lattice origin on t. It is a pure translation along u0 when u = u0.
 */
PoincareMap carrier(const Lattice& lat, const PvmHandle& P);

/// Lattice cells (storage order) whose centers lie in E; E must lie on t0.
std::vector<char> cell_mask(const Lattice& lat, const Region& E);

/**
 * P_{u,t}(E) s. On (u0, t0) this is the discrete Fourier position projection;
 * elsewhere it is defined by covariance, U_C P_{u0,t0}(C^-1[E]) U_C^-1 with C the carrier.
 */
LatticeState pvm_project(const PvmHandle& P, const Region& E, const LatticeState& s);

/// |P_{u,t}(E) s|^2.
double localization_probability(const PvmHandle& P, const Region& E, const LatticeState& s);

/// Labels of the o-centered generalized Newton-Wigner position at the u-instant t.
class NwPosition {
public:
    NwPosition(const Instant& t, const SpacetimePoint& origin) : t_(t), o_(origin) {}

    const Velocity& observer() const { return t_.observer(); }
    const Instant& instant() const { return t_; }
    const SpacetimePoint& origin() const { return o_; }

private:
    Instant t_;
    SpacetimePoint o_;
};

/// Expectation of W^o_{u,t}: sum over cells of (cell center - o) times the cell probability.
/// Cells on the Nyquist plane of an axis count as coordinate 0 along that axis.
SpacetimeVector nw_expectation(const NwPosition& W, const LatticeState& s);

struct ComponentStats {
    double mean = 0.0;
    double variance = 0.0;
};

struct NwStats {
    ComponentStats tau;                 // u2-timelike component (sec, sec^2)
    std::array<ComponentStats, 3> pi;   // u2-spacelike components along canonical_spatial_basis(u2)
};

/// Distribution of tau_{u2}(W) and pi_{u2}(W). When u2 is W's observer the tau
/// component is the same number on every cell, so its variance is exactly zero.
NwStats nw_component_stats(const NwPosition& W, const Velocity& u2, const LatticeState& s);

/// Four component states of an M-valued operator applied to a state,
/// indexed by fiducial component.
using VectorState = std::array<LatticeState, 4>;

/// W^o_{u,t} s.
VectorState nw_apply(const NwPosition& W, const LatticeState& s);
/// pi_{u2}(W^o_{u,t}) s.
VectorState nw_apply_spatial(const NwPosition& W, const Velocity& u2, const LatticeState& s);

/// Applies a Lorentz map to the vector index.
VectorState mix(const LorentzMap& L, const VectorState& v);
VectorState apply(const PoincareMap& P, const VectorState& v);
double distance(const VectorState& a, const VectorState& b);

} // namespace minkabs
