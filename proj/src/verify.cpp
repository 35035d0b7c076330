#include "minkabs/verify.hpp"

#include "minkabs/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace minkabs {

namespace {

double drift(const LatticeState& before, const LatticeState& after)
{
    return std::fabs(after.norm() - before.norm());
}

/// U_P s, recording the norm change in `worst`.
LatticeState tracked(const PoincareMap& P, const LatticeState& s, double& worst)
{
    LatticeState out = apply(P, s);
    worst = std::max(worst, drift(s, out));
    return out;
}

VectorState tracked(const PoincareMap& P, const VectorState& v, double& worst)
{
    return {tracked(P, v[0], worst), tracked(P, v[1], worst), tracked(P, v[2], worst), tracked(P, v[3], worst)};
}

LatticeState masked(const std::vector<char>& mask, bool keep, const LatticeState& s)
{
    Amplitudes phi = s.position_amplitudes();
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (static_cast<bool>(mask[i]) != keep) phi[i] = Complex{0.0, 0.0};
    }
    return LatticeState::from_position(s.lattice_ptr(), phi);
}

LatticeState commutator(const PvmHandle& Pa, const Region& Ea, const PvmHandle& Pb, const Region& Eb,
                        const LatticeState& v)
{
    return pvm_project(Pa, Ea, pvm_project(Pb, Eb, v)) - pvm_project(Pb, Eb, pvm_project(Pa, Ea, v));
}

/// Matrix whose columns are the fiducial components of u0 and the lattice frame.
Eigen::Matrix4d lattice_basis(const Lattice& lat)
{
    Eigen::Matrix4d F;
    const auto u = (lat.observer() * seconds(1.0)).fiducial_components();
    for (int r = 0; r < 4; ++r) F(r, 0) = u[r];
    for (int j = 0; j < 3; ++j) {
        const auto f = lat.frame()[j].fiducial_components();
        for (int r = 0; r < 4; ++r) F(r, j + 1) = f[r];
    }
    return F;
}

/// Fiducial matrix of the map acting as `m` in the basis (u0, f1, f2, f3).
LorentzMap in_lattice_basis(const Lattice& lat, const Eigen::Matrix4d& m)
{
    const Eigen::Matrix4d F = lattice_basis(lat);
    const Eigen::Matrix4d eta = Eigen::Vector4d(-1.0, 1.0, 1.0, 1.0).asDiagonal();
    return LorentzMap(F * m * eta * F.transpose() * eta);
}

} // namespace

std::vector<LatticeState> random_states(const std::shared_ptr<const Lattice>& lat, int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<LatticeState> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(random_state(lat, rng));
    return out;
}

LatticeState standard_gaussian(const std::shared_ptr<const Lattice>& lat)
{
    return make_gaussian(lat, lat->lattice_origin(), seconds(1.0));
}

ResidualReport verify_imprimitivity(const PoincareMap& S, const Region& E, const std::vector<LatticeState>& states)
{
    const Lattice& lat = states.front().lattice();
    if (!stabilizes_instant(S, lat.instant())) throw DomainError("map does not stabilize the lattice instant");
    if (!E.instant().coincides(lat.instant(), 1e-9)) throw DomainError("region must lie on the lattice instant");
    const PvmHandle P(lat.instant());
    const Region SE = apply(S, E);
    const PoincareMap Sinv = S.inverse();
    ResidualReport r;
    for (const auto& s : states) {
        const LatticeState lhs = tracked(S, pvm_project(P, E, tracked(Sinv, s, r.norm_drift)), r.norm_drift);
        r.residual = std::max(r.residual, (lhs - pvm_project(P, SE, s)).norm());
        ++r.states;
    }
    return r;
}

ResidualReport verify_covariance(const PoincareMap& L, const Region& E, const std::vector<LatticeState>& states)
{
    const PvmHandle P(E.instant());
    const PvmHandle LP(apply(L, E.instant()));
    const Region LE = apply(L, E);
    const PoincareMap Linv = L.inverse();
    ResidualReport r;
    for (const auto& s : states) {
        const LatticeState lhs = tracked(L, pvm_project(P, E, tracked(Linv, s, r.norm_drift)), r.norm_drift);
        r.residual = std::max(r.residual, (lhs - pvm_project(LP, LE, s)).norm());
        ++r.states;
    }
    return r;
}

ResidualReport verify_nw_rule(const NwPosition& W, const PoincareMap& L, const std::vector<LatticeState>& states)
{
    const NwPosition LW(apply(L, W.instant()), L(W.origin()));
    const LorentzMap Linv = L.linear().inverse();
    const PoincareMap Pinv = L.inverse();
    ResidualReport r;
    for (const auto& s : states) {
        const VectorState lhs = tracked(L, nw_apply(W, tracked(Pinv, s, r.norm_drift)), r.norm_drift);
        r.residual = std::max(r.residual, distance(lhs, mix(Linv, nw_apply(LW, s))));
        ++r.states;
    }
    return r;
}

ResidualReport nw_four_vector_defect(const NwPosition& W, const PoincareMap& L,
                                        const std::vector<LatticeState>& states)
{
    const PoincareMap Pinv = L.inverse();
    ResidualReport r;
    for (const auto& s : states) {
        const VectorState lhs = tracked(L, nw_apply(W, tracked(Pinv, s, r.norm_drift)), r.norm_drift);
        r.residual = std::max(r.residual, distance(lhs, mix(L.linear(), nw_apply(W, s))));
        ++r.states;
    }
    return r;
}

ResidualReport verify_nw_spatial_rule(const NwPosition& W, const Velocity& u2, const PoincareMap& L,
                            const std::vector<LatticeState>& states)
{
    if (!in_O_u(L.linear(), u2)) throw DomainError("map must fix the observer u2");
    const LorentzMap Rinv = L.linear().inverse();
    const PoincareMap Pinv = L.inverse();
    ResidualReport r;
    for (const auto& s : states) {
        const VectorState lhs =
            tracked(L, nw_apply_spatial(W, u2, tracked(Pinv, s, r.norm_drift)), r.norm_drift);
        r.residual = std::max(r.residual, distance(lhs, mix(Rinv, nw_apply_spatial(W, u2, s))));
        ++r.states;
    }
    return r;
}

double max_tau_variance(const NwPosition& W, const Velocity& u2, const std::vector<LatticeState>& states)
{
    double worst = 0.0;
    for (const auto& s : states) worst = std::max(worst, nw_component_stats(W, u2, s).tau.variance);
    return worst;
}

LatticeState localized_state(const std::shared_ptr<const Lattice>& lat, const Region& E, const MeasureScalar& width)
{
    if (E.is_empty()) throw DomainError("cannot localize in an empty region");
    std::array<double, 3> lo = E.boxes().front().lo, hi = E.boxes().front().hi;
    for (const auto& b : E.boxes()) {
        for (int ax = 0; ax < 3; ++ax) {
            lo[ax] = std::min(lo[ax], b.lo[ax]);
            hi[ax] = std::max(hi[ax], b.hi[ax]);
        }
    }
    const SpacetimePoint c = E.point_at({0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1]), 0.5 * (lo[2] + hi[2])});
    const LatticeState g = make_gaussian(lat, c, width);
    const LatticeState phi = pvm_project(PvmHandle(lat->instant()), E, g);
    if (phi.norm() == 0.0) throw DomainError("region contains no lattice cell");
    return phi.normalized();
}

CausalityResult causality_experiment(const std::shared_ptr<const Lattice>& lat, const Region& E,
                                     const MeasureScalar& dt, const Velocity& u2, const MeasureScalar& width)
{
    if (dt.in(1) < 0.0) throw DomainError("causality experiment needs dt >= 0");
    const LatticeState phi = localized_state(lat, E, width);

    CausalityResult out{0.0, 0.0, 0.0, E};
    out.initial_probability = localization_probability(PvmHandle(lat->instant()), E, phi);

    const Instant t2(u2, E.origin() + u2 * dt);
    out.grown = grow_region_causally(E, t2);

    // Pull the state and the grown region back to the lattice instant and
    // measure the complement directly, which keeps tiny leakages accurate.
    const PoincareMap C = carrier(*lat, PvmHandle(t2));
    const PoincareMap Cinv = C.inverse();
    const LatticeState pulled = apply(Cinv, phi);
    out.norm_drift = drift(phi, pulled);
    const auto mask = cell_mask(*lat, apply(Cinv, out.grown));
    out.leakage = masked(mask, false, pulled).norm_squared() / pulled.norm_squared();
    return out;
}

double commutator_witness(const std::shared_ptr<const Lattice>& lat, const PvmHandle& Pa, const Region& Ea,
                          const PvmHandle& Pb, const Region& Eb, std::uint64_t seed, int starts, int iterations)
{
    double best = 0.0;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (int st = 0; st < starts; ++st) {
        Amplitudes psi(lat->size());
        for (auto& z : psi) z = Complex{normal(rng), normal(rng)};
        LatticeState v = LatticeState(lat, std::move(psi)).normalized();
        for (int it = 0; it < iterations; ++it) {
            // C is anti-self-adjoint, so C^dagger C v = -C C v.
            LatticeState w = commutator(Pa, Ea, Pb, Eb, v);
            best = std::max(best, w.norm());
            LatticeState next = Complex{-1.0, 0.0} * commutator(Pa, Ea, Pb, Eb, w);
            if (next.norm() == 0.0) break;
            v = next.normalized();
        }
        best = std::max(best, commutator(Pa, Ea, Pb, Eb, v).norm());
    }
    return best;
}

std::vector<LorentzMap> lattice_point_group(const Lattice& lat)
{
    std::vector<LorentzMap> out;
    std::array<int, 3> perm{0, 1, 2};
    do {
        for (int signs = 0; signs < 8; ++signs) {
            Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
            m(0, 0) = 1.0;
            for (int j = 0; j < 3; ++j) m(perm[j] + 1, j + 1) = (signs >> j) & 1 ? -1.0 : 1.0;
            out.push_back(in_lattice_basis(lat, m));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

LorentzMap lattice_boost(const Lattice& lat, double chi, int axis)
{
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(0, 0) = m(axis + 1, axis + 1) = std::cosh(chi);
    m(0, axis + 1) = m(axis + 1, 0) = std::sinh(chi);
    return in_lattice_basis(lat, m);
}

Box cell_box(const Lattice& lat, int lo, int hi)
{
    return cell_box(lat, {lo, lo, lo}, {hi, hi, hi});
}

Box cell_box(const Lattice& lat, std::array<int, 3> lo, std::array<int, 3> hi)
{
    const double a = lat.spacing();
    Box b;
    for (int ax = 0; ax < 3; ++ax) {
        b.lo[ax] = (lo[ax] - 0.5) * a;
        b.hi[ax] = (hi[ax] - 0.5) * a;
    }
    return b;
}

Region lattice_region(const Lattice& lat, std::vector<Box> boxes)
{
    return Region(lat.instant(), lat.lattice_origin(), lat.frame(), std::move(boxes));
}

} // namespace minkabs
