#pragma once

#include "minkabs/geometry.hpp"

#include <Eigen/Core>

namespace minkabs {

/// Relative tolerance of the group-membership predicates.
inline constexpr double kMembershipTol = 1e-9;

/**
 * Linear map of the spacetime vector space preserving the Lorentz product.
 *
 * The 4x4 matrix acts on hidden fiducial components; `fiducial_matrix` is a
 * basis query for tests and the lattice layer. Constructing from an arbitrary
 * matrix does not check membership; use `is_lorentz` for that.
 */
class LorentzMap {
public:
    LorentzMap() : m_(Eigen::Matrix4d::Identity()) {}
    explicit LorentzMap(const Eigen::Matrix4d& m) : m_(m) {}

    static LorentzMap identity() { return {}; }

    const Eigen::Matrix4d& fiducial_matrix() const { return m_; }

    SpacetimeVector operator()(const SpacetimeVector& x) const;
    /// Image of a velocity; throws DomainError if the image is not future directed.
    Velocity operator()(const Velocity& u) const;

    /// Composition: (a * b)(x) = a(b(x)).
    friend LorentzMap operator*(const LorentzMap& a, const LorentzMap& b) { return LorentzMap(a.m_ * b.m_); }

    /// Inverse through the metric, eta M^T eta, exact for Lorentz maps.
    LorentzMap inverse() const;

    /// Max-entry distance to another map.
    double distance(const LorentzMap& other) const;

private:
    Eigen::Matrix4d m_;
};

/**
 * Affine map of spacetime over a LorentzMap:
 * L(x) = o_f + linear(x - o_f) + translation, with o_f the fiducial origin.
 */
class PoincareMap {
public:
    PoincareMap() = default;
    PoincareMap(const LorentzMap& linear, const SpacetimeVector& translation)
        : linear_(linear), translation_(translation)
    {
    }

    static PoincareMap identity() { return {}; }
    static PoincareMap translation(const SpacetimeVector& a) { return {LorentzMap(), a}; }
    /// The map x -> center + linear(x - center).
    static PoincareMap about(const SpacetimePoint& center, const LorentzMap& linear);

    const LorentzMap& linear() const { return linear_; }
    const SpacetimeVector& translation() const { return translation_; }

    SpacetimePoint operator()(const SpacetimePoint& x) const;

    friend PoincareMap operator*(const PoincareMap& a, const PoincareMap& b);
    PoincareMap inverse() const;

    /// Translation part relative to `center`: L(x) = center + linear(x - center) + result.
    SpacetimeVector translation_about(const SpacetimePoint& center) const;

    double distance(const PoincareMap& other) const;

private:
    LorentzMap linear_;
    SpacetimeVector translation_;
};

/// Rotation by `angle` about `axis` (in E_u) that fixes u; positive angles follow
/// the orientation of (u, b1, b2, axis).
LorentzMap make_rotation(const Velocity& u, const SpacetimeVector& axis, double angle);

/// Canonical boost taking u to u2, the identity on E_u intersected with E_u2.
LorentzMap make_boost(const Velocity& u, const Velocity& u2);

/// x -> -tau_u(x) u + pi_u(x).
LorentzMap time_inversion(const Velocity& u);
/// x -> tau_u(x) u - pi_u(x).
LorentzMap space_inversion(const Velocity& u);

bool is_lorentz(const LorentzMap& L);
bool is_orthochronous(const LorentzMap& L);
bool is_proper(const LorentzMap& L);
/// L u = u.
bool in_O_u(const LorentzMap& L, const Velocity& u);
bool fixes_point(const PoincareMap& P, const SpacetimePoint& o);
/// P maps the hyperplane t onto itself.
bool stabilizes_instant(const PoincareMap& P, const Instant& t);

/// Rapidity between two observers: acosh(-u.v).
double rapidity_between(const Velocity& u, const Velocity& v);

/// L[t]: the image hyperplane, labelled by the future-directed unit normal.
Instant apply(const PoincareMap& P, const Instant& t);
/// Linear part applied to a velocity; requires an orthochronous map.
Velocity apply(const PoincareMap& P, const Velocity& u);
inline SpacetimePoint apply(const PoincareMap& P, const SpacetimePoint& x) { return P(x); }

} // namespace minkabs
