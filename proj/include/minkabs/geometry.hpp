#pragma once

#include "minkabs/measure.hpp"

#include <array>
#include <iosfwd>

namespace minkabs {

/// Relative tolerance used by the pure-geometry predicates.
inline constexpr double kGeometryTol = 1e-12;

/**
 * Element of the spacetime vector space (dimension: seconds).
 *
 * Components refer to a hidden orthonormal fiducial basis e0..e3 with
 * e0.e0 = -1 sec^2 and e0 future directed. Arithmetic is basis free; the
 * components are reachable only through the explicit `fiducial_components`
 * query, which exists for tests, serialization and the linear-algebra layer.
 */
class SpacetimeVector {
public:
    constexpr SpacetimeVector() = default;

    /// Vector with the given fiducial components, in seconds.
    static constexpr SpacetimeVector from_fiducial(double t, double x, double y, double z)
    {
        return SpacetimeVector(std::array<double, 4>{t, x, y, z});
    }
    static constexpr SpacetimeVector from_fiducial(const std::array<double, 4>& c)
    {
        return SpacetimeVector(c);
    }
    static constexpr SpacetimeVector zero() { return {}; }

    /// Fiducial components in seconds.
    constexpr const std::array<double, 4>& fiducial_components() const { return c_; }

    bool is_zero() const { return c_[0] == 0.0 && c_[1] == 0.0 && c_[2] == 0.0 && c_[3] == 0.0; }

    /// Euclidean norm of the hidden components; only used to scale tolerances.
    double component_scale() const;

    SpacetimeVector& operator+=(const SpacetimeVector& rhs);
    SpacetimeVector& operator-=(const SpacetimeVector& rhs);
    SpacetimeVector& operator*=(double k);

    friend SpacetimeVector operator+(SpacetimeVector a, const SpacetimeVector& b) { return a += b; }
    friend SpacetimeVector operator-(SpacetimeVector a, const SpacetimeVector& b) { return a -= b; }
    friend SpacetimeVector operator*(double k, SpacetimeVector a) { return a *= k; }
    friend SpacetimeVector operator*(SpacetimeVector a, double k) { return a *= k; }
    SpacetimeVector operator-() const { return -1.0 * *this; }

    friend bool operator==(const SpacetimeVector&, const SpacetimeVector&) = default;

private:
    constexpr explicit SpacetimeVector(const std::array<double, 4>& c) : c_(c) {}
    std::array<double, 4> c_{};
};

/// Point of the affine spacetime, stored as displacement from a hidden fiducial origin.
class SpacetimePoint {
public:
    constexpr SpacetimePoint() = default;

    static constexpr SpacetimePoint fiducial_origin() { return {}; }
    static SpacetimePoint from_fiducial(double t, double x, double y, double z);

    /// Displacement from the fiducial origin (a basis query).
    const SpacetimeVector& fiducial_displacement() const { return d_; }

    SpacetimePoint& operator+=(const SpacetimeVector& v) { d_ += v; return *this; }
    SpacetimePoint& operator-=(const SpacetimeVector& v) { d_ -= v; return *this; }

    friend SpacetimePoint operator+(SpacetimePoint p, const SpacetimeVector& v) { return p += v; }
    friend SpacetimePoint operator-(SpacetimePoint p, const SpacetimeVector& v) { return p -= v; }
    friend SpacetimeVector operator-(const SpacetimePoint& a, const SpacetimePoint& b) { return a.d_ - b.d_; }

    friend bool operator==(const SpacetimePoint&, const SpacetimePoint&) = default;

private:
    explicit SpacetimePoint(const SpacetimeVector& d) : d_(d) {}
    SpacetimeVector d_;
};

/**
 * Absolute velocity: a future-directed element of M/I with u.u = -1.
 * Construct through `normalize_velocity`, `Velocity::rest` or `Velocity::from_fiducial`,
 * which all enforce the invariants.
 */
class Velocity {
public:
    /// The fiducial future vector e0 (per second).
    static Velocity rest();

    /// Checks u.u = -1 within 1e-12 and future orientation.
    static Velocity from_fiducial(const std::array<double, 4>& c);

    /// Velocity with rapidity `chi` along the fiducial spatial direction `axis` (0, 1 or 2).
    static Velocity with_rapidity(double chi, int axis = 0);

    const std::array<double, 4>& fiducial_components() const { return c_; }

    /// u times a time span gives a spacetime vector.
    SpacetimeVector operator*(const MeasureScalar& span) const;
    friend SpacetimeVector operator*(const MeasureScalar& span, const Velocity& u) { return u * span; }

    /// The same components reinterpreted as a vector of length 1 sec.
    SpacetimeVector per_second() const;

    friend bool operator==(const Velocity&, const Velocity&) = default;

private:
    Velocity() = default;
    std::array<double, 4> c_{1.0, 0.0, 0.0, 0.0};
};

/// Componentwise equality of velocities within 1e-12; observers are identified this way.
bool same_observer(const Velocity& u, const Velocity& v, double rel_tol = kGeometryTol);

enum class CausalClass { timelike, lightlike, spacelike, zero };

const char* to_string(CausalClass c);

/// Lorentz product (signature -,+,+,+), valued in sec^2.
MeasureScalar lorentz_product(const SpacetimeVector& x, const SpacetimeVector& y);
/// u.x, valued in seconds.
MeasureScalar lorentz_product(const Velocity& u, const SpacetimeVector& x);
/// u.v, a pure number.
double lorentz_product(const Velocity& u, const Velocity& v);

/// Sign of x.x with relative tolerance 1e-12; the zero vector is reported as zero.
CausalClass causal_class(const SpacetimeVector& x);

/// Throws DomainError("not causal") for spacelike or zero vectors.
bool is_future_directed(const SpacetimeVector& x);

/// x / sqrt(-x.x); x must be timelike and future directed.
Velocity normalize_velocity(const SpacetimeVector& x);

/// tau_u(x) = -u.x (seconds).
MeasureScalar tau(const Velocity& u, const SpacetimeVector& x);
/// pi_u(x) = x - tau_u(x) u, an element of E_u.
SpacetimeVector pi(const Velocity& u, const SpacetimeVector& x);

/**
 * Deterministic orthonormal basis of E_u: Gram-Schmidt over pi_u(e1), pi_u(e2),
 * pi_u(e3), pi_u(e0) in that order, oriented so that (u, b1, b2, b3) has positive
 * determinant in the fiducial basis. For u = e0 this is exactly (e1, e2, e3).
 */
std::array<SpacetimeVector, 3> canonical_spatial_basis(const Velocity& u);

/// Completes a unit vector n in E_u to a positively oriented basis (b1, b2, n) of E_u.
std::array<SpacetimeVector, 3> oriented_basis_with_axis(const Velocity& u, const SpacetimeVector& n);

/// u-instant: the hyperplane {x | u.(x - anchor) = 0}.
class Instant {
public:
    Instant(const Velocity& observer, const SpacetimePoint& anchor) : u_(observer), anchor_(anchor) {}

    const Velocity& observer() const { return u_; }
    const SpacetimePoint& anchor() const { return anchor_; }

    bool contains(const SpacetimePoint& x, double rel_tol = kGeometryTol) const;

    /// Same hyperplane with a caller-chosen tolerance on observer and anchor.
    bool coincides(const Instant& other, double rel_tol) const;

    /// The instant dt later for the same observer.
    Instant shifted(const MeasureScalar& dt) const { return {u_, anchor_ + u_ * dt}; }

    /// Same observer and same hyperplane (within tolerance).
    friend bool operator==(const Instant& a, const Instant& b);

private:
    Velocity u_;
    SpacetimePoint anchor_;
};

/// t1 - t2 = tau_u(x1 - x2); observers must match.
MeasureScalar instant_subtract(const Instant& t1, const Instant& t2);

/// Space point of an inertial observer: the world line {anchor + s u}.
class SpacePoint {
public:
    SpacePoint(const Velocity& observer, const SpacetimePoint& anchor) : u_(observer), anchor_(anchor) {}

    const Velocity& observer() const { return u_; }
    const SpacetimePoint& anchor() const { return anchor_; }

    friend bool operator==(const SpacePoint& a, const SpacePoint& b);

private:
    Velocity u_;
    SpacetimePoint anchor_;
};

/// q1 - q2 = pi_u(x1 - x2); observers must match.
SpacetimeVector space_subtract(const SpacePoint& q1, const SpacePoint& q2);

std::ostream& operator<<(std::ostream& os, const SpacetimeVector& x);
std::ostream& operator<<(std::ostream& os, const Velocity& u);

} // namespace minkabs
