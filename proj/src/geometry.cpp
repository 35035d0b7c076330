#include "minkabs/geometry.hpp"

#include "minkabs/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace minkabs {

namespace {

double dot(const std::array<double, 4>& a, const std::array<double, 4>& b)
{
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double euclid(const std::array<double, 4>& a)
{
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
}

void require_same_observer(const Velocity& a, const Velocity& b, const char* what)
{
    if (!same_observer(a, b)) {
        throw DomainError(std::string(what) + ": mismatched observers");
    }
}

double orientation(const Velocity& u, const std::array<SpacetimeVector, 3>& b)
{
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i) {
        m(i, 0) = u.fiducial_components()[i];
        for (int j = 0; j < 3; ++j) {
            m(i, j + 1) = b[j].fiducial_components()[i];
        }
    }
    return m.determinant();
}

} // namespace

double SpacetimeVector::component_scale() const { return euclid(c_); }

SpacetimeVector& SpacetimeVector::operator+=(const SpacetimeVector& rhs)
{
    for (int i = 0; i < 4; ++i) c_[i] += rhs.c_[i];
    return *this;
}

SpacetimeVector& SpacetimeVector::operator-=(const SpacetimeVector& rhs)
{
    for (int i = 0; i < 4; ++i) c_[i] -= rhs.c_[i];
    return *this;
}

SpacetimeVector& SpacetimeVector::operator*=(double k)
{
    for (auto& c : c_) c *= k;
    return *this;
}

SpacetimePoint SpacetimePoint::from_fiducial(double t, double x, double y, double z)
{
    return SpacetimePoint(SpacetimeVector::from_fiducial(t, x, y, z));
}

Velocity Velocity::rest() { return Velocity(); }

Velocity Velocity::from_fiducial(const std::array<double, 4>& c)
{
    const double n = dot(c, c);
    if (std::fabs(n + 1.0) > kGeometryTol * std::max(1.0, euclid(c) * euclid(c))) {
        throw DomainError("velocity must satisfy u.u = -1");
    }
    if (c[0] <= 0.0) {
        throw DomainError("velocity must be future directed");
    }
    Velocity u;
    u.c_ = c;
    return u;
}

Velocity Velocity::with_rapidity(double chi, int axis)
{
    if (axis < 0 || axis > 2) {
        throw DomainError("rapidity axis must be 0, 1 or 2");
    }
    std::array<double, 4> c{std::cosh(chi), 0.0, 0.0, 0.0};
    c[axis + 1] = std::sinh(chi);
    return from_fiducial(c);
}

SpacetimeVector Velocity::operator*(const MeasureScalar& span) const
{
    const double s = span.in(1);
    return SpacetimeVector::from_fiducial(s * c_[0], s * c_[1], s * c_[2], s * c_[3]);
}

SpacetimeVector Velocity::per_second() const { return SpacetimeVector::from_fiducial(c_); }

bool same_observer(const Velocity& u, const Velocity& v, double rel_tol)
{
    const auto& a = u.fiducial_components();
    const auto& b = v.fiducial_components();
    double diff = 0.0;
    for (int i = 0; i < 4; ++i) diff = std::max(diff, std::fabs(a[i] - b[i]));
    return diff <= rel_tol * std::max(1.0, a[0]);
}

const char* to_string(CausalClass c)
{
    switch (c) {
    case CausalClass::timelike: return "timelike";
    case CausalClass::lightlike: return "lightlike";
    case CausalClass::spacelike: return "spacelike";
    case CausalClass::zero: return "zero";
    }
    return "?";
}

MeasureScalar lorentz_product(const SpacetimeVector& x, const SpacetimeVector& y)
{
    return seconds_squared(dot(x.fiducial_components(), y.fiducial_components()));
}

MeasureScalar lorentz_product(const Velocity& u, const SpacetimeVector& x)
{
    return seconds(dot(u.fiducial_components(), x.fiducial_components()));
}

double lorentz_product(const Velocity& u, const Velocity& v)
{
    return dot(u.fiducial_components(), v.fiducial_components());
}

CausalClass causal_class(const SpacetimeVector& x)
{
    if (x.is_zero()) return CausalClass::zero;
    const double s = x.component_scale();
    const double q = dot(x.fiducial_components(), x.fiducial_components());
    if (std::fabs(q) <= kGeometryTol * s * s) return CausalClass::lightlike;
    return q < 0.0 ? CausalClass::timelike : CausalClass::spacelike;
}

bool is_future_directed(const SpacetimeVector& x)
{
    const auto cls = causal_class(x);
    if (cls == CausalClass::spacelike || cls == CausalClass::zero) {
        throw DomainError("not causal");
    }
    // x.f < 0 with f = e0 reduces to a positive time component.
    return x.fiducial_components()[0] > 0.0;
}

Velocity normalize_velocity(const SpacetimeVector& x)
{
    if (causal_class(x) != CausalClass::timelike) {
        throw DomainError("velocity requires a timelike vector");
    }
    if (!is_future_directed(x)) {
        throw DomainError("velocity requires a future-directed vector");
    }
    const double n = std::sqrt(-dot(x.fiducial_components(), x.fiducial_components()));
    auto c = x.fiducial_components();
    for (auto& v : c) v /= n;
    return Velocity::from_fiducial(c);
}

MeasureScalar tau(const Velocity& u, const SpacetimeVector& x) { return -lorentz_product(u, x); }

SpacetimeVector pi(const Velocity& u, const SpacetimeVector& x) { return x - u * tau(u, x); }

std::array<SpacetimeVector, 3> canonical_spatial_basis(const Velocity& u)
{
    static constexpr int kOrder[4] = {1, 2, 3, 0};
    std::array<SpacetimeVector, 3> out;
    int found = 0;
    for (int k : kOrder) {
        if (found == 3) break;
        std::array<double, 4> e{};
        e[k] = 1.0;
        SpacetimeVector v = pi(u, SpacetimeVector::from_fiducial(e));
        for (int j = 0; j < found; ++j) {
            v -= lorentz_product(out[j], v).value() * out[j];
        }
        const double n2 = lorentz_product(v, v).value();
        if (n2 < 1e-6) continue;
        out[found++] = (1.0 / std::sqrt(n2)) * v;
    }
    if (orientation(u, out) < 0.0) out[2] = -out[2];
    return out;
}

std::array<SpacetimeVector, 3> oriented_basis_with_axis(const Velocity& u, const SpacetimeVector& n)
{
    std::array<SpacetimeVector, 3> out;
    out[2] = n;
    int found = 0;
    for (const auto& cand : canonical_spatial_basis(u)) {
        if (found == 2) break;
        SpacetimeVector v = cand - lorentz_product(n, cand).value() * n;
        for (int j = 0; j < found; ++j) {
            v -= lorentz_product(out[j], v).value() * out[j];
        }
        const double n2 = lorentz_product(v, v).value();
        if (n2 < 1e-6) continue;
        out[found++] = (1.0 / std::sqrt(n2)) * v;
    }
    if (orientation(u, out) < 0.0) out[1] = -out[1];
    return out;
}

bool Instant::contains(const SpacetimePoint& x, double rel_tol) const
{
    const SpacetimeVector d = x - anchor_;
    return std::fabs(lorentz_product(u_, d).value()) <= rel_tol * std::max(1.0, d.component_scale());
}

bool Instant::coincides(const Instant& other, double rel_tol) const
{
    return same_observer(u_, other.u_, rel_tol) && contains(other.anchor_, rel_tol);
}

bool operator==(const Instant& a, const Instant& b)
{
    return same_observer(a.u_, b.u_) && a.contains(b.anchor_);
}

MeasureScalar instant_subtract(const Instant& t1, const Instant& t2)
{
    require_same_observer(t1.observer(), t2.observer(), "instant_subtract");
    return tau(t1.observer(), t1.anchor() - t2.anchor());
}

bool operator==(const SpacePoint& a, const SpacePoint& b)
{
    if (!same_observer(a.u_, b.u_)) return false;
    const SpacetimeVector d = pi(a.u_, a.anchor_ - b.anchor_);
    return d.component_scale() <=
           kGeometryTol * std::max(1.0, (a.anchor_ - b.anchor_).component_scale());
}

SpacetimeVector space_subtract(const SpacePoint& q1, const SpacePoint& q2)
{
    require_same_observer(q1.observer(), q2.observer(), "space_subtract");
    return pi(q1.observer(), q1.anchor() - q2.anchor());
}

std::ostream& operator<<(std::ostream& os, const SpacetimeVector& x)
{
    const auto& c = x.fiducial_components();
    return os << '(' << c[0] << ", " << c[1] << ", " << c[2] << ", " << c[3] << ") sec";
}

std::ostream& operator<<(std::ostream& os, const Velocity& u)
{
    const auto& c = u.fiducial_components();
    return os << '(' << c[0] << ", " << c[1] << ", " << c[2] << ", " << c[3] << ')';
}

} // namespace minkabs
