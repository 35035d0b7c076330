#include "minkabs/groups.hpp"

#include "minkabs/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace minkabs {

namespace {

const Eigen::Matrix4d& eta()
{
    static const Eigen::Matrix4d m = Eigen::Vector4d(-1.0, 1.0, 1.0, 1.0).asDiagonal();
    return m;
}

Eigen::Vector4d col(const SpacetimeVector& x)
{
    const auto& c = x.fiducial_components();
    return {c[0], c[1], c[2], c[3]};
}

Eigen::Vector4d col(const Velocity& u)
{
    const auto& c = u.fiducial_components();
    return {c[0], c[1], c[2], c[3]};
}

SpacetimeVector vec(const Eigen::Vector4d& v) { return SpacetimeVector::from_fiducial(v[0], v[1], v[2], v[3]); }

double rel_dist(const SpacetimeVector& a, const SpacetimeVector& b)
{
    return (a - b).component_scale() / std::max(1.0, std::max(a.component_scale(), b.component_scale()));
}

} // namespace

SpacetimeVector LorentzMap::operator()(const SpacetimeVector& x) const { return vec(m_ * col(x)); }

Velocity LorentzMap::operator()(const Velocity& u) const
{
    const SpacetimeVector image = vec(m_ * col(u));
    if (causal_class(image) != CausalClass::timelike || !is_future_directed(image)) {
        throw DomainError("image of a velocity is not future directed (map not orthochronous)");
    }
    return normalize_velocity(image);
}

LorentzMap LorentzMap::inverse() const { return LorentzMap(eta() * m_.transpose() * eta()); }

double LorentzMap::distance(const LorentzMap& other) const { return (m_ - other.m_).cwiseAbs().maxCoeff(); }

PoincareMap PoincareMap::about(const SpacetimePoint& center, const LorentzMap& linear)
{
    const SpacetimeVector c = center.fiducial_displacement();
    return {linear, c - linear(c)};
}

SpacetimePoint PoincareMap::operator()(const SpacetimePoint& x) const
{
    return SpacetimePoint::fiducial_origin() + linear_(x.fiducial_displacement()) + translation_;
}

PoincareMap operator*(const PoincareMap& a, const PoincareMap& b)
{
    return {a.linear_ * b.linear_, a.linear_(b.translation_) + a.translation_};
}

PoincareMap PoincareMap::inverse() const
{
    const LorentzMap inv = linear_.inverse();
    return {inv, -inv(translation_)};
}

SpacetimeVector PoincareMap::translation_about(const SpacetimePoint& center) const
{
    return (*this)(center) - center;
}

double PoincareMap::distance(const PoincareMap& other) const
{
    const auto d = (translation_ - other.translation_).fiducial_components();
    double t = 0.0;
    for (double v : d) t = std::max(t, std::fabs(v));
    return std::max(linear_.distance(other.linear_), t);
}

LorentzMap make_rotation(const Velocity& u, const SpacetimeVector& axis, double angle)
{
    if (axis.is_zero()) {
        throw DomainError("rotation axis must be nonzero");
    }
    const double norm2 = lorentz_product(axis, axis).value();
    if (std::fabs(lorentz_product(u, axis).value()) > 1e-10 * axis.component_scale() || norm2 <= 0.0) {
        throw DomainError("rotation axis must be orthogonal to the observer");
    }
    const SpacetimeVector n = (1.0 / std::sqrt(norm2)) * axis;
    const auto b = oriented_basis_with_axis(u, n);

    // Frame F = (u, b1, b2, n); L = F R F^{-1} with F^{-1} = eta F^T eta.
    Eigen::Matrix4d F;
    F.col(0) = col(u);
    for (int j = 0; j < 3; ++j) F.col(j + 1) = col(b[j]);
    Eigen::Matrix4d R = Eigen::Matrix4d::Identity();
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    R(1, 1) = c;
    R(1, 2) = -s;
    R(2, 1) = s;
    R(2, 2) = c;
    return LorentzMap(F * R * eta() * F.transpose() * eta());
}

LorentzMap make_boost(const Velocity& u, const Velocity& u2)
{
    // B x = x + ((w.x)/(1+g)) w - 2 (u.x) u2,  w = u + u2,  g = -u.u2.
    const double g = -lorentz_product(u, u2);
    const Eigen::Vector4d a = col(u);
    const Eigen::Vector4d b = col(u2);
    const Eigen::Vector4d w = a + b;
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m += (w * (eta() * w).transpose()) / (1.0 + g);
    m -= 2.0 * b * (eta() * a).transpose();
    return LorentzMap(m);
}

LorentzMap time_inversion(const Velocity& u)
{
    // x + 2 (u.x) u
    const Eigen::Vector4d a = col(u);
    return LorentzMap(Eigen::Matrix4d::Identity() + 2.0 * a * (eta() * a).transpose());
}

LorentzMap space_inversion(const Velocity& u)
{
    // -x - 2 (u.x) u
    const Eigen::Vector4d a = col(u);
    return LorentzMap(-Eigen::Matrix4d::Identity() - 2.0 * a * (eta() * a).transpose());
}

bool is_lorentz(const LorentzMap& L)
{
    const Eigen::Matrix4d& m = L.fiducial_matrix();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m.transpose() * eta() * m - eta()).cwiseAbs().maxCoeff() <= kMembershipTol * scale * scale;
}

bool is_orthochronous(const LorentzMap& L)
{
    // (L e0).e0 < 0
    return L.fiducial_matrix()(0, 0) > 0.0;
}

bool is_proper(const LorentzMap& L) { return L.fiducial_matrix().determinant() > 0.0; }

bool in_O_u(const LorentzMap& L, const Velocity& u)
{
    return rel_dist(L(u.per_second()), u.per_second()) <= kMembershipTol;
}

bool fixes_point(const PoincareMap& P, const SpacetimePoint& o)
{
    return rel_dist(P(o).fiducial_displacement(), o.fiducial_displacement()) <= kMembershipTol;
}

bool stabilizes_instant(const PoincareMap& P, const Instant& t)
{
    if (!t.contains(P(t.anchor()), kMembershipTol)) return false;
    const Velocity& u = t.observer();
    for (const auto& e : canonical_spatial_basis(u)) {
        const SpacetimeVector image = P.linear()(e);
        if (std::fabs(lorentz_product(u, image).value()) > kMembershipTol * std::max(1.0, image.component_scale())) {
            return false;
        }
    }
    return true;
}

double rapidity_between(const Velocity& u, const Velocity& v)
{
    return std::acosh(std::max(1.0, -lorentz_product(u, v)));
}

Instant apply(const PoincareMap& P, const Instant& t)
{
    SpacetimeVector normal = P.linear()(t.observer().per_second());
    if (normal.fiducial_components()[0] < 0.0) normal = -normal;
    return {normalize_velocity(normal), P(t.anchor())};
}

Velocity apply(const PoincareMap& P, const Velocity& u) { return P.linear()(u); }

} // namespace minkabs
