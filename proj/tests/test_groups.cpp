#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minkabs/error.hpp"
#include "minkabs/region.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

using namespace minkabs;

namespace {

using V = SpacetimeVector;
constexpr double kPi = std::numbers::pi;

const SpacetimePoint O = SpacetimePoint::fiducial_origin();

Velocity boosted(double chi, std::array<double, 3> n)
{
    const double s = std::sinh(chi);
    return Velocity::from_fiducial({std::cosh(chi), s * n[0], s * n[1], s * n[2]});
}

V e(int i)
{
    std::array<double, 4> c{};
    c[i] = 1.0;
    return V::from_fiducial(c);
}

double max_diff(const V& a, const V& b) { return (a - b).component_scale(); }

// Textbook pure boost with velocity beta n, from the rest frame.
Eigen::Matrix4d boost_matrix(double chi, std::array<double, 3> n)
{
    const double g = std::cosh(chi), gb = std::sinh(chi);
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(0, 0) = g;
    for (int i = 0; i < 3; ++i) {
        m(0, i + 1) = m(i + 1, 0) = gb * n[i];
        for (int j = 0; j < 3; ++j) m(i + 1, j + 1) += (g - 1.0) * n[i] * n[j];
    }
    return m;
}

struct Random {
    std::mt19937_64 rng{2024};
    std::uniform_real_distribution<double> d{-1.0, 1.0};

    std::array<double, 3> unit()
    {
        for (;;) {
            std::array<double, 3> n{d(rng), d(rng), d(rng)};
            const double l = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
            if (l > 0.1 && l < 1.0) return {n[0] / l, n[1] / l, n[2] / l};
        }
    }
    Velocity velocity(double max_chi) { return boosted(max_chi * 0.5 * (d(rng) + 1.0), unit()); }
    V vector(double s) { return V::from_fiducial(s * d(rng), s * d(rng), s * d(rng), s * d(rng)); }
    LorentzMap map()
    {
        const Velocity u = velocity(1.0);
        const auto n = unit();
        const V axis = pi(u, V::from_fiducial(0, n[0], n[1], n[2]));
        return make_boost(u, velocity(1.2)) * make_rotation(u, axis, kPi * d(rng));
    }
};

} // namespace

TEST_CASE("rotation about e3")
{
    const Velocity rest = Velocity::rest();
    const LorentzMap R = make_rotation(rest, e(3), 0.5 * kPi);
    CHECK(max_diff(R(e(1)), e(2)) <= 1e-15);
    CHECK(max_diff(R(e(2)), -1.0 * e(1)) <= 1e-15);
    CHECK(max_diff(R(e(3)), e(3)) <= 1e-15);
    CHECK(max_diff(R(e(0)), e(0)) <= 1e-15);
    CHECK(make_rotation(rest, e(3), 0.0).distance(LorentzMap::identity()) <= 1e-15);
    CHECK(is_lorentz(R));
    CHECK(is_proper(R));
    CHECK(in_O_u(R, rest));

    CHECK_THROWS_AS(make_rotation(rest, V::zero(), 1.0), DomainError);
    CHECK_THROWS_AS(make_rotation(rest, e(0) + e(1), 1.0), DomainError);
}

TEST_CASE("rotations fix their observer")
{
    Random r;
    for (int i = 0; i < 200; ++i) {
        const Velocity u = r.velocity(2.0);
        const auto n = r.unit();
        const LorentzMap R = make_rotation(u, pi(u, V::from_fiducial(0, n[0], n[1], n[2])), kPi * r.d(r.rng));
        CHECK(max_diff(R(u * seconds(1.0)), u * seconds(1.0)) <= 1e-12 * std::cosh(2.0) * std::cosh(2.0) * 10);
        CHECK(in_O_u(R, u));
    }
}

TEST_CASE("canonical boost matches the textbook matrix")
{
    Random r;
    for (int i = 0; i < 50; ++i) {
        const double chi = 2.0 * 0.5 * (r.d(r.rng) + 1.0);
        const auto n = r.unit();
        const LorentzMap B = make_boost(Velocity::rest(), boosted(chi, n));
        CHECK((B.fiducial_matrix() - boost_matrix(chi, n)).cwiseAbs().maxCoeff() <= 1e-12 * std::cosh(chi));
    }
    CHECK(make_boost(Velocity::rest(), Velocity::rest()).distance(LorentzMap::identity()) <= 1e-15);
}

TEST_CASE("canonical boost properties")
{
    Random r;
    for (int i = 0; i < 200; ++i) {
        const Velocity u = r.velocity(1.5), u2 = r.velocity(1.5);
        const LorentzMap B = make_boost(u, u2);
        CHECK(is_orthochronous(B));
        CHECK(is_proper(B));
        CHECK(is_lorentz(B));
        CHECK(max_diff(B(u * seconds(1.0)), u2 * seconds(1.0)) <= 1e-10);
        CHECK((make_boost(u2, u) * B).distance(LorentzMap::identity()) <= 1e-10);
        // Identity on E_u intersected with E_u2.
        const V a = pi(u, r.vector(1.0)), b = pi(u, u2 * seconds(1.0));
        const double bb = lorentz_product(b, b).value();
        const V w = bb > 1e-6 ? a - (lorentz_product(a, b).value() / bb) * b : a;
        CHECK(max_diff(B(w), w) <= 1e-12 * std::cosh(3.0) * std::cosh(3.0));
    }
    // Vectors orthogonal to both observers are left alone.
    const Velocity u = boosted(0.7, {1, 0, 0});
    CHECK(max_diff(make_boost(Velocity::rest(), u)(e(2)), e(2)) <= 1e-15);
    CHECK(rapidity_between(Velocity::rest(), u) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("inversions")
{
    const Velocity rest = Velocity::rest();
    const LorentzMap T = time_inversion(rest), P = space_inversion(rest);
    CHECK(T(V::from_fiducial(1, 2, 3, 4)).fiducial_components() == std::array<double, 4>{-1, 2, 3, 4});
    CHECK(P(V::from_fiducial(1, 2, 3, 4)).fiducial_components() == std::array<double, 4>{1, -2, -3, -4});
    CHECK_FALSE(is_orthochronous(T));
    CHECK(is_orthochronous(P));
    CHECK_FALSE(is_proper(P));

    const Velocity u = boosted(0.9, {0.0, 0.6, 0.8});
    CHECK((time_inversion(u) * time_inversion(u)).distance(LorentzMap::identity()) <= 1e-12);
    CHECK((space_inversion(u) * space_inversion(u)).distance(LorentzMap::identity()) <= 1e-12);
    const Eigen::Matrix4d minus = -Eigen::Matrix4d::Identity();
    CHECK((space_inversion(u) * time_inversion(u)).distance(LorentzMap(minus)) <= 1e-12);
    CHECK_THROWS_AS(time_inversion(u)(u), DomainError);
}

TEST_CASE("product preservation over composed maps")
{
    Random r;
    for (int i = 0; i < 1000; ++i) {
        const LorentzMap L = r.map() * r.map() * r.map();
        const V x = r.vector(5.0), y = r.vector(5.0);
        const double xx = std::fabs(lorentz_product(x, x).value()), yy = std::fabs(lorentz_product(y, y).value());
        const double err = std::fabs((lorentz_product(L(x), L(y)) - lorentz_product(x, y)).value());
        // Roundoff grows with the squared component size of the images.
        const double growth = L(x).component_scale() * L(y).component_scale() / (1.0 + x.component_scale() * y.component_scale());
        CHECK(err <= 1e-9 * std::max({1.0, xx, yy}) * std::max(1.0, growth));
    }
}

TEST_CASE("poincare group laws")
{
    Random r;
    for (int i = 0; i < 200; ++i) {
        const PoincareMap A(r.map(), r.vector(3.0)), B(r.map(), r.vector(3.0)), C(r.map(), r.vector(3.0));
        const SpacetimePoint x = O + r.vector(2.0), y = O + r.vector(2.0);
        const double s = 1.0 + (A * B * C).linear().fiducial_matrix().norm() * 10.0;
        CHECK(((A * B) * C).distance(A * (B * C)) <= 1e-12 * s * s);
        CHECK((A * A.inverse()).distance(PoincareMap::identity()) <= 1e-11 * s * s);
        CHECK(max_diff((A * B)(x) - O, A(B(x)) - O) <= 1e-11 * s);
        // Affine: differences map through the linear part.
        CHECK(max_diff(A(x) - A(y), A.linear()(x - y)) <= 1e-12 * s);
        const SpacetimePoint c = O + r.vector(1.0);
        CHECK(fixes_point(PoincareMap::about(c, A.linear()), c));
    }
}

TEST_CASE("membership predicates")
{
    const Velocity rest = Velocity::rest();
    const Instant t(rest, O);
    const PoincareMap id = PoincareMap::identity();
    CHECK(is_lorentz(id.linear()));
    CHECK(is_orthochronous(id.linear()));
    CHECK(is_proper(id.linear()));
    CHECK(in_O_u(id.linear(), rest));
    CHECK(fixes_point(id, O));
    CHECK(stabilizes_instant(id, t));

    CHECK_FALSE(in_O_u(make_boost(rest, boosted(0.5, {1, 0, 0})), rest));
    CHECK_FALSE(is_lorentz(LorentzMap(2.0 * Eigen::Matrix4d::Identity())));

    const Velocity u = boosted(0.3, {0, 0, 1});
    const Instant tu(u, O + u * seconds(1.0));
    const PoincareMap S =
        PoincareMap::translation(pi(u, e(1) + e(2))) * PoincareMap::about(tu.anchor(), make_rotation(u, pi(u, e(1)), 1.1));
    CHECK(stabilizes_instant(S, tu));
    CHECK_FALSE(stabilizes_instant(PoincareMap::translation(u * seconds(0.1)), tu));
    CHECK_FALSE(stabilizes_instant(PoincareMap::about(tu.anchor(), make_boost(u, rest)), tu));
    CHECK_FALSE(fixes_point(PoincareMap::translation(e(1)), O));
}

TEST_CASE("apply to points, instants and velocities")
{
    Random r;
    const Velocity rest = Velocity::rest();
    const Instant t(rest, O);
    const PoincareMap shift = PoincareMap::translation(V::from_fiducial(2, 1, 0, 0));
    CHECK(apply(shift, t).observer() == rest);
    CHECK(instant_subtract(apply(shift, t), t) == seconds(2.0));
    CHECK(apply(PoincareMap::identity(), t) == t);

    for (int i = 0; i < 100; ++i) {
        const PoincareMap A(r.map(), r.vector(1.0)), B(r.map(), r.vector(1.0));
        const Velocity u = r.velocity(1.0);
        const Instant s(u, O + r.vector(1.0));
        CHECK(apply(A * B, s).coincides(apply(A, apply(B, s)), 1e-10));
        CHECK(same_observer(apply(A * B, u), apply(A, apply(B, u)), 1e-10));
    }
}

TEST_CASE("box canonicalization")
{
    const auto boxes = canonicalize_boxes({cube(0, 2), cube(1, 3), Box{{5, 5, 5}, {5, 6, 6}}});
    double vol = 0.0;
    for (const auto& b : boxes) vol += b.volume();
    // |A u B| = 8 + 8 - 1; the degenerate box is dropped.
    CHECK(vol == doctest::Approx(15.0).epsilon(1e-14));
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        for (std::size_t j = i + 1; j < boxes.size(); ++j) {
            bool overlap = true;
            for (int ax = 0; ax < 3; ++ax) {
                overlap = overlap && boxes[i].lo[ax] < boxes[j].hi[ax] && boxes[j].lo[ax] < boxes[i].hi[ax];
            }
            CHECK_FALSE(overlap);
        }
    }
    CHECK(std::is_sorted(boxes.begin(), boxes.end()));
    CHECK(canonicalize_boxes({cube(0, 1), Box{{1, 0, 0}, {2, 1, 1}}}).size() == 1);
    CHECK(canonicalize_boxes(boxes) == boxes);

    // Membership agrees with the raw union on a sample grid.
    const std::vector<Box> raw{cube(0, 2), Box{{1, -1, 0.5}, {4, 1, 1.5}}, cube(-1, 0.5)};
    const auto canon = canonicalize_boxes(raw);
    for (double x = -1.25; x < 4.5; x += 0.25) {
        for (double y = -1.25; y < 2.5; y += 0.25) {
            for (double z = -1.25; z < 2.5; z += 0.25) {
                const std::array<double, 3> p{x, y, z};
                bool in_raw = false, in_canon = false;
                for (const auto& b : raw) in_raw = in_raw || b.contains(p);
                for (const auto& b : canon) in_canon = in_canon || b.contains(p);
                CHECK(in_raw == in_canon);
            }
        }
    }
}

TEST_CASE("regions are half-open and transform with their instant")
{
    const Velocity rest = Velocity::rest();
    const Instant t(rest, O);
    const Region E(t, {cube(0, 1)});
    CHECK(E.contains(O));
    CHECK_FALSE(E.contains(O + e(1)));
    CHECK(E.volume() == 1.0);
    CHECK(Region::empty(t).is_empty());
    CHECK_THROWS_AS(Region(t, O + e(0), canonical_spatial_basis(rest), {}), DomainError);

    // Quarter turn about the box corner: the corners map as rotated points.
    const PoincareMap R = PoincareMap::about(O, make_rotation(rest, e(3), 0.5 * kPi));
    const Region RE = apply(R, E);
    CHECK(RE.volume() == doctest::Approx(1.0));
    CHECK(RE.instant() == t);
    for (const auto& c : {std::array<double, 3>{0.5, 0.5, 0.5}, std::array<double, 3>{0.9, 0.1, 0.2}}) {
        const SpacetimePoint x = E.point_at(c);
        CHECK(RE.contains(R(x)));
        CHECK(max_diff(RE.point_at(c) - O, R(x) - O) <= 1e-15);
    }
    // The image occupies x in [-1, 0), y in [0, 1).
    CHECK(RE.contains(O + V::from_fiducial(0, -0.5, 0.5, 0.5)));
    CHECK_FALSE(RE.contains(O + V::from_fiducial(0, 0.5, 0.5, 0.5)));
}

TEST_CASE("causal growth for the same observer")
{
    const Velocity rest = Velocity::rest();
    const Instant t(rest, O);
    const Region E(t, {cube(0, 1)});

    const Region same = grow_region_causally(E, t);
    CHECK(same.boxes() == E.boxes());

    const Region G = grow_region_causally(E, t.shifted(seconds(1.0)));
    REQUIRE(G.boxes().size() == 1);
    for (int ax = 0; ax < 3; ++ax) {
        CHECK(G.boxes()[0].lo[ax] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(G.boxes()[0].hi[ax] == doctest::Approx(2.0).epsilon(1e-14));
    }
    CHECK(instant_subtract(G.instant(), t) == seconds(1.0));
    CHECK_THROWS_AS(grow_region_causally(E, t.shifted(seconds(-0.1))), DomainError);
}

TEST_CASE("causal growth toward a moving instant covers every cone ray")
{
    Random r;
    const Velocity rest = Velocity::rest();
    const Instant t(rest, O);
    const Region E(t, {Box{{-0.5, 0.0, -1.0}, {0.5, 2.0, 0.0}}, cube(1.0, 1.5)});
    const Velocity u2 = boosted(0.6, {0.8, 0.6, 0.0});
    const Instant t2(u2, O + rest * seconds(4.0));
    const Region G = grow_region_causally(E, t2);
    CHECK(G.instant() == t2);

    const auto basis = canonical_spatial_basis(u2);
    std::array<double, 3> lo{1e9, 1e9, 1e9}, hi{-1e9, -1e9, -1e9};
    for (int i = 0; i < 20000; ++i) {
        const Box& b = E.boxes()[i < 16 * 7 ? (i / 7) / 8 : i % 2];
        std::array<double, 3> c;
        for (int ax = 0; ax < 3; ++ax) {
            const double f = i < 16 * 7 ? ((((i / 7) % 8) >> ax) & 1) : 0.5 * (r.d(r.rng) + 1.0);
            c[ax] = b.lo[ax] + f * (b.hi[ax] - b.lo[ax]) * (1.0 - 1e-12);
        }
        const SpacetimePoint x = E.point_at(c);
        // The cone of x meets t2 in the sphere of radius d about x + d u2.
        const double d = tau(u2, t2.anchor() - x).value();
        REQUIRE(d > 0.0);
        // Corners also take the six extremal rays along the frame axes.
        std::array<double, 3> n = r.unit();
        if (i < 16 * 7 && i % 7 != 6) {
            n = {0.0, 0.0, 0.0};
            n[(i % 7) / 2] = (i % 7) % 2 ? 1.0 : -1.0;
        }
        const V dir = n[0] * basis[0] + n[1] * basis[1] + n[2] * basis[2];
        const SpacetimePoint y = x + u2 * seconds(d) + d * (1.0 - 1e-12) * dir;
        CHECK(G.contains(y));
        const auto g = G.coordinates(y);
        for (int ax = 0; ax < 3; ++ax) {
            lo[ax] = std::min(lo[ax], g[ax]);
            hi[ax] = std::max(hi[ax], g[ax]);
        }
    }
    // The cover is an outer cover of the sampled shadow, but not a loose one.
    double cover = 0.0, sampled = 1.0;
    for (const auto& b : G.boxes()) cover += b.volume();
    for (int ax = 0; ax < 3; ++ax) sampled *= hi[ax] - lo[ax];
    CHECK(cover <= sampled * (1.0 + 1e-9));
    CHECK(cover >= 0.5 * sampled);
}

TEST_CASE("widening a region")
{
    const Region E(Instant(Velocity::rest(), O), {cube(0, 1)});
    const Region W = widen(E, 0.25);
    CHECK(W.volume() == doctest::Approx(1.5 * 1.5 * 1.5));
    CHECK(W.contains(O + V::from_fiducial(0, -0.2, -0.2, -0.2)));
}
