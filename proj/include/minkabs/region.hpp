#pragma once

#include "minkabs/groups.hpp"

#include <array>
#include <optional>
#include <vector>

namespace minkabs {

/// Axis-aligned box [lo, hi) in seconds along the three axes of a spatial frame.
struct Box {
    std::array<double, 3> lo{};
    std::array<double, 3> hi{};

    bool empty() const { return !(lo[0] < hi[0] && lo[1] < hi[1] && lo[2] < hi[2]); }
    double volume() const;
    /// Half-open membership test on frame coordinates.
    bool contains(const std::array<double, 3>& x) const;

    friend bool operator==(const Box&, const Box&) = default;
    friend auto operator<=>(const Box&, const Box&) = default;
};

/// Cube [lo, hi)^3.
Box cube(double lo, double hi);

/**
 * Finite union of boxes lying in an instant.
 *
 * Box coordinates are taken relative to `origin` (a point of the instant) along
 * an orthonormal frame of E_u. Regions built directly on an instant use its
 * canonical spatial basis; pushing a region forward through a Poincare map
 * transports origin and frame and keeps the box coordinates.
 *
 * The box list is canonical: disjoint, sorted, with empty boxes dropped.
 */
class Region {
public:
    /// Region on `t` with frame origin t.anchor() and the canonical basis of E_u.
    Region(const Instant& t, std::vector<Box> boxes);
    Region(const Instant& t, const SpacetimePoint& origin, const std::array<SpacetimeVector, 3>& frame,
           std::vector<Box> boxes);

    static Region empty(const Instant& t) { return Region(t, {}); }

    const Instant& instant() const { return instant_; }
    const SpacetimePoint& origin() const { return origin_; }
    const std::array<SpacetimeVector, 3>& frame() const { return frame_; }
    const std::vector<Box>& boxes() const { return boxes_; }

    bool is_empty() const { return boxes_.empty(); }
    double volume() const;

    /// Frame coordinates (seconds) of a point, which should lie in the instant.
    std::array<double, 3> coordinates(const SpacetimePoint& x) const;
    SpacetimePoint point_at(const std::array<double, 3>& coords) const;
    bool contains(const SpacetimePoint& x) const;

    /// Union with boxes expressed in this region's frame.
    Region with_boxes(std::vector<Box> extra) const;
    /// Union with a region sharing this region's instant, origin and frame.
    Region united(const Region& other) const;

private:
    Instant instant_;
    SpacetimePoint origin_;
    std::array<SpacetimeVector, 3> frame_;
    std::vector<Box> boxes_;
};

/// Disjoint, lexicographically sorted decomposition of a union of boxes.
std::vector<Box> canonicalize_boxes(const std::vector<Box>& boxes);

/// L[E]: instant, origin and frame are pushed forward; box coordinates are kept.
Region apply(const PoincareMap& P, const Region& E);

/**
 * Outer box cover of (E + T) intersected with t2, T the closed future cone.
 *
 * The output frame is E's frame carried by the canonical boost from E's observer
 * to t2's observer, with origin on the t2-world line through E's origin. Each box
 * of E is covered separately using the exact support function of its causal
 * shadow; the covers are then united. Throws DomainError if some point of E lies
 * to the future of t2.
 */
Region grow_region_causally(const Region& E, const Instant& t2);

/// Region whose cover is widened by an extra `margin` (seconds) on every side.
Region widen(const Region& E, double margin);

} // namespace minkabs
