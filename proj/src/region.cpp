#include "minkabs/region.hpp"

#include "minkabs/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace minkabs {

double Box::volume() const
{
    if (empty()) return 0.0;
    return (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
}

bool Box::contains(const std::array<double, 3>& x) const
{
    for (int i = 0; i < 3; ++i) {
        if (!(x[i] >= lo[i] && x[i] < hi[i])) return false;
    }
    return true;
}

Box cube(double lo, double hi) { return Box{{lo, lo, lo}, {hi, hi, hi}}; }

std::vector<Box> canonicalize_boxes(const std::vector<Box>& input)
{
    std::vector<Box> boxes;
    for (const auto& b : input) {
        if (!b.empty()) boxes.push_back(b);
    }
    if (boxes.size() <= 1) return boxes;

    // Compress coordinates and mark covered cells of the induced grid.
    std::array<std::vector<double>, 3> cuts;
    for (int a = 0; a < 3; ++a) {
        for (const auto& b : boxes) {
            cuts[a].push_back(b.lo[a]);
            cuts[a].push_back(b.hi[a]);
        }
        std::sort(cuts[a].begin(), cuts[a].end());
        cuts[a].erase(std::unique(cuts[a].begin(), cuts[a].end()), cuts[a].end());
    }
    const std::size_t nx = cuts[0].size() - 1, ny = cuts[1].size() - 1, nz = cuts[2].size() - 1;
    auto index_of = [&](int a, double v) {
        return static_cast<std::size_t>(std::lower_bound(cuts[a].begin(), cuts[a].end(), v) - cuts[a].begin());
    };
    std::vector<char> covered(nx * ny * nz, 0);
    auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> char& { return covered[(i * ny + j) * nz + k]; };
    for (const auto& b : boxes) {
        for (std::size_t i = index_of(0, b.lo[0]); i < index_of(0, b.hi[0]); ++i)
            for (std::size_t j = index_of(1, b.lo[1]); j < index_of(1, b.hi[1]); ++j)
                for (std::size_t k = index_of(2, b.lo[2]); k < index_of(2, b.hi[2]); ++k) at(i, j, k) = 1;
    }

    // Greedy merge: runs along z, then extend along y, then along x.
    std::vector<Box> out;
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            for (std::size_t k = 0; k < nz; ++k) {
                if (!at(i, j, k)) continue;
                std::size_t k1 = k;
                while (k1 < nz && at(i, j, k1)) ++k1;
                auto row_full = [&](std::size_t ii, std::size_t jj) {
                    for (std::size_t kk = k; kk < k1; ++kk)
                        if (!at(ii, jj, kk)) return false;
                    return true;
                };
                std::size_t j1 = j + 1;
                while (j1 < ny && row_full(i, j1)) ++j1;
                std::size_t i1 = i + 1;
                auto slab_full = [&](std::size_t ii) {
                    for (std::size_t jj = j; jj < j1; ++jj)
                        if (!row_full(ii, jj)) return false;
                    return true;
                };
                while (i1 < nx && slab_full(i1)) ++i1;
                for (std::size_t ii = i; ii < i1; ++ii)
                    for (std::size_t jj = j; jj < j1; ++jj)
                        for (std::size_t kk = k; kk < k1; ++kk) at(ii, jj, kk) = 0;
                out.push_back(Box{{cuts[0][i], cuts[1][j], cuts[2][k]}, {cuts[0][i1], cuts[1][j1], cuts[2][k1]}});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Region::Region(const Instant& t, std::vector<Box> boxes)
    : Region(t, t.anchor(), canonical_spatial_basis(t.observer()), std::move(boxes))
{
}

Region::Region(const Instant& t, const SpacetimePoint& origin, const std::array<SpacetimeVector, 3>& frame,
               std::vector<Box> boxes)
    : instant_(t), origin_(origin), frame_(frame), boxes_(canonicalize_boxes(boxes))
{
    if (!t.contains(origin, 1e-9)) {
        throw DomainError("region origin must lie in its instant");
    }
}

double Region::volume() const
{
    double v = 0.0;
    for (const auto& b : boxes_) v += b.volume();
    return v;
}

std::array<double, 3> Region::coordinates(const SpacetimePoint& x) const
{
    const SpacetimeVector d = x - origin_;
    return {lorentz_product(frame_[0], d).value(), lorentz_product(frame_[1], d).value(),
            lorentz_product(frame_[2], d).value()};
}

SpacetimePoint Region::point_at(const std::array<double, 3>& c) const
{
    return origin_ + c[0] * frame_[0] + c[1] * frame_[1] + c[2] * frame_[2];
}

bool Region::contains(const SpacetimePoint& x) const
{
    if (!instant_.contains(x, 1e-9)) return false;
    const auto c = coordinates(x);
    return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) { return b.contains(c); });
}

Region Region::with_boxes(std::vector<Box> extra) const
{
    extra.insert(extra.end(), boxes_.begin(), boxes_.end());
    return Region(instant_, origin_, frame_, std::move(extra));
}

Region Region::united(const Region& other) const
{
    if (!(other.origin_ == origin_) || !(other.frame_ == frame_) || !instant_.coincides(other.instant_, 1e-9)) {
        throw DomainError("united: regions must share instant, origin and frame");
    }
    return with_boxes(other.boxes_);
}

Region apply(const PoincareMap& P, const Region& E)
{
    std::array<SpacetimeVector, 3> frame;
    for (int j = 0; j < 3; ++j) frame[j] = P.linear()(E.frame()[j]);
    return Region(apply(P, E.instant()), P(E.origin()), frame, E.boxes());
}

Region grow_region_causally(const Region& E, const Instant& t2)
{
    const Velocity& u = E.instant().observer();
    const Velocity& u2 = t2.observer();
    const LorentzMap carry = make_boost(u, u2);
    std::array<SpacetimeVector, 3> frame;
    for (int j = 0; j < 3; ++j) frame[j] = carry(E.frame()[j]);
    // Origin: where the u2-world line through E's origin meets t2.
    const SpacetimePoint origin = E.origin() + u2 * tau(u2, t2.anchor() - E.origin());

    std::vector<Box> covers;
    for (const auto& box : E.boxes()) {
        std::array<double, 3> lo, hi;
        lo.fill(std::numeric_limits<double>::infinity());
        hi.fill(-std::numeric_limits<double>::infinity());
        for (int corner = 0; corner < 8; ++corner) {
            std::array<double, 3> c;
            for (int a = 0; a < 3; ++a) c[a] = (corner >> a) & 1 ? box.hi[a] : box.lo[a];
            const SpacetimePoint x = E.point_at(c);
            // u2-time left between the corner and t2: radius of the cone section.
            const SpacetimeVector to_t2 = t2.anchor() - x;
            const double d = tau(u2, to_t2).value();
            if (d < -1e-12 * std::max(1.0, to_t2.component_scale())) {
                throw DomainError("target instant is not in the future of the region");
            }
            const double radius = std::max(d, 0.0);
            const SpacetimeVector rel = x - origin;
            for (int a = 0; a < 3; ++a) {
                const double p = lorentz_product(frame[a], rel).value();
                lo[a] = std::min(lo[a], p - radius);
                hi[a] = std::max(hi[a], p + radius);
            }
        }
        covers.push_back(Box{lo, hi});
    }
    return Region(t2, origin, frame, std::move(covers));
}

Region widen(const Region& E, double margin)
{
    std::vector<Box> boxes;
    for (auto b : E.boxes()) {
        for (int a = 0; a < 3; ++a) {
            b.lo[a] -= margin;
            b.hi[a] += margin;
        }
        boxes.push_back(b);
    }
    return Region(E.instant(), E.origin(), E.frame(), std::move(boxes));
}

} // namespace minkabs
