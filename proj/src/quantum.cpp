#include "minkabs/quantum.hpp"

#include "minkabs/error.hpp"

#include <cmath>
#include <numbers>

namespace minkabs {

namespace {

constexpr double kInstantTol = 1e-9;

std::array<double, 3> lattice_coordinates(const Lattice& lat, const SpacetimeVector& d)
{
    return {lorentz_product(lat.frame()[0], d).value(), lorentz_product(lat.frame()[1], d).value(),
            lorentz_product(lat.frame()[2], d).value()};
}

double snap(double c, double a)
{
    const double q = std::ldexp(a, -20);
    const double r = std::round(c / q) * q;
    return std::fabs(c - r) <= 1e-9 * a ? r : c;
}

bool is_identity(const PoincareMap& P)
{
    return P.linear().distance(LorentzMap::identity()) == 0.0 && P.translation().is_zero();
}

LatticeState project_on_lattice(const std::vector<char>& mask, const LatticeState& s)
{
    Amplitudes phi = s.position_amplitudes();
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (!mask[i]) phi[i] = Complex{0.0, 0.0};
    }
    return LatticeState::from_position(s.lattice_ptr(), phi);
}

/// Geometry of the cells of P_{u,t}: the cell at signed index n sits at
/// base + sum_j n_j step_j relative to a chosen origin o.
struct CellGeometry {
    PoincareMap carrier;
    SpacetimeVector base;
    std::array<SpacetimeVector, 3> step;
};

CellGeometry cell_geometry(const Lattice& lat, const NwPosition& W)
{
    const PoincareMap C = carrier(lat, PvmHandle(W.instant()));
    CellGeometry g{C, C(lat.lattice_origin()) - W.origin(), {}};
    for (int j = 0; j < 3; ++j) g.step[j] = lat.spacing() * C.linear()(lat.frame()[j]);
    return g;
}

/// Position amplitudes of the state pulled back to the lattice instant.
Amplitudes pulled_back_position(const PoincareMap& C, const LatticeState& s)
{
    if (is_identity(C)) return s.position_amplitudes();
    return apply(C.inverse(), s).position_amplitudes();
}

LatticeState push_forward(const PoincareMap& C, const LatticeState& s)
{
    if (is_identity(C)) return s;
    return apply(C, s);
}

/// Cell index used for position values. The Nyquist plane sits at both -N a/2 and
/// +N a/2 on the torus; it gets the mean of its images, 0, so that sign flips of
/// the lattice axes map position values to position values.
std::array<int, 3> position_index(const Lattice& lat, std::array<int, 3> n)
{
    for (int& v : n) {
        if (v == -lat.n() / 2) v = 0;
    }
    return n;
}

template <class Fn>
void for_each_cell(const Lattice& lat, Fn&& fn)
{
    const int n = lat.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                fn(lat.flat(i, j, k), std::array<int, 3>{lat.signed_index(i), lat.signed_index(j), lat.signed_index(k)});
}

ComponentStats stats(const std::vector<double>& values, const std::vector<double>& prob)
{
    const double ref = values.front();
    double total = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - ref;
        total += prob[i];
        m1 += prob[i] * d;
        m2 += prob[i] * d * d;
    }
    m1 /= total;
    m2 /= total;
    return {ref + m1, std::max(0.0, m2 - m1 * m1)};
}

VectorState apply_cell_function(const CellGeometry& g, const LatticeState& s,
                                const std::array<SpacetimeVector, 3>& step, const SpacetimeVector& base)
{
    const Lattice& lat = s.lattice();
    const Amplitudes phi = pulled_back_position(g.carrier, s);
    std::array<Amplitudes, 4> comps;
    for (auto& c : comps) c.resize(lat.size());
    for_each_cell(lat, [&](std::size_t idx, const std::array<int, 3>& cell) {
        const auto n = position_index(lat, cell);
        const SpacetimeVector x = base + n[0] * step[0] + n[1] * step[1] + n[2] * step[2];
        const auto& xc = x.fiducial_components();
        for (int mu = 0; mu < 4; ++mu) comps[mu][idx] = xc[mu] * phi[idx];
    });
    auto make = [&](int mu) {
        return push_forward(g.carrier, LatticeState::from_position(s.lattice_ptr(), comps[mu]));
    };
    return {make(0), make(1), make(2), make(3)};
}

} // namespace

LatticeState make_gaussian(const std::shared_ptr<const Lattice>& lat, const SpacetimePoint& center,
                           const MeasureScalar& width, const SpacetimeVector& mean_momentum)
{
    const double w = width.in(1);
    const double a = lat->spacing();
    if (w < 3.0 * a * (1.0 - 1e-12)) {
        throw DomainError("band limit violated: width must be at least 3a");
    }
    if (!lat->instant().contains(center, kInstantTol)) {
        throw DomainError("Gaussian center must lie in the lattice instant");
    }
    const auto c = lattice_coordinates(*lat, center - lat->lattice_origin());
    const double half_box = 0.5 * lat->config().box_side();
    for (double v : c) {
        if (std::fabs(v) > half_box) throw DomainError("Gaussian center outside the lattice box");
    }
    if (std::fabs(lorentz_product(lat->observer(), mean_momentum).value()) >
        1e-12 * std::max(1.0, mean_momentum.component_scale())) {
        throw DomainError("mean momentum must lie in E_u0");
    }
    const auto k = lattice_coordinates(*lat, mean_momentum);
    if (std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) > 0.5 * lat->config().cutoff()) {
        throw DomainError("band limit violated: mean momentum above half the cutoff");
    }

    Amplitudes psi(lat->size());
    for (std::size_t idx = 0; idx < psi.size(); ++idx) {
        const auto p = lat->momentum(idx);
        double e = 0.0, phase = 0.0;
        for (int j = 0; j < 3; ++j) {
            const double d = p[j] - k[j];
            e += d * d;
            phase -= d * c[j];
        }
        psi[idx] = std::polar(std::exp(-w * w * e), phase);
    }
    return LatticeState(lat, std::move(psi)).normalized();
}

LatticeState random_state(const std::shared_ptr<const Lattice>& lat, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double a = lat->spacing();
    // Fixed physical extent so that refining the lattice refines the same states.
    const double reach = std::min(1.0, 0.125 * lat->config().box_side());
    const double kmax = 0.15 * lat->config().cutoff();
    const int count = 1 + static_cast<int>(unit(rng) * 3.0) % 3;

    LatticeState sum(lat, Amplitudes(lat->size(), Complex{0.0, 0.0}));
    for (int g = 0; g < count; ++g) {
        std::array<double, 3> c{}, k{};
        for (int j = 0; j < 3; ++j) {
            c[j] = reach * (2.0 * unit(rng) - 1.0);
            k[j] = kmax * (2.0 * unit(rng) - 1.0);
        }
        const double w = 3.0 * a + unit(rng) * std::max(0.0, 1.0 - 3.0 * a);
        const SpacetimePoint center = lat->lattice_origin() + c[0] * lat->frame()[0] + c[1] * lat->frame()[1] +
                                      c[2] * lat->frame()[2];
        const SpacetimeVector mom = k[0] * lat->frame()[0] + k[1] * lat->frame()[1] + k[2] * lat->frame()[2];
        const Complex coef = std::polar(0.5 + unit(rng), 2.0 * std::numbers::pi * unit(rng));
        sum += coef * make_gaussian(lat, center, seconds(w), mom);
    }
    return sum.normalized();
}

PvmHandle::PvmHandle(const Velocity& u, const Instant& t) : t_(t)
{
    if (!same_observer(u, t.observer(), kInstantTol)) {
        throw DomainError("PVM instant must belong to the PVM observer");
    }
}

PoincareMap carrier(const Lattice& lat, const PvmHandle& P)
{
    const Velocity& u = P.observer();
    const SpacetimePoint& o = lat.lattice_origin();
    if (same_observer(u, lat.observer())) {
        const Velocity& u0 = lat.observer();
        const MeasureScalar shift = tau(u0, P.instant().anchor() - o);
        if (shift.value() == 0.0) return PoincareMap::identity();
        return PoincareMap::translation(u0 * shift);
    }
    const PoincareMap boost = PoincareMap::about(o, make_boost(lat.observer(), u));
    return PoincareMap::translation(u * tau(u, P.instant().anchor() - o)) * boost;
}

std::vector<char> cell_mask(const Lattice& lat, const Region& E)
{
    if (!E.instant().coincides(lat.instant(), kInstantTol)) {
        throw DomainError("region does not lie on the lattice instant");
    }
    const double a = lat.spacing();
    const double half_box = 0.5 * lat.config().box_side();
    const SpacetimePoint& o = lat.lattice_origin();

    // Region frame coordinates are G n a + h for the cell at signed index n.
    std::array<std::array<double, 3>, 3> G{};
    std::array<double, 3> h{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) G[i][j] = lorentz_product(E.frame()[i], lat.frame()[j]).value();
        h[i] = lorentz_product(E.frame()[i], o - E.origin()).value();
    }
    for (const auto& box : E.boxes()) {
        for (int corner = 0; corner < 8; ++corner) {
            std::array<double, 3> c;
            for (int ax = 0; ax < 3; ++ax) c[ax] = (corner >> ax) & 1 ? box.hi[ax] : box.lo[ax];
            for (double v : lattice_coordinates(lat, E.point_at(c) - o)) {
                if (std::fabs(v) > half_box * (1.0 + 1e-9)) {
                    throw DomainError("region extends outside the lattice box");
                }
            }
        }
    }

    std::vector<char> mask(lat.size(), 0);
    const int nyquist = -lat.n() / 2;
    for_each_cell(lat, [&](std::size_t idx, const std::array<int, 3>& n) {
        // The Nyquist cell also sits at +N a / 2 on the torus.
        const int images = (n[0] == nyquist ? 2 : 1) * (n[1] == nyquist ? 2 : 1) * (n[2] == nyquist ? 2 : 1);
        for (int img = 0; img < images && !mask[idx]; ++img) {
            std::array<int, 3> m = n;
            int bit = 0;
            for (int ax = 0; ax < 3; ++ax) {
                if (n[ax] == nyquist) {
                    if ((img >> bit) & 1) m[ax] = -nyquist;
                    ++bit;
                }
            }
            std::array<double, 3> c;
            for (int i = 0; i < 3; ++i) {
                c[i] = snap(a * (G[i][0] * m[0] + G[i][1] * m[1] + G[i][2] * m[2]) + h[i], a);
            }
            for (const auto& box : E.boxes()) {
                if (box.contains(c)) {
                    mask[idx] = 1;
                    break;
                }
            }
        }
    });
    return mask;
}

LatticeState pvm_project(const PvmHandle& P, const Region& E, const LatticeState& s)
{
    if (!E.instant().coincides(P.instant(), kInstantTol)) {
        throw DomainError("region instant does not match the PVM instant");
    }
    const Lattice& lat = s.lattice();
    const PoincareMap C = carrier(lat, P);
    if (is_identity(C)) return project_on_lattice(cell_mask(lat, E), s);
    const PoincareMap Cinv = C.inverse();
    const Region pulled = apply(Cinv, E);
    return apply(C, project_on_lattice(cell_mask(lat, pulled), apply(Cinv, s)));
}

double localization_probability(const PvmHandle& P, const Region& E, const LatticeState& s)
{
    return pvm_project(P, E, s).norm_squared();
}

SpacetimeVector nw_expectation(const NwPosition& W, const LatticeState& s)
{
    const Lattice& lat = s.lattice();
    const CellGeometry g = cell_geometry(lat, W);
    const Amplitudes phi = pulled_back_position(g.carrier, s);
    double total = 0.0;
    std::array<double, 3> mean{};
    for_each_cell(lat, [&](std::size_t idx, const std::array<int, 3>& cell) {
        const auto n = position_index(lat, cell);
        const double p = std::norm(phi[idx]);
        total += p;
        for (int j = 0; j < 3; ++j) mean[j] += p * n[j];
    });
    return g.base + (mean[0] / total) * g.step[0] + (mean[1] / total) * g.step[1] + (mean[2] / total) * g.step[2];
}

NwStats nw_component_stats(const NwPosition& W, const Velocity& u2, const LatticeState& s)
{
    const Lattice& lat = s.lattice();
    const CellGeometry g = cell_geometry(lat, W);
    const Amplitudes phi = pulled_back_position(g.carrier, s);
    const bool same = same_observer(u2, W.observer());
    const auto basis = canonical_spatial_basis(u2);

    // Linear coefficients of each component in the cell index.
    std::array<double, 4> base{};
    std::array<std::array<double, 3>, 4> slope{};
    base[0] = tau(u2, g.base).value();
    for (int j = 0; j < 3; ++j) slope[0][j] = same ? 0.0 : tau(u2, g.step[j]).value();
    for (int i = 0; i < 3; ++i) {
        base[i + 1] = lorentz_product(basis[i], g.base).value();
        for (int j = 0; j < 3; ++j) slope[i + 1][j] = lorentz_product(basis[i], g.step[j]).value();
    }

    std::array<std::vector<double>, 4> values;
    std::vector<double> prob;
    prob.reserve(lat.size());
    for (auto& v : values) v.reserve(lat.size());
    for_each_cell(lat, [&](std::size_t idx, const std::array<int, 3>& cell) {
        const auto n = position_index(lat, cell);
        prob.push_back(std::norm(phi[idx]));
        for (int c = 0; c < 4; ++c) {
            values[c].push_back(base[c] + slope[c][0] * n[0] + slope[c][1] * n[1] + slope[c][2] * n[2]);
        }
    });
    NwStats out;
    out.tau = stats(values[0], prob);
    for (int i = 0; i < 3; ++i) out.pi[i] = stats(values[i + 1], prob);
    return out;
}

VectorState nw_apply(const NwPosition& W, const LatticeState& s)
{
    const CellGeometry g = cell_geometry(s.lattice(), W);
    return apply_cell_function(g, s, g.step, g.base);
}

VectorState nw_apply_spatial(const NwPosition& W, const Velocity& u2, const LatticeState& s)
{
    const CellGeometry g = cell_geometry(s.lattice(), W);
    std::array<SpacetimeVector, 3> step;
    for (int j = 0; j < 3; ++j) step[j] = pi(u2, g.step[j]);
    return apply_cell_function(g, s, step, pi(u2, g.base));
}

VectorState mix(const LorentzMap& L, const VectorState& v)
{
    const auto& m = L.fiducial_matrix();
    const auto& lat = v[0].lattice_ptr();
    auto row = [&](int mu) {
        LatticeState out(lat, Amplitudes(lat->size(), Complex{0.0, 0.0}));
        for (int nu = 0; nu < 4; ++nu) {
            if (m(mu, nu) != 0.0) out += Complex{m(mu, nu), 0.0} * v[nu];
        }
        return out;
    };
    return {row(0), row(1), row(2), row(3)};
}

VectorState apply(const PoincareMap& P, const VectorState& v)
{
    return {apply(P, v[0]), apply(P, v[1]), apply(P, v[2]), apply(P, v[3])};
}

double distance(const VectorState& a, const VectorState& b)
{
    double s = 0.0;
    for (int mu = 0; mu < 4; ++mu) s += (a[mu] - b[mu]).norm_squared();
    return std::sqrt(s);
}

} // namespace minkabs
