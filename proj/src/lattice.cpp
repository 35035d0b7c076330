#include "minkabs/lattice.hpp"

#include "minkabs/error.hpp"

#include <Eigen/Dense>
#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace minkabs {

namespace {

std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const Complex* p) { return reinterpret_cast<fftw_complex*>(const_cast<Complex*>(p)); }

Eigen::Vector4d col(const SpacetimeVector& x)
{
    const auto& c = x.fiducial_components();
    return {c[0], c[1], c[2], c[3]};
}

/// Frame matrix with columns (u0, e1, e2, e3) in fiducial components.
Eigen::Matrix4d frame_matrix(const Lattice& lat)
{
    Eigen::Matrix4d F;
    F.col(0) = col(lat.observer().per_second());
    for (int j = 0; j < 3; ++j) F.col(j + 1) = col(lat.frame()[j]);
    return F;
}

/// Components of a Lorentz map in the lattice frame.
Eigen::Matrix4d in_lattice_frame(const Lattice& lat, const LorentzMap& L)
{
    const Eigen::Matrix4d eta = Eigen::Vector4d(-1.0, 1.0, 1.0, 1.0).asDiagonal();
    const Eigen::Matrix4d F = frame_matrix(lat);
    return eta * F.transpose() * eta * L.fiducial_matrix() * F;
}

void lagrange_weights(double x, int points, int& first, double* w)
{
    first = static_cast<int>(std::floor(x)) - points / 2 + 1;
    for (int j = 0; j < points; ++j) {
        double v = 1.0;
        const double xj = first + j;
        for (int l = 0; l < points; ++l) {
            if (l != j) v *= (x - (first + l)) / (xj - (first + l));
        }
        w[j] = v;
    }
}

} // namespace

struct Lattice::Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    fftw_plan refined = nullptr;
    int refined_n = 0;

    ~Plans()
    {
        std::lock_guard lock(planner_mutex());
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
        if (refined) fftw_destroy_plan(refined);
    }
};

Lattice::Lattice(const ModelConfig& cfg)
    : cfg_(cfg),
      n_(cfg.lattice),
      size_(static_cast<std::size_t>(cfg.lattice) * cfg.lattice * cfg.lattice),
      a_(cfg.spacing.value()),
      m_(cfg.mass.value()),
      dp_(2.0 * std::numbers::pi / (cfg.lattice * cfg.spacing.value())),
      origin_(cfg.origin + cfg.u0 * tau(cfg.u0, cfg.t0.anchor() - cfg.origin)),
      frame_(canonical_spatial_basis(cfg.u0)),
      plans_(std::make_unique<Plans>())
{
    cfg_.validate();
    omega_.resize(size_);
    for (std::size_t idx = 0; idx < size_; ++idx) {
        const auto p = momentum(idx);
        omega_[idx] = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + m_ * m_);
    }

    std::lock_guard lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    Amplitudes in(size_), out(size_);
    plans_->forward = fftw_plan_dft_3d(n_, n_, n_, as_fftw(in.data()), as_fftw(out.data()), FFTW_FORWARD, flags);
    plans_->backward = fftw_plan_dft_3d(n_, n_, n_, as_fftw(in.data()), as_fftw(out.data()), FFTW_BACKWARD, flags);
    plans_->refined_n = n_ * cfg.pad;
    const std::size_t r = static_cast<std::size_t>(plans_->refined_n);
    Amplitudes rin(r * r * r), rout(r * r * r);
    plans_->refined = fftw_plan_dft_3d(plans_->refined_n, plans_->refined_n, plans_->refined_n, as_fftw(rin.data()),
                                       as_fftw(rout.data()), FFTW_FORWARD, flags);
}

Lattice::~Lattice() = default;

std::shared_ptr<const Lattice> Lattice::make(const ModelConfig& cfg) { return std::make_shared<const Lattice>(cfg); }

std::array<double, 3> Lattice::momentum(std::size_t idx) const
{
    const int k = static_cast<int>(idx % n_);
    const int j = static_cast<int>((idx / n_) % n_);
    const int i = static_cast<int>(idx / (static_cast<std::size_t>(n_) * n_));
    return {dp_ * signed_index(i), dp_ * signed_index(j), dp_ * signed_index(k)};
}

Amplitudes Lattice::to_position(const Amplitudes& psi) const
{
    Amplitudes out(size_);
    fftw_execute_dft(plans_->backward, as_fftw(psi.data()), as_fftw(out.data()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(size_));
    for (auto& v : out) v *= scale;
    return out;
}

Amplitudes Lattice::to_momentum(const Amplitudes& phi) const
{
    Amplitudes out(size_);
    fftw_execute_dft(plans_->forward, as_fftw(phi.data()), as_fftw(out.data()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(size_));
    for (auto& v : out) v *= scale;
    return out;
}

Amplitudes Lattice::refined_momentum(const Amplitudes& psi) const
{
    const Amplitudes phi = to_position(psi);
    const int r = plans_->refined_n;
    const std::size_t rsize = static_cast<std::size_t>(r) * r * r;
    Amplitudes padded(rsize, Complex{0.0, 0.0});
    auto rwrap = [r](int k) { return ((k % r) + r) % r; };
    // The Nyquist plane (index -N/2) is split evenly between its images at -N/2 and
    // +N/2 so the interpolant is mirror-symmetric. Coarse samples are unchanged.
    auto images = [&](int i, int* pos, double* w) {
        const int v = signed_index(i);
        pos[0] = rwrap(v);
        if (v != -n_ / 2) {
            w[0] = 1.0;
            return 1;
        }
        pos[1] = rwrap(-v);
        w[0] = w[1] = 0.5;
        return 2;
    };
    for (int i = 0; i < n_; ++i) {
        int pi_[2], pj[2], pk[2];
        double wi[2], wj[2], wk[2];
        const int ni = images(i, pi_, wi);
        for (int j = 0; j < n_; ++j) {
            const int nj = images(j, pj, wj);
            for (int k = 0; k < n_; ++k) {
                const int nk = images(k, pk, wk);
                const Complex v = phi[flat(i, j, k)];
                for (int a = 0; a < ni; ++a)
                    for (int b = 0; b < nj; ++b)
                        for (int c = 0; c < nk; ++c)
                            padded[(static_cast<std::size_t>(pi_[a]) * r + pj[b]) * r + pk[c]] = wi[a] * wj[b] * wk[c] * v;
            }
        }
    }
    Amplitudes out(rsize);
    fftw_execute_dft(plans_->refined, as_fftw(padded.data()), as_fftw(out.data()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(size_));
    for (auto& v : out) v *= scale;
    return out;
}

SpacetimePoint Lattice::cell_center(const std::array<int, 3>& n) const
{
    return origin_ + (a_ * n[0]) * frame_[0] + (a_ * n[1]) * frame_[1] + (a_ * n[2]) * frame_[2];
}

LatticeState::LatticeState(std::shared_ptr<const Lattice> lattice, Amplitudes psi)
    : lattice_(std::move(lattice)), psi_(std::move(psi))
{
    if (psi_.size() != lattice_->size()) {
        throw DomainError("amplitude count does not match the lattice");
    }
}

LatticeState LatticeState::from_position(std::shared_ptr<const Lattice> lattice, const Amplitudes& phi)
{
    Amplitudes psi = lattice->to_momentum(phi);
    return LatticeState(std::move(lattice), std::move(psi));
}

double LatticeState::norm_squared() const
{
    double s = 0.0;
    for (const auto& v : psi_) s += std::norm(v);
    return s;
}

double LatticeState::norm() const { return std::sqrt(norm_squared()); }

Complex LatticeState::inner(const LatticeState& other) const
{
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < psi_.size(); ++i) s += std::conj(psi_[i]) * other.psi_[i];
    return s;
}

LatticeState LatticeState::normalized() const
{
    const double n = norm();
    if (n == 0.0) throw DomainError("cannot normalize the zero state");
    LatticeState out = *this;
    out *= Complex{1.0 / n, 0.0};
    return out;
}

LatticeState& LatticeState::operator+=(const LatticeState& rhs)
{
    for (std::size_t i = 0; i < psi_.size(); ++i) psi_[i] += rhs.psi_[i];
    return *this;
}

LatticeState& LatticeState::operator-=(const LatticeState& rhs)
{
    for (std::size_t i = 0; i < psi_.size(); ++i) psi_[i] -= rhs.psi_[i];
    return *this;
}

LatticeState& LatticeState::operator*=(Complex k)
{
    for (auto& v : psi_) v *= k;
    return *this;
}

LatticeState apply_translation(const LatticeState& s, const SpacetimeVector& a)
{
    const Lattice& lat = s.lattice();
    const double a0 = tau(lat.observer(), a).value();
    const std::array<double, 3> av{lorentz_product(lat.frame()[0], a).value(), lorentz_product(lat.frame()[1], a).value(),
                                   lorentz_product(lat.frame()[2], a).value()};
    Amplitudes psi = s.amplitudes();
    for (std::size_t idx = 0; idx < psi.size(); ++idx) {
        const auto p = lat.momentum(idx);
        // -p.a with p.a = -w a0 + p.a_spatial
        const double phase = lat.omega(idx) * a0 - (p[0] * av[0] + p[1] * av[1] + p[2] * av[2]);
        psi[idx] *= std::polar(1.0, phase);
    }
    return LatticeState(s.lattice_ptr(), std::move(psi));
}

namespace {

/// Signed-permutation matrix of L on the lattice axes, if it is one.
bool lattice_permutation(const Lattice& lat, const LorentzMap& L, std::array<std::array<int, 3>, 3>& R)
{
    if (!in_O_u(L, lat.observer())) return false;
    const Eigen::Matrix4d M = in_lattice_frame(lat, L);
    for (int i = 0; i < 3; ++i) {
        int nonzero = 0;
        for (int j = 0; j < 3; ++j) {
            const double v = M(i + 1, j + 1);
            const double r = std::round(v);
            if (std::fabs(v - r) > 1e-10 || std::fabs(r) > 1.0) return false;
            R[i][j] = static_cast<int>(r);
            nonzero += R[i][j] != 0;
        }
        if (nonzero != 1) return false;
    }
    return true;
}

} // namespace

bool is_lattice_rotation(const Lattice& lat, const LorentzMap& L)
{
    std::array<std::array<int, 3>, 3> R{};
    return lattice_permutation(lat, L, R);
}

LatticeState apply_rotation(const LatticeState& s, const LorentzMap& L)
{
    const Lattice& lat = s.lattice();
    std::array<std::array<int, 3>, 3> R{};
    if (!lattice_permutation(lat, L, R)) {
        throw DomainError("rotation does not preserve the lattice; use apply_boost path");
    }
    // psi'(k) = psi(R^T k)
    const int n = lat.n();
    Amplitudes out(lat.size());
    const Amplitudes& psi = s.amplitudes();
    for (int i = 0; i < n; ++i) {
        const int ki = lat.signed_index(i);
        for (int j = 0; j < n; ++j) {
            const int kj = lat.signed_index(j);
            for (int k = 0; k < n; ++k) {
                const int kk = lat.signed_index(k);
                std::array<int, 3> src{};
                for (int c = 0; c < 3; ++c) src[c] = R[0][c] * ki + R[1][c] * kj + R[2][c] * kk;
                out[lat.flat(i, j, k)] = psi[lat.flat(lat.wrap(src[0]), lat.wrap(src[1]), lat.wrap(src[2]))];
            }
        }
    }
    return LatticeState(s.lattice_ptr(), std::move(out));
}

BoostResult apply_boost(const LatticeState& s, const LorentzMap& L)
{
    const Lattice& lat = s.lattice();
    if (!is_orthochronous(L)) {
        throw DomainError("boost path requires an orthochronous map");
    }
    const double chi = rapidity_between(lat.observer(), L(lat.observer()));
    if (chi > lat.config().chi_max() + 1e-12) {
        throw DomainError("rapidity " + std::to_string(chi) + " exceeds the band-limit cap " +
                          std::to_string(lat.config().chi_max()));
    }
    const Eigen::Matrix4d Minv = in_lattice_frame(lat, L.inverse());
    const Amplitudes fine = lat.refined_momentum(s.amplitudes());

    const int n = lat.n();
    const int r = n * lat.config().pad;
    const int points = lat.config().interpolation_points;
    const double fine_step = lat.momentum_step() / lat.config().pad;
    const double band = 0.5 * n * lat.momentum_step();
    const double m2 = lat.mass() * lat.mass();
    auto rwrap = [r](int k) { return ((k % r) + r) % r; };

    Amplitudes out(lat.size(), Complex{0.0, 0.0});
    parallel_chunks(lat.size(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> w0(points), w1(points), w2(points);
        // Boosted amplitude at lattice momentum p, pulled back through Minv.
        auto sample = [&](const std::array<double, 3>& p, double wp) -> Complex {
            const Eigen::Vector4d P(wp, p[0], p[1], p[2]);
            const Eigen::Vector4d Q = Minv * P;
            if (std::fabs(Q[1]) > band || std::fabs(Q[2]) > band || std::fabs(Q[3]) > band) return {0.0, 0.0};
            const double wq = std::sqrt(Q[1] * Q[1] + Q[2] * Q[2] + Q[3] * Q[3] + m2);
            int f0, f1, f2;
            lagrange_weights(Q[1] / fine_step, points, f0, w0.data());
            lagrange_weights(Q[2] / fine_step, points, f1, w1.data());
            lagrange_weights(Q[3] / fine_step, points, f2, w2.data());
            Complex acc{0.0, 0.0};
            for (int a = 0; a < points; ++a) {
                const std::size_t ia = static_cast<std::size_t>(rwrap(f0 + a)) * r;
                Complex acc_b{0.0, 0.0};
                for (int b = 0; b < points; ++b) {
                    const std::size_t ib = (ia + rwrap(f1 + b)) * r;
                    Complex acc_c{0.0, 0.0};
                    for (int c = 0; c < points; ++c) acc_c += w2[c] * fine[ib + rwrap(f2 + c)];
                    acc_b += w1[b] * acc_c;
                }
                acc += w0[a] * acc_b;
            }
            return std::sqrt(wq / wp) * acc;
        };
        for (std::size_t idx = begin; idx < end; ++idx) {
            // Nyquist components (p = -band) are averaged over their images at +-band.
            const auto p = lat.momentum(idx);
            const double wp = lat.omega(idx);
            std::array<int, 3> flip{};
            int count = 0;
            for (int c = 0; c < 3; ++c) {
                if (p[c] == -band) flip[count++] = c;
            }
            Complex acc{0.0, 0.0};
            for (int mask = 0; mask < (1 << count); ++mask) {
                auto q = p;
                for (int j = 0; j < count; ++j) {
                    if ((mask >> j) & 1) q[flip[j]] = band;
                }
                acc += sample(q, wp);
            }
            out[idx] = acc / static_cast<double>(1 << count);
        }
    });
    LatticeState result(s.lattice_ptr(), std::move(out));
    const double drift = std::fabs(result.norm() - s.norm());
    return {std::move(result), drift, chi};
}

LatticeState apply(const PoincareMap& P, const LatticeState& s)
{
    const Lattice& lat = s.lattice();
    const LorentzMap& L = P.linear();
    const SpacetimeVector b = P.translation_about(lat.lattice_origin());
    LatticeState out = s;
    if (L.distance(LorentzMap::identity()) == 0.0) {
        // pure translation
    } else if (is_lattice_rotation(lat, L)) {
        out = apply_rotation(s, L);
    } else {
        out = apply_boost(s, L).state;
    }
    if (!b.is_zero()) out = apply_translation(out, b);
    return out;
}

} // namespace minkabs
