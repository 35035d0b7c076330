#pragma once

#include "minkabs/config.hpp"
#include "minkabs/groups.hpp"

#include <array>
#include <complex>
#include <memory>
#include <vector>

namespace minkabs {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

/**
 * Periodic N^3 lattice realizing the one-particle Hilbert space of the
 * mass-m spin-0 representation.
 *
 * Momentum amplitudes psi(p) live on p = (2 pi / (N a)) k, k in [-N/2, N/2)^3,
 * taken along the canonical spatial frame (e1, e2, e3) of the instant t0 of
 * the constructing observer u0. Position amplitudes are
 *
 *     phi(n) = N^{-3/2} sum_k exp(i p . x_n) psi(k),   x_n = lattice_origin + a n,
 *
 * with the same index range; both transforms are unitary and wrap periodically.
 * The lattice origin is the point of t0 on the u0-world line of `origin`.
 *
 * The object owns FFTW plans and is shared (read-only) by every LatticeState
 * built on it. All member functions are safe to call concurrently.
 */
class Lattice {
public:
    explicit Lattice(const ModelConfig& cfg);
    ~Lattice();
    Lattice(const Lattice&) = delete;
    Lattice& operator=(const Lattice&) = delete;

    static std::shared_ptr<const Lattice> make(const ModelConfig& cfg);

    const ModelConfig& config() const { return cfg_; }
    int n() const { return n_; }
    std::size_t size() const { return size_; }
    double spacing() const { return a_; }
    double mass() const { return m_; }
    /// Momentum step 2 pi / (N a).
    double momentum_step() const { return dp_; }

    const Velocity& observer() const { return cfg_.u0; }
    const Instant& instant() const { return cfg_.t0; }
    const SpacetimePoint& lattice_origin() const { return origin_; }
    const std::array<SpacetimeVector, 3>& frame() const { return frame_; }

    /// Signed index in [-N/2, N/2) of storage index i.
    int signed_index(int i) const { return i < n_ / 2 ? i : i - n_; }
    /// Storage index of a signed (or any) integer index, wrapped mod N.
    int wrap(int k) const { return ((k % n_) + n_) % n_; }
    std::size_t flat(int i, int j, int k) const { return (static_cast<std::size_t>(i) * n_ + j) * n_ + k; }

    /// Energy sqrt(|p|^2 + m^2) at storage index.
    double omega(std::size_t idx) const { return omega_[idx]; }
    /// Spatial momentum components at storage index.
    std::array<double, 3> momentum(std::size_t idx) const;

    /// Unitary transforms between momentum and position amplitudes.
    Amplitudes to_position(const Amplitudes& psi) const;
    Amplitudes to_momentum(const Amplitudes& phi) const;

    /// Band-limited interpolant of psi sampled on a grid refined by `pad`;
    /// the returned array has (pad N)^3 entries in storage order.
    Amplitudes refined_momentum(const Amplitudes& psi) const;

    /// Center of the lattice cell at signed index n.
    SpacetimePoint cell_center(const std::array<int, 3>& n) const;

private:
    struct Plans;

    ModelConfig cfg_;
    int n_;
    std::size_t size_;
    double a_, m_, dp_;
    SpacetimePoint origin_;
    std::array<SpacetimeVector, 3> frame_;
    std::vector<double> omega_;
    std::unique_ptr<Plans> plans_;
};

/// Momentum amplitudes on a shared lattice.
class LatticeState {
public:
    LatticeState(std::shared_ptr<const Lattice> lattice, Amplitudes psi);

    const Lattice& lattice() const { return *lattice_; }
    const std::shared_ptr<const Lattice>& lattice_ptr() const { return lattice_; }
    const Amplitudes& amplitudes() const { return psi_; }

    double norm() const;
    double norm_squared() const;
    Complex inner(const LatticeState& other) const;
    LatticeState normalized() const;

    LatticeState& operator+=(const LatticeState& rhs);
    LatticeState& operator-=(const LatticeState& rhs);
    LatticeState& operator*=(Complex k);
    friend LatticeState operator+(LatticeState a, const LatticeState& b) { return a += b; }
    friend LatticeState operator-(LatticeState a, const LatticeState& b) { return a -= b; }
    friend LatticeState operator*(Complex k, LatticeState a) { return a *= k; }

    Amplitudes position_amplitudes() const { return lattice_->to_position(psi_); }
    static LatticeState from_position(std::shared_ptr<const Lattice> lattice, const Amplitudes& phi);

private:
    std::shared_ptr<const Lattice> lattice_;
    Amplitudes psi_;
};

/// Multiplies psi(p) by exp(-i p.a), p the on-shell four-momentum. Exactly unitary.
LatticeState apply_translation(const LatticeState& s, const SpacetimeVector& a);

/// True if L fixes u0 and permutes the lattice axes up to sign.
bool is_lattice_rotation(const Lattice& lat, const LorentzMap& L);

/// Lattice-preserving element of O_u0 (about the lattice origin): a permutation of
/// momentum amplitudes. Throws DomainError ("use apply_boost path") otherwise.
LatticeState apply_rotation(const LatticeState& s, const LorentzMap& L);

struct BoostResult {
    LatticeState state;
    double norm_drift;  // | |U psi| - |psi| |
    double rapidity;    // rapidity between u0 and L u0
};

/**
 * Orthochronous Lorentz map about the lattice origin:
 * psi'(p) = sqrt(w(L^-1 p) / w(p)) psi(L^-1 p), with psi evaluated by
 * Lagrange interpolation on the pad-refined band-limited interpolant.
 * Momenta whose preimage leaves the band get zero amplitude.
 * Throws DomainError if L is not orthochronous or the rapidity exceeds chi_max.
 */
BoostResult apply_boost(const LatticeState& s, const LorentzMap& L);

/// U_P for an orthochronous Poincare map, factored as a translation after a
/// Lorentz map about the lattice origin; picks the exact path when possible.
LatticeState apply(const PoincareMap& P, const LatticeState& s);

/// Runs `body(begin, end)` over [0, n) split across worker_threads() threads.
template <class Body>
void parallel_chunks(std::size_t n, Body&& body);

} // namespace minkabs

#include "minkabs/detail/parallel.hpp"
