#pragma once

#include "minkabs/geometry.hpp"

#include <cstdint>
#include <string>

namespace minkabs {

/**
 * Parameters of the lattice realization of the mass-m, spin-0 representation.
 * Natural units: hbar = c = 1, so the mass carries dimension 1/sec.
 */
struct ModelConfig {
    MeasureScalar mass = per_second(1.0);
    int lattice = 32;                     // points per axis, a power of two >= 8
    MeasureScalar spacing = seconds(0.25); // lattice spacing a
    int pad = 2;                          // oversampling factor of the boost interpolation
    int interpolation_points = 6;         // Lagrange stencil width per axis (even)
    Velocity u0 = Velocity::rest();       // constructing observer
    SpacetimePoint origin = SpacetimePoint::fiducial_origin();
    Instant t0{Velocity::rest(), SpacetimePoint::fiducial_origin()};

    /// Throws ConfigError describing the first violated constraint.
    void validate() const;

    /// Momentum cutoff pi/a (1/sec).
    double cutoff() const;
    /// Largest rapidity accepted by the boost path: asinh(0.25 pi / (a w)), with w the
    /// energy at half the cutoff.
    double chi_max() const;
    /// Box side N a (sec).
    double box_side() const;
};

/// Run-level settings shared by the command-line suites.
struct RunSettings {
    ModelConfig model;
    std::uint64_t seed = 42;
    double rapidity = 0.25;
    int trials = 50;
};

/// Parses a flat JSON object; unknown keys are rejected. Keys: N, a, m, pad,
/// interpolation_points, seed, chi, trials.
RunSettings parse_settings(const std::string& json_text, RunSettings defaults = {});
RunSettings load_settings(const std::string& path, RunSettings defaults = {});

/// Cap on internal worker threads, read from MINKABS_THREADS (default: hardware concurrency).
unsigned worker_threads();

} // namespace minkabs
