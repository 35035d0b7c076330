#pragma once

#include "minkabs/report.hpp"

namespace minkabs {

/// Splitting, product preservation, group laws and dimension checks on random inputs.
RunReport run_geometry_suite(const RunSettings& s);

/// Imprimitivity, covariance, Newton-Wigner transformation rules, with an N-doubling table for boosts.
RunReport run_covariance_suite(const RunSettings& s);

/// Leakage outside the causal shadow versus dt and rapidity, plus commutator witnesses.
RunReport run_causality_demo(const RunSettings& s);

} // namespace minkabs
