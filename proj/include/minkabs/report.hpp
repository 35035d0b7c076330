#pragma once

#include "minkabs/config.hpp"

#include <string>
#include <vector>

namespace minkabs {

/// How a residual is compared with its tolerance.
enum class Bound {
    at_most,  // residual <= tolerance
    at_least, // residual >= tolerance
    above,    // residual > tolerance
};

std::string to_string(Bound b);

struct CheckRecord {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    Bound bound = Bound::at_most;
    int lattice = 0; // N used, 0 when no lattice is involved
    bool pass = false;
};

CheckRecord make_check(std::string name, double residual, double tolerance, Bound bound = Bound::at_most,
                       int lattice = 0);

struct ConvergenceRow {
    int lattice;
    double residual;
};

struct ConvergenceTable {
    std::string name;
    std::vector<ConvergenceRow> rows;
};

struct SweepRow {
    double delta_t;  // sec
    double rapidity;
    double leakage;
    int lattice;
};

/// Measured values that are reported but not checked.
struct Measurement {
    std::string name;
    double value;
    std::string unit;
};

struct RunReport {
    std::string suite;
    RunSettings settings;
    std::vector<CheckRecord> checks;
    std::vector<ConvergenceTable> tables;
    std::vector<Measurement> measurements;
    std::vector<SweepRow> sweep;

    bool all_pass() const;
};

/// Pretty JSON document; key order and number formatting are fixed.
std::string to_json(const RunReport& r);

/// CSV with header delta_t_sec,rapidity,leakage,N.
std::string to_csv(const std::vector<SweepRow>& rows);

} // namespace minkabs
