#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "xpm/scenario.hpp"

namespace xpm {

struct SweepAxis {
    std::string path;  // dotted scenario key, e.g. params.Delta_B_rad_per_s
    std::vector<double> values;
    bool operator==(const SweepAxis&) const = default;
};

enum class Spacing { linear, log };

// `count` values from `from` to `to` inclusive.
std::vector<double> axis_range(double from, double to, std::size_t count, Spacing spacing);

struct SweepSpec {
    std::vector<SweepAxis> axes;
    bool full_runs = false;  // run each cell's mode instead of design-only
    std::size_t threads = 0; // 0: hardware concurrency
    bool operator==(const SweepSpec&) const = default;
};

// Reads the `sweep:` section of a scenario document:
//   sweep:
//     runs: design | full
//     threads: 4
//     axes:
//       - {path: params.Omega_dB_rad_per_s, values: [1e7, 2e7]}
//       - {path: params.Delta_B_rad_per_s, from: 1e8, to: 1e9, count: 5, spacing: log}
SweepSpec parse_sweep(const std::string& text);

struct SweepCell {
    std::vector<double> point;
    bool ok = false;
    std::string error;
    double phi = 0;
    double F = 0;
    double phi_approx = 0;
    bool constraints_passed = false;
    std::vector<double> ratios;  // one per SweepTable::constraint_names
    double exit_phase = 0;       // full classical runs
    double phi_cond = 0;         // full quantum runs
};

struct SweepTable {
    std::vector<std::string> axis_paths;
    std::vector<std::string> constraint_names;
    std::vector<SweepCell> cells;  // row-major over the axes, last axis fastest
    bool full_runs = false;
    RunMode mode = RunMode::design;
};

// Cartesian product of the axes. Cells run on a worker pool; a failing cell
// records its error and the sweep continues. The result does not depend on
// thread count or scheduling.
SweepTable sweep(const Scenario& base, const SweepSpec& spec);

// axis values..., status, error, phi, F, phi_approx, constraints_passed,
// ratio_<constraint>..., [exit_phase | phi_cond]
void write_sweep_csv(std::ostream& os, const SweepTable& table);

}  // namespace xpm
