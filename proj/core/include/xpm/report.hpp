#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "xpm/run.hpp"
#include "xpm/scenario.hpp"

namespace xpm {

std::uint64_t fnv1a64(std::string_view bytes);

// Deterministic for a fixed report: ordered keys, shortest round-trip floats.
void write_report_json(std::ostream& os, const RunReport& rep);

// section,quantity,value rows covering rates, constraints and run summaries.
void write_report_csv(std::ostream& os, const RunReport& rep);

// Phase-vs-z table. Classical: z_cm, probe_intensity, probe_phase_rad,
// signal_intensity, signal_phase_rad. Quantum: z, probe_probability,
// forward_probability, backward_probability. Design-only reports have no
// profile and raise ConfigError.
void write_plot_data(std::ostream& os, const RunReport& rep);

// Writes report.json / report.csv (+ trajectory.csv) / plot_data.csv into
// `directory`, creating it if needed. Returns the paths written.
std::vector<std::string> emit(const RunReport& rep, const std::string& directory,
                              const std::vector<OutputFormat>& formats);

}  // namespace xpm
