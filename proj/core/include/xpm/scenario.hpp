#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xpm/classical.hpp"
#include "xpm/envelopes.hpp"
#include "xpm/params.hpp"

namespace xpm {

enum class RunMode { design, classical, quantum };

std::string to_string(RunMode m);
RunMode run_mode_from_string(const std::string& s);

// Replacements for individual derived rates, applied before dynamics.
struct RateOverrides {
    std::optional<double> eta_re, eta_im, beta, v_s, v_p, kappa_s, kappa_p;

    bool any() const;
    PolaritonRates apply(PolaritonRates r) const;
    bool operator==(const RateOverrides&) const = default;
};

struct ClassicalSettings {
    std::size_t n_z = 128;
    double dt_s = 0;       // 0: half the CFL bound
    double t_total_s = 0;  // 0: one probe traversal L / v_p
    SplittingScheme scheme = SplittingScheme::strang;
    std::size_t sample_every = 0;
    double support_threshold = 1e-6;
    bool check_norms = true;

    bool operator==(const ClassicalSettings&) const = default;
};

// Classical envelopes in cm. Unset widths resolve to z_loc / 4 (signal) and
// v_p T_p / 4 (probe); unset centers to L / 2 and 0.
struct PulsesSpec {
    PulseSpec probe;
    PulseSpec signal;
    bool operator==(const PulsesSpec&) const = default;
};

// Desk-scale two-excitation runs. Lengths in units of the ring, times in
// units of ring / v_p. phi defaults to the derived Re(eta) L / v_p; with
// complex_eta the derived Im/Re ratio of eta is kept.
struct QuantumSettings {
    std::size_t n_z = 32;
    double length = 1;
    double v_p = 1;
    double v_s = 0.02;
    double beta = 40;
    double t_out = 1.02;
    double dt = 1e-3;
    double contact_width_cells = 2;
    std::optional<double> phi;
    bool complex_eta = false;
    bool oracle = true;
    PulseSpec probe{PulseShape::gaussian, 0.0, 0.05, 1.0, true};
    PulseSpec signal{PulseShape::gaussian, 0.5, 0.05, 1.0, true};

    bool operator==(const QuantumSettings&) const = default;
};

enum class OutputFormat { json, csv, plot_data };

std::string to_string(OutputFormat f);
OutputFormat output_format_from_string(const std::string& s);

struct OutputSpec {
    std::string directory;
    std::vector<OutputFormat> formats{OutputFormat::json};
    bool operator==(const OutputSpec&) const = default;
};

struct Scenario {
    std::string preset = "paper-sec3";
    PhysicalParams params;
    RunMode mode = RunMode::design;
    ClassicalSettings classical;
    PulsesSpec pulses;
    RateOverrides rates;
    QuantumSettings quantum;
    OutputSpec outputs;
    double threshold = 10;  // factor standing in for ">>"
    std::int64_t seed = 0;  // reserved

    bool operator==(const Scenario&) const = default;
};

struct ParseOptions {
    bool strict = true;                     // unknown keys are errors
    std::vector<std::string>* warnings = nullptr;  // lax mode collects them here
    std::optional<std::string> preset;     // replaces the document's preset key
};

// YAML (JSON is accepted too). Missing physical fields come from `preset`.
// Throws ConfigError (with key path and line) or ValidationError.
Scenario parse_scenario(const std::string& text, const ParseOptions& opts = {});
Scenario load_scenario(const std::string& path, const ParseOptions& opts = {});

// Fully resolved scenario for a preset.
Scenario default_scenario(const std::string& preset_name = "paper-sec3");

// Block YAML with shortest round-trip numbers; parse_scenario inverts it.
std::string serialize_scenario(const Scenario& s);
// Same content as a single-line JSON object.
std::string scenario_json(const Scenario& s);

// Copy of `s` with the value at a dotted key path (e.g.
// "params.Omega_dB_rad_per_s") replaced, re-resolved and re-validated.
// Unknown paths are a ConfigError.
Scenario with_value(const Scenario& s, const std::string& path, double value);

// True when `path` names a numeric scenario field (set or optional).
bool is_value_path(const Scenario& s, const std::string& path);

}  // namespace xpm
