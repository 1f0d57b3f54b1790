#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "xpm/classical.hpp"
#include "xpm/params.hpp"
#include "xpm/quantum.hpp"
#include "xpm/scenario.hpp"

namespace xpm {

struct ClassicalResult {
    PolaritonRates rates;  // after overrides
    double dt = 0;
    std::size_t steps = 0;
    double t_total = 0;
    std::vector<TrajectorySample> samples;
    PhaseProfile probe_phase;
    double probe_transmission = 0;  // final / initial excitation number
    double signal_retention = 0;
    FieldState initial{Grid(8, 1.0)};
    FieldState final_state{Grid(8, 1.0)};
};

struct QuantumResult {
    PolaritonRates rates;  // desk units
    double phi_target = 0; // Re(eta) L / v_p
    double forward_population = 0;   // closed form cos^2(beta t_out)
    double backward_population = 0;
    bool oracle = false;
    // Populated when the Trotter oracle ran.
    double fidelity = 0;           // closed form vs Trotter
    double trotter_norm = 0;
    double trotter_forward = 0;
    double trotter_backward = 0;
    CphaseRuns runs;
    CphaseResult cphase;
    std::optional<SectorState> final_state;
};

struct Provenance {
    std::string tool = "xpmsim";
    std::string version;
    std::string timestamp;    // UTC, ISO 8601; SOURCE_DATE_EPOCH pins it
    std::string config_hash;  // FNV-1a 64 of the serialized scenario, hex
};

struct RunReport {
    Scenario scenario;
    DerivedRates rates;
    ApproxPhase approx;
    ConstraintReport constraints;
    std::optional<ClassicalResult> classical;
    std::optional<QuantumResult> quantum;
    Provenance provenance;
};

// Desk-scale rates for the quantum sector (see QuantumSettings).
PolaritonRates quantum_rates(const Scenario& s, const DerivedRates& d);

ClassicalResult run_classical(const Scenario& s, const DerivedRates& d);
QuantumResult run_quantum(const Scenario& s, const DerivedRates& d);

// Derives rates and constraints, then runs the dynamics the mode asks for.
RunReport run(const Scenario& s);

std::string version();
Provenance make_provenance(const Scenario& s);

}  // namespace xpm
