#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "xpm/envelopes.hpp"
#include "xpm/fft.hpp"
#include "xpm/grid.hpp"
#include "xpm/params.hpp"

namespace xpm {

// Mean-field polariton envelopes on the periodic grid. Amplitudes are
// normalized so that (1/L) sum |psi|^2 dz is the excitation number.
struct FieldState {
    Grid grid;
    std::vector<cplx> psi_plus;
    std::vector<cplx> psi_minus;
    std::vector<cplx> psi_p;
    double t = 0;

    explicit FieldState(const Grid& g)
        : grid(g), psi_plus(g.size()), psi_minus(g.size()), psi_p(g.size())
    {
    }
};

// (1/L) sum |psi_j|^2 dz
double excitation_number(std::span<const cplx> psi, const Grid& grid);
double probe_norm(const FieldState& s);
double signal_norm(const FieldState& s);

// I_s = |psi_+|^2 + |psi_-|^2 per cell.
std::vector<double> signal_intensity(const FieldState& s);

// psi_+ from the signal envelope, psi_- = 0, psi_p from the probe envelope.
// With `normalize`, each nonzero field is scaled to unit excitation number;
// an all-zero envelope is an error in that case.
FieldState init_state(const Grid& grid, const Envelope& probe, const Envelope& signal,
                      bool normalize = true);

enum class SplittingScheme { strang, lie };

struct IntegratorSettings {
    double dt = 0;
    SplittingScheme scheme = SplittingScheme::strang;
    // Largest relative norm change per step tolerated when the dynamics are
    // norm-preserving (kappa = 0, real eta).
    double norm_drift_tolerance = 1e-9;
    bool check_norms = true;
};

// Split-step integrator for the coupled polariton equations
//   (d_t +- v_s d_z) psi_+- = -kappa_s psi_+- + i eta I_p psi_+- + i beta psi_-+
//   (d_t + v_p d_z) psi_p   = -kappa_p psi_p  + i eta I_s psi_p
// Sub-steps: spectral advection (exact), Bragg rotation (exact 2x2), local
// cross-phase (exact per cell, including cross-absorption for complex eta)
// and damping. Owns its FFT workspace; one instance per simulation.
class ClassicalIntegrator {
public:
    ClassicalIntegrator(const Grid& grid, const PolaritonRates& rates,
                        const IntegratorSettings& settings);

    const Grid& grid() const noexcept { return grid_; }
    const PolaritonRates& rates() const noexcept { return rates_; }
    const IntegratorSettings& settings() const noexcept { return settings_; }

    // One step of length settings().dt.
    void step(FieldState& s);

    // `n` steps; consecutive half advections are fused under Strang splitting,
    // so this is cheaper than n calls to step() with identical results up to
    // rounding.
    void advance(FieldState& s, std::size_t n);

    // Individual sub-steps, exposed for tests.
    void advect(FieldState& s, double tau);
    void bragg(FieldState& s, double tau) const;
    void cross_phase(FieldState& s, double tau) const;
    void damp(FieldState& s, double tau) const;

private:
    void local(FieldState& s, double tau) const;
    void check(const FieldState& s, double probe_before, double signal_before) const;
    bool conserving() const noexcept;

    Grid grid_;
    PolaritonRates rates_;
    IntegratorSettings settings_;
    FftPlan fft_;
    std::vector<double> k_;

    // Advection phase factors for the two most recent sub-step lengths.
    struct PhaseTable {
        double tau = 0;
        std::vector<cplx> plus, minus, probe;
    };
    const PhaseTable& phases(double tau);
    PhaseTable tables_[2];
    std::size_t next_table_ = 0;
};

// Single step on a copy.
FieldState step(FieldState state, const PolaritonRates& rates, const IntegratorSettings& settings);

struct TrajectorySample {
    double t = 0;
    double probe_norm = 0;
    double signal_norm = 0;
    double forward_norm = 0;
    double backward_norm = 0;
    double mean_phase = 0;
    double phase_deviation = 0;
};

struct ObserverSpec {
    std::size_t every = 0;  // sample cadence in steps; 0 samples only start and end
    double support_threshold = 1e-6;
    std::function<void(const FieldState&)> callback;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    FieldState final_state;
};

// Steps until T_total (the step is shortened uniformly so that an integer
// number of steps lands exactly on T_total).
Trajectory evolve(const FieldState& initial, const PolaritonRates& rates,
                  const IntegratorSettings& settings, double T_total,
                  const ObserverSpec& observers = {});

struct PhaseProfile {
    std::vector<double> phase;   // NaN outside the support
    std::vector<bool> support;
    double mean = 0;             // reported in [-pi/2, 3pi/2)
    double max_deviation = 0;
};

// Phase of final psi_p relative to the initial probe freely translated by
// v_p (t_final - t_initial). Unwrapped along z over cells where |psi_p|^2
// exceeds `support_threshold` times its maximum.
PhaseProfile probe_phase_shift(const FieldState& initial, const FieldState& final_state,
                               double v_p, double support_threshold = 1e-6);

// Trajectory table: t, probe_norm, signal_norm, forward_norm, backward_norm,
// mean_phase, phase_deviation.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& samples);

// Binary snapshot: uint64 N_z, float64 L, float64 t, then psi_plus,
// psi_minus, psi_p as (re, im) float64 pairs. Everything little-endian.
void write_snapshot(std::ostream& os, const FieldState& s);
FieldState read_snapshot(std::istream& is);
void write_snapshot_file(const std::string& path, const FieldState& s);
FieldState read_snapshot_file(const std::string& path);

}  // namespace xpm
