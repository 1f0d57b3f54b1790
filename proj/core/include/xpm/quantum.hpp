#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "xpm/envelopes.hpp"
#include "xpm/fft.hpp"
#include "xpm/grid.hpp"
#include "xpm/params.hpp"

namespace xpm {

// Single-excitation wavepacket sum_q xi^q |1^q>, sum |xi^q|^2 = 1, with
// envelope f(z) = sum_q xi^q e^{iqz}. xi is indexed by DFT bin of the grid.
class SinglePhotonWavepacket {
public:
    SinglePhotonWavepacket(const Grid& grid, std::vector<cplx> xi);

    // Samples the envelope on the grid and normalizes.
    static SinglePhotonWavepacket from_envelope(const Grid& grid, const Envelope& envelope);

    const Grid& grid() const noexcept { return grid_; }
    const std::vector<cplx>& xi() const noexcept { return xi_; }

    // f(z)
    cplx envelope(double z) const;
    // Unit-norm cell amplitudes f(z_j)/sqrt(N), optionally translated by `shift`.
    std::vector<cplx> cell_amplitudes(double shift = 0) const;
    // xi'^q = xi^{-q}.
    SinglePhotonWavepacket mirrored() const;

private:
    Grid grid_;
    std::vector<cplx> xi_;
};

// Amplitudes c(j_p, j_s, sigma) of a state with at most one probe and one
// signal excitation. A missing excitation collapses its axis to length 1, so
// the same container covers the vacuum, probe-only, signal-only and
// two-excitation sectors. Layout: index = (j_p * ns + j_s) * nb + sigma,
// sigma = 0 forward, 1 backward.
struct Occupation {
    bool probe = true;
    bool signal = true;
    bool operator==(const Occupation&) const = default;
};

class SectorState {
public:
    SectorState(const Grid& grid, Occupation occ);

    const Grid& grid() const noexcept { return grid_; }
    Occupation occupation() const noexcept { return occ_; }
    std::size_t probe_cells() const noexcept { return np_; }
    std::size_t signal_cells() const noexcept { return ns_; }
    std::size_t branches() const noexcept { return nb_; }

    std::size_t index(std::size_t jp, std::size_t js, std::size_t b) const noexcept
    {
        return (jp * ns_ + js) * nb_ + b;
    }
    cplx& operator()(std::size_t jp, std::size_t js, std::size_t b) { return amp[index(jp, js, b)]; }
    cplx operator()(std::size_t jp, std::size_t js, std::size_t b) const { return amp[index(jp, js, b)]; }

    double norm2() const;
    // Forward / backward branch populations (1 and 0 when no signal).
    double branch_population(std::size_t b) const;

    std::vector<cplx> amp;
    double t = 0;

private:
    Grid grid_;
    Occupation occ_;
    std::size_t np_, ns_, nb_;
};

using TwoPhotonState = SectorState;

// |1_p> (x) |1_+> (x) |0_->, or the single-excitation / vacuum variants
// (pass nullptr for an absent wavepacket).
SectorState product_state(const Grid& grid, const SinglePhotonWavepacket* probe,
                          const SinglePhotonWavepacket* signal);

cplx overlap(const SectorState& a, const SectorState& b);  // <a|b>
double fidelity(const SectorState& a, const SectorState& b);  // |<a|b>|^2 / (|a|^2 |b|^2)

struct HamiltonianTerms {
    bool probe_kinetic = true;
    bool signal_kinetic = true;
    bool bragg = true;
    bool interaction = true;
};

struct HamiltonianOptions {
    HamiltonianTerms terms{};
    // Width (in cells) of the normalized periodic Gaussian that discretizes the
    // contact delta(z_p - z_s). 0 selects the single-cell delta 1/dz.
    double contact_width_cells = 2.0;
    // Normalization length in (1/L) int I dz = 1; 0 uses the grid length.
    double length = 0;
};

// Two-excitation Hamiltonian (hbar = 1):
//   H = v_p k_p + sigma v_s k_s - beta sigma_x - eta L K(z_p - z_s)
// with K the discretized contact kernel, sum_j K_j dz = 1. Kinetic terms are
// diagonal in k, the rest in z. Matrix-free.
class TwoPhotonHamiltonian {
public:
    TwoPhotonHamiltonian(const Grid& grid, const PolaritonRates& rates,
                         const HamiltonianOptions& options = {});

    const Grid& grid() const noexcept { return grid_; }
    const PolaritonRates& rates() const noexcept { return rates_; }
    const HamiltonianOptions& options() const noexcept { return options_; }
    double length() const noexcept { return length_; }

    // Kernel K as a function of (j_p - j_s) mod N.
    const std::vector<double>& contact_kernel() const noexcept { return kernel_; }

    // H |psi>
    SectorState apply(const SectorState& psi) const;

private:
    Grid grid_;
    PolaritonRates rates_;
    HamiltonianOptions options_;
    double length_;
    std::vector<double> kernel_;
};

TwoPhotonHamiltonian build_two_photon_hamiltonian(const Grid& grid, const PolaritonRates& rates,
                                                  const HamiltonianOptions& options = {});

// Strang-split propagator: kinetic half-steps in k-space around an exact
// local step (Bragg rotation times contact phase; the two commute).
class TrotterPropagator {
public:
    TrotterPropagator(const TwoPhotonHamiltonian& h, Occupation occ, double dt);

    double dt() const noexcept { return dt_; }
    void advance(SectorState& psi, std::size_t steps) const;

private:
    void kinetic(SectorState& psi, const std::vector<cplx>& phases) const;
    void local(SectorState& psi) const;

    const TwoPhotonHamiltonian* h_;
    Occupation occ_;
    double dt_;
    std::vector<cplx> half_phase_;
    std::vector<cplx> full_phase_;
    std::vector<cplx> contact_phase_;
    std::unique_ptr<FftPlan> fft_;
};

struct TrotterOptions {
    // Largest relative norm drift tolerated (only when eta is real).
    double norm_tolerance = 1e-10;
};

// Evolves to psi.t + T with steps of at most dt.
SectorState trotter_evolve(const SectorState& psi, const TwoPhotonHamiltonian& h, double T,
                           double dt, const TrotterOptions& options = {});

// Exact evolution for eta = 0 (each k decouples into a 2x2 problem).
SectorState free_evolve(const SectorState& psi, const PolaritonRates& rates, double T,
                        const HamiltonianTerms& terms = {});

// Output after the probe has fully traversed:
//   e^{i eta L/v_p} |1_p> (x) [cos(beta t)|1_+>|0_-> + i sin(beta t)|0_+>|1_->]
// with the probe translated by v_p t_out and |1_-> = sum_q xi_+^q |1_-^{-q}>.
// `length` defaults to the grid length.
SectorState closed_form_output(const SinglePhotonWavepacket& in_p,
                               const SinglePhotonWavepacket& in_plus, const PolaritonRates& rates,
                               double t_out, double length = 0);

// Fourier amplitudes of a backward-branch envelope labelled the way the
// backward modes are: entry for DFT bin q holds the coefficient of e^{-iqz}.
std::vector<cplx> backward_mode_amplitudes(const Grid& grid, const std::vector<cplx>& cells);

// Signal amplitudes c(js, sigma) left after projecting the probe onto `probe`.
std::vector<cplx> project_probe(const SectorState& psi, const std::vector<cplx>& probe);

struct CphaseRuns {
    cplx vacuum{1, 0};
    cplx probe_only;
    cplx signal_only;
    cplx both;
};

// Evolves the four occupation variants with the full Hamiltonian and records
// each output's overlap with the interaction-free output.
CphaseRuns run_cphase_variants(const SinglePhotonWavepacket& in_p,
                               const SinglePhotonWavepacket& in_plus, const TwoPhotonHamiltonian& h,
                               double T, double dt);

struct CphaseResult {
    double phi_cond = 0;      // in [0, 2 pi)
    double global_phase = 0;  // fitted against the target gate
    double operator_distance = 0;
};

// phi_cond = arg(both) - arg(probe_only) - arg(signal_only) + arg(vacuum),
// plus the distance of diag(vacuum, probe_only, signal_only, both) from
// diag(1, 1, 1, e^{i phi_target}) up to a global phase.
CphaseResult conditional_phase_extract(const CphaseRuns& runs, double phi_target,
                                       double min_magnitude = 1e-3);

// JSON snapshot: {"n_z", "length", "t", "occupation", "layout", "amplitudes": [[re, im], ...]}.
void write_state_json(std::ostream& os, const SectorState& psi);
SectorState read_state_json(std::istream& is);

// ---------------------------------------------------------------------------
// Multimode coherent inputs.

struct FourierComponent {
    double q = 0;
    cplx amplitude;
};

// alpha_p(tau) = sum alpha_p^q e^{-i q c tau}, alpha_+(z) = sum alpha_+^q e^{iqz}.
struct CoherentInput {
    std::vector<FourierComponent> probe;
    std::vector<FourierComponent> signal;

    cplx alpha_p(double tau, double c) const;
    cplx alpha_plus(double z) const;
};

struct CoherentFields {
    cplx probe;
    cplx forward;
    cplx backward;
};

struct CoherentSettings {
    double length = 0;       // L in the field normalization
    double c = kSpeedOfLight;
    int cells = 512;         // midpoint panels for both integrals
};

// Field expectation values for |alpha_p> (x) |alpha_+> (x) |0_->:
//   <E_p>  = alpha_p(tau) exp[(e^{i phi c/v_s} - 1)/L int_0^z |alpha_+|^2 dz']
//   <E_+-> = alpha_+(z) exp[(e^{i phi} - 1) c/L int_0^t |alpha_p(t' - z/v_p)|^2 dt'] {cos, i sin}(beta t)
// with phi = eta L / v_p.
CoherentFields coherent_expectation(const CoherentInput& input, const PolaritonRates& rates,
                                    const CoherentSettings& settings, double z, double t);

// Classical probe phase (eta c / (v_p v_s)) int_0^z |alpha_+|^2 dz'.
double coherent_classical_probe_phase(const CoherentInput& input, const PolaritonRates& rates,
                                      const CoherentSettings& settings, double z);

}  // namespace xpm
