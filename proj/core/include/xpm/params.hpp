#pragma once

#include <complex>
#include <string>
#include <vector>

namespace xpm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 2.99792458e10;  // cm/s

// Raw experimental inputs. CGS-style units throughout: cm, s, rad/s.
struct PhysicalParams {
    double L = 0;                 // medium length [cm]
    double S = 0;                 // beam cross-section [cm^2]
    double rho_A = 0;             // dopant density, species A [cm^-3]
    double rho_B = 0;             // dopant density, species B [cm^-3]
    double omega_p = 0;           // probe carrier [rad/s]
    double omega_signal = 0;      // signal carrier inside the bandgap [rad/s]
    double Omega_dA = 0;          // drive Rabi frequencies [rad/s]
    double Omega_dA_prime = 0;
    double Omega_dB = 0;
    double Delta_B = 0;           // signal detuning from |c>_B -> |d>_B [rad/s]
    double gamma_a = 0;           // excited-state decay, both species [1/s]
    double gamma_d = 0;           // decay of |d>_B [1/s]
    double gamma_bc = 0;          // Raman coherence decay, both species [1/s]
    double delta_omega_PBG = 0;   // bandgap width [rad/s]
    double p_s = 0;               // structure period [cm]
    double T_in = 0;              // input signal duration [s]
    double T_p = 0;               // probe duration [s]
    double c = kSpeedOfLight;     // [cm/s]
    double sigma_abs_A = 0;       // resonant absorption cross-section of |b>_A -> |a'>_A [cm^2]

    bool operator==(const PhysicalParams&) const = default;
};

// Names of violated invariants; empty when the set is usable.
std::vector<std::string> invalid_fields(const PhysicalParams& p);

// Throws ValidationError listing every violated invariant.
void validate(const PhysicalParams& p);

// |k - pi/p_s| / (pi/p_s) with k = omega_signal / c.
double bragg_mismatch(const PhysicalParams& p);

// Coefficients of the polariton equations of motion. This is everything the
// dynamics, the closed forms and the quantum sector need, so desk-scale runs
// can build one directly without a full PhysicalParams.
struct PolaritonRates {
    double v_s = 0;      // signal group velocity [cm/s]
    double v_p = 0;      // probe group velocity [cm/s]
    double beta = 0;     // Bragg reflection rate [rad/s]
    cplx eta{0, 0};      // cross-coupling rate [1/s]
    double kappa_s = 0;  // [1/s]
    double kappa_p = 0;  // [1/s]
};

struct DerivedRates {
    double g_A = 0, g_B = 0, g_B_prime = 0;
    double N_A = 0, N_B = 0;
    double theta_A = 0, theta_A_prime = 0, theta_B = 0;
    double v_s = 0, v_p = 0, v_s_prime = 0;
    double kappa_s = 0, kappa_p = 0;
    double kappa_d_bound = 0;
    cplx eta{0, 0};
    double beta = 0;
    double phi = 0;             // Re(eta) L / v_p
    double phi_closed_form = 0; // g'^2 L cos^2(theta_A) tan^2(theta_B) / (c Delta_B)
    double phi_approx = 0;
    double F = 0;
    double z_loc = 0;
    double amplitude_boost = 0;
    double t_int = 0;
    double delta_omega_p_max = 0;
    double optical_depth_A = 0;
    double k_p = 0, k_s = 0;

    // Delta_B <= gamma_d: cross-absorption is not negligible.
    bool cross_absorption_warning = false;
    // Carrier wavevector does not sit on the Bragg resonance pi/p_s.
    bool bragg_warning = false;
    double bragg_mismatch = 0;

    PolaritonRates polariton() const { return {v_s, v_p, beta, eta, kappa_s, kappa_p}; }
};

// g = sqrt(3 pi c gamma / (2 k^2 S L)). gamma = 0 gives g = 0.
double coupling_constant(double gamma, double k, double S, double L, double c = kSpeedOfLight);

// theta = atan(g sqrt(N) / Omega_d), in (0, pi/2).
double mixing_angle(double g, double n_atoms, double omega_d);

struct DeriveOptions {
    double bragg_tolerance = 0.05;
};

DerivedRates derive_rates(const PhysicalParams& p, const DeriveOptions& opts = {});

// Upper bound on the spatial-distortion rate of the trapped signal:
// 2 v_s^3 / (pi c L^2 delta_omega_PBG).
double distortion_rate_bound(double v_s, double c, double L, double delta_omega_PBG);

struct ApproxPhase {
    double phi = 0;
    double coupling_ratio = 0;   // g_A^2 N_A / Omega_dA^2
    double wavevector_ratio = 0; // k_s / k_p
    bool regime_ok = false;
};

// phi ~= 3 pi gamma_d / (2 k_p^2 Delta_B S) (Omega_dA/Omega_dB)^2 (rho_B/rho_A),
// valid for g_A^2 N_A >> Omega_dA^2 with matched decay rates and wavevectors.
ApproxPhase approx_phase(const PhysicalParams& p, double much_threshold = 10.0);

enum class Relation { less, much_less };

// One inequality lhs < rhs (or lhs << rhs). `ratio` is rhs/lhs; a strict
// relation passes for ratio > 1, a "much" relation for ratio >= threshold.
struct Constraint {
    std::string name;
    Relation relation = Relation::less;
    double lhs = 0;
    double rhs = 0;
    double ratio = 0;
    bool passed = false;
};

struct ConstraintReport {
    double threshold = 10.0;
    std::vector<Constraint> items;
    bool bragg_warning = false;
    bool cross_absorption_warning = false;

    bool all_passed() const;
    const Constraint& at(const std::string& name) const;
};

ConstraintReport validate_constraints(const PhysicalParams& p, const DerivedRates& r,
                                      double much_threshold = 10.0);

// Built-in parameter sets. "paper-sec3" is the doped photonic-crystal design
// point; it is the only preset.
PhysicalParams preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace xpm
