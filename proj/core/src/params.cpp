#include "xpm/params.hpp"

#include <algorithm>
#include <cmath>

#include "xpm/errors.hpp"

namespace xpm {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0; }

}  // namespace

std::vector<std::string> invalid_fields(const PhysicalParams& p)
{
    std::vector<std::string> bad;
    auto need = [&](double x, const char* name) {
        if (!positive_finite(x)) bad.emplace_back(name);
    };
    need(p.L, "L");
    need(p.S, "S");
    need(p.rho_A, "rho_A");
    need(p.rho_B, "rho_B");
    need(p.omega_p, "omega_p");
    need(p.omega_signal, "omega_signal");
    need(p.Omega_dA, "Omega_dA");
    need(p.Omega_dA_prime, "Omega_dA_prime");
    need(p.Omega_dB, "Omega_dB");
    if (!std::isfinite(p.Delta_B) || p.Delta_B == 0) bad.emplace_back("Delta_B");
    need(p.gamma_a, "gamma_a");
    need(p.gamma_d, "gamma_d");
    need(p.gamma_bc, "gamma_bc");
    need(p.delta_omega_PBG, "delta_omega_PBG");
    need(p.p_s, "p_s");
    need(p.T_in, "T_in");
    need(p.T_p, "T_p");
    need(p.c, "c");
    need(p.sigma_abs_A, "sigma_abs_A");
    return bad;
}

void validate(const PhysicalParams& p)
{
    auto bad = invalid_fields(p);
    if (!bad.empty()) throw ValidationError(std::move(bad));
}

double bragg_mismatch(const PhysicalParams& p)
{
    const double k = p.omega_signal / p.c;
    const double k_bragg = kPi / p.p_s;
    return std::abs(k - k_bragg) / k_bragg;
}

double coupling_constant(double gamma, double k, double S, double L, double c)
{
    if (!(gamma >= 0) || !positive_finite(k) || !positive_finite(S) || !positive_finite(L)
        || !positive_finite(c))
        throw DomainError("coupling_constant: inputs must be positive");
    return std::sqrt(3.0 * kPi * c * gamma / (2.0 * k * k * S * L));
}

double mixing_angle(double g, double n_atoms, double omega_d)
{
    if (omega_d == 0)
        throw DegenerateDriveError("mixing_angle: zero drive, polariton is purely atomic");
    if (!positive_finite(g) || !(n_atoms >= 1) || !positive_finite(std::abs(omega_d)))
        throw DomainError("mixing_angle: need g > 0, N >= 1, Omega_d > 0");
    return std::atan(g * std::sqrt(n_atoms) / std::abs(omega_d));
}

double distortion_rate_bound(double v_s, double c, double L, double delta_omega_PBG)
{
    return 2.0 * v_s * v_s * v_s / (kPi * c * L * L * delta_omega_PBG);
}

DerivedRates derive_rates(const PhysicalParams& p, const DeriveOptions& opts)
{
    validate(p);

    DerivedRates r;
    r.k_p = p.omega_p / p.c;
    r.k_s = p.omega_signal / p.c;

    // A and B share gamma_a; the signal-side transitions see k_s, the probe k_p.
    r.g_A = coupling_constant(p.gamma_a, r.k_s, p.S, p.L, p.c);
    r.g_B = coupling_constant(p.gamma_a, r.k_p, p.S, p.L, p.c);
    r.g_B_prime = coupling_constant(p.gamma_d, r.k_s, p.S, p.L, p.c);
    r.N_A = p.rho_A * p.S * p.L;
    r.N_B = p.rho_B * p.S * p.L;

    r.theta_A = mixing_angle(r.g_A, r.N_A, p.Omega_dA);
    r.theta_A_prime = mixing_angle(r.g_A, r.N_A, p.Omega_dA_prime);
    r.theta_B = mixing_angle(r.g_B, r.N_B, p.Omega_dB);

    // cos^2 theta = Omega^2 / (Omega^2 + g^2 N) avoids cancellation near pi/2.
    auto photonic = [](double g, double n, double omega) {
        const double o2 = omega * omega;
        return o2 / (o2 + g * g * n);
    };
    const double cos2_A = photonic(r.g_A, r.N_A, p.Omega_dA);
    const double cos2_Ap = photonic(r.g_A, r.N_A, p.Omega_dA_prime);
    const double cos2_B = photonic(r.g_B, r.N_B, p.Omega_dB);
    const double sin2_A = 1.0 - cos2_A;
    const double sin2_B = 1.0 - cos2_B;
    const double tan2_B = r.g_B * r.g_B * r.N_B / (p.Omega_dB * p.Omega_dB);

    r.v_s = p.c * cos2_A;
    r.v_p = p.c * cos2_B;
    r.v_s_prime = p.c * cos2_Ap;

    r.kappa_s = p.gamma_bc * sin2_A;
    r.kappa_p = p.gamma_bc * sin2_B;

    const double eta_re = cos2_A * sin2_B * r.g_B_prime * r.g_B_prime / p.Delta_B;
    r.eta = cplx(eta_re, eta_re * p.gamma_d / (2.0 * p.Delta_B));
    r.beta = 0.5 * p.delta_omega_PBG * cos2_A;

    r.t_int = p.L / r.v_p;
    r.phi = r.eta.real() * r.t_int;
    r.phi_closed_form =
        r.g_B_prime * r.g_B_prime * p.L * cos2_A * tan2_B / (p.c * p.Delta_B);
    if (std::abs(r.phi - r.phi_closed_form) > 1e-10 * std::abs(r.phi_closed_form))
        throw NumericalError("derive_rates: Re(eta) L / v_p disagrees with the closed-form phase");

    r.kappa_d_bound = distortion_rate_bound(r.v_s, p.c, p.L, p.delta_omega_PBG);
    r.F = std::exp(-(r.kappa_d_bound + r.kappa_s + r.kappa_p) * r.t_int);
    r.z_loc = p.T_in * r.v_s_prime;
    r.amplitude_boost = std::sqrt(r.v_s / r.v_s_prime);
    r.delta_omega_p_max = p.Omega_dB * p.Omega_dB * r.k_p
                          / (p.gamma_a * std::sqrt(1.5 * kPi * p.rho_B * p.L));
    r.optical_depth_A = p.sigma_abs_A * p.rho_A * p.L;
    r.phi_approx = approx_phase(p).phi;

    r.cross_absorption_warning = std::abs(p.Delta_B) <= p.gamma_d;
    r.bragg_mismatch = bragg_mismatch(p);
    r.bragg_warning = r.bragg_mismatch > opts.bragg_tolerance;
    return r;
}

ApproxPhase approx_phase(const PhysicalParams& p, double much_threshold)
{
    ApproxPhase a;
    const double k_p = p.omega_p / p.c;
    a.phi = 3.0 * kPi * p.gamma_d / (2.0 * k_p * k_p * p.Delta_B * p.S)
            * (p.Omega_dA / p.Omega_dB) * (p.Omega_dA / p.Omega_dB) * (p.rho_B / p.rho_A);

    const double k_s = p.omega_signal / p.c;
    a.wavevector_ratio = k_s / k_p;
    if (positive_finite(p.gamma_a) && positive_finite(p.S) && positive_finite(p.L)) {
        const double g2 = 3.0 * kPi * p.c * p.gamma_a / (2.0 * k_s * k_s * p.S * p.L);
        a.coupling_ratio = g2 * p.rho_A * p.S * p.L / (p.Omega_dA * p.Omega_dA);
    }
    a.regime_ok = a.coupling_ratio >= much_threshold && std::abs(a.wavevector_ratio - 1.0) <= 0.01;
    return a;
}

bool ConstraintReport::all_passed() const
{
    return std::all_of(items.begin(), items.end(), [](const Constraint& c) { return c.passed; });
}

const Constraint& ConstraintReport::at(const std::string& name) const
{
    for (const auto& c : items)
        if (c.name == name) return c;
    throw DomainError("no constraint named '" + name + "'");
}

ConstraintReport validate_constraints(const PhysicalParams& p, const DerivedRates& r,
                                      double much_threshold)
{
    ConstraintReport rep;
    rep.threshold = much_threshold;
    rep.bragg_warning = r.bragg_warning;
    rep.cross_absorption_warning = r.cross_absorption_warning;

    auto add = [&](std::string name, Relation rel, double lhs, double rhs) {
        Constraint c{std::move(name), rel, lhs, rhs, rhs / lhs, false};
        c.passed = rel == Relation::less ? c.ratio > 1.0 : c.ratio >= much_threshold;
        rep.items.push_back(std::move(c));
    };

    // Adiabatic storage/retrieval needs an optically thick medium.
    add("optical_thickness", Relation::much_less, 1.0, r.optical_depth_A);
    // The compressed signal must fit inside the medium.
    add("trapping", Relation::less, r.z_loc, p.L);
    // Long-probe limit: probe flat over the trapped signal.
    add("long_probe", Relation::less, r.z_loc, r.v_p * p.T_p);
    // Probe spectrum inside the EIT window set by the medium length.
    add("probe_bandwidth", Relation::less, 1.0 / p.T_p, r.delta_omega_p_max);
    const double kappa_max = std::max({r.kappa_d_bound, r.kappa_s, r.kappa_p});
    add("absorption_time", Relation::much_less, r.t_int * kappa_max, 1.0);
    // Signal bandwidth estimate dq ~ v_s/(c L) against the trapping edge beta/v_s.
    add("signal_bandwidth", Relation::much_less, r.v_s / (p.c * p.L), r.beta / r.v_s);
    add("dispersive_detuning", Relation::much_less, p.gamma_d, std::abs(p.Delta_B));
    add("drive_ordering", Relation::less, p.Omega_dA_prime, p.Omega_dA);
    return rep;
}

std::vector<std::string> preset_names() { return {"paper-sec3"}; }

PhysicalParams preset(const std::string& name)
{
    if (name != "paper-sec3") throw DomainError("unknown preset '" + name + "'");
    PhysicalParams p;
    p.L = 0.1;
    p.S = 1e-8;
    p.rho_A = 1e12;
    p.rho_B = 1e12;
    p.omega_p = 3e15;
    p.omega_signal = 3e15;
    p.Omega_dA = 5e8;
    p.Omega_dA_prime = 5e7;
    p.Omega_dB = 2e7;
    p.Delta_B = 1e8;
    p.gamma_a = 1e7;
    p.gamma_d = 1e7;
    p.gamma_bc = 1e4;
    p.delta_omega_PBG = 1e14;
    p.c = kSpeedOfLight;
    p.p_s = kPi * p.c / p.omega_signal;
    p.T_in = 4e-8;
    p.T_p = 1e-6;
    // 3 lambda^2 / (2 pi) at the signal carrier.
    const double lambda = 2.0 * kPi * p.c / p.omega_signal;
    p.sigma_abs_A = 3.0 * lambda * lambda / (2.0 * kPi);
    return p;
}

}  // namespace xpm
