#include <cmath>

#include <gtest/gtest.h>

#include "xpm/errors.hpp"
#include "xpm/params.hpp"

using namespace xpm;

namespace {

// Frozen from tests/oracles/golden_rates.py (mpmath, 50 digits).
constexpr double kG = 375604135.69947051;
constexpr double kThetaA = 1.5287252814523405;
constexpr double kThetaB = 1.5691124930077024;
constexpr double kVs = 53031152.336893987;
constexpr double kVp = 84999.962048628861;
constexpr double kVsPrime = 531241.85511427137;
constexpr double kKappaS = 9982.3107116534286;
constexpr double kKappaP = 9999.9716470645674;
constexpr double kEtaRe = 2495570.6022180802;
constexpr double kEtaIm = 124778.53011090401;
constexpr double kBeta = 88446441732.857047;
constexpr double kPhi = 2.9359667252443631;
constexpr double kPhiApprox = 2.9411694446826748;
constexpr double kKappaD = 3.167033174627698;
constexpr double kTint = 1.1764711135140219e-6;
constexpr double kF = 0.97676195661331714;
constexpr double kZloc = 0.021249674204570855;
constexpr double kBoost = 9.9912399653581008;
constexpr double kDwp = 5830958.8593697261;
constexpr double kOD = 188.23484445969119;

void expect_rel(double got, double want, double tol = 1e-12)
{
    EXPECT_NEAR(got, want, tol * std::abs(want)) << "got " << got << " want " << want;
}

}  // namespace

TEST(Params, PresetDerivesGoldenRates)
{
    const DerivedRates r = derive_rates(preset("paper-sec3"));
    expect_rel(r.g_A, kG);
    expect_rel(r.g_B, kG);
    expect_rel(r.g_B_prime, kG);
    expect_rel(r.N_A, 1000.0);
    expect_rel(r.theta_A, kThetaA);
    expect_rel(r.theta_B, kThetaB);
    expect_rel(r.v_s, kVs, 1e-11);
    expect_rel(r.v_p, kVp, 1e-10);
    expect_rel(r.v_s_prime, kVsPrime, 1e-11);
    expect_rel(r.kappa_s, kKappaS);
    expect_rel(r.kappa_p, kKappaP);
    expect_rel(r.eta.real(), kEtaRe, 1e-11);
    expect_rel(r.eta.imag(), kEtaIm, 1e-11);
    expect_rel(r.beta, kBeta, 1e-11);
    expect_rel(r.phi, kPhi, 1e-10);
    expect_rel(r.phi_closed_form, kPhi, 1e-10);
    expect_rel(r.phi_approx, kPhiApprox);
    expect_rel(r.kappa_d_bound, kKappaD, 1e-10);
    expect_rel(r.t_int, kTint, 1e-10);
    expect_rel(r.F, kF, 1e-12);
    expect_rel(r.z_loc, kZloc, 1e-11);
    expect_rel(r.amplitude_boost, kBoost, 1e-11);
    expect_rel(r.delta_omega_p_max, kDwp);
    expect_rel(r.optical_depth_A, kOD);
    EXPECT_FALSE(r.cross_absorption_warning);
}

TEST(Params, ConstraintRatiosMatchGolden)
{
    const PhysicalParams p = preset("paper-sec3");
    const ConstraintReport c = validate_constraints(p, derive_rates(p));
    const std::pair<const char*, double> want[] = {
        {"optical_thickness", 188.23484445969119}, {"trapping", 4.7059545025160793},
        {"long_probe", 4.0000595411644085},        {"probe_bandwidth", 5.8309588593697261},
        {"absorption_time", 85.000203049155743},   {"signal_bandwidth", 94284.204277444671},
        {"dispersive_detuning", 10.0},             {"drive_ordering", 10.0},
    };
    ASSERT_EQ(c.items.size(), std::size(want));
    for (const auto& [name, ratio] : want) expect_rel(c.at(name).ratio, ratio, 1e-10);
    EXPECT_TRUE(c.at("trapping").passed);
    EXPECT_TRUE(c.at("drive_ordering").passed);
    EXPECT_THROW(c.at("nonsense"), std::exception);
}

TEST(Params, MuchLessUsesThreshold)
{
    const PhysicalParams p = preset("paper-sec3");
    const DerivedRates r = derive_rates(p);
    EXPECT_TRUE(validate_constraints(p, r, 10.0).at("dispersive_detuning").passed);
    EXPECT_FALSE(validate_constraints(p, r, 10.5).at("dispersive_detuning").passed);
}

TEST(Params, CouplingConstantFormula)
{
    const double g = coupling_constant(1e7, 1e5, 1e-8, 0.1, kSpeedOfLight);
    EXPECT_NEAR(g, std::sqrt(3 * kPi * kSpeedOfLight * 1e7 / (2 * 1e10 * 1e-8 * 0.1)), 1e-3);
    EXPECT_EQ(coupling_constant(0, 1e5, 1e-8, 0.1), 0.0);
    EXPECT_THROW(coupling_constant(1e7, 1e5, -1, 0.1), DomainError);
}

TEST(Params, MixingAngle)
{
    EXPECT_NEAR(mixing_angle(1.0, 4.0, 2.0), kPi / 4, 1e-15);
    EXPECT_THROW(mixing_angle(1.0, 4.0, 0.0), DegenerateDriveError);
    EXPECT_THROW(mixing_angle(1.0, 0.5, 1.0), DomainError);
}

TEST(Params, ZeroDriveIsDegenerate)
{
    PhysicalParams p = preset("paper-sec3");
    p.Omega_dB = 0;
    EXPECT_THROW(derive_rates(p), ValidationError);
}

TEST(Params, ValidationNamesEveryBadField)
{
    PhysicalParams p = preset("paper-sec3");
    p.L = -1;
    p.gamma_d = std::nan("");
    try {
        validate(p);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        ASSERT_EQ(e.fields().size(), 2u);
        EXPECT_EQ(e.fields()[0], "L");
        EXPECT_EQ(e.fields()[1], "gamma_d");
    }
}

TEST(Params, CrossAbsorptionWarning)
{
    PhysicalParams p = preset("paper-sec3");
    p.Delta_B = 0.5 * p.gamma_d;
    EXPECT_TRUE(derive_rates(p).cross_absorption_warning);
}

TEST(Params, BraggMismatchWarning)
{
    PhysicalParams p = preset("paper-sec3");
    EXPECT_LT(bragg_mismatch(p), 1e-12);
    EXPECT_FALSE(derive_rates(p).bragg_warning);
    p.p_s *= 1.2;
    EXPECT_TRUE(derive_rates(p).bragg_warning);
}

TEST(Params, PhaseScalesInverselyWithDrive)
{
    PhysicalParams p = preset("paper-sec3");
    const double phi0 = approx_phase(p).phi;
    p.Omega_dB *= 2;
    EXPECT_NEAR(approx_phase(p).phi, phi0 / 4, 1e-12 * phi0);
    p.Delta_B *= 3;
    EXPECT_NEAR(approx_phase(p).phi, phi0 / 12, 1e-12 * phi0);
}

TEST(Params, ApproxRegimeFlag)
{
    PhysicalParams p = preset("paper-sec3");
    const ApproxPhase a = approx_phase(p);
    EXPECT_TRUE(a.regime_ok);
    EXPECT_GT(a.coupling_ratio, 10.0);
    EXPECT_NEAR(a.wavevector_ratio, 1.0, 1e-15);
    p.Omega_dA = 5e9;
    EXPECT_FALSE(approx_phase(p).regime_ok);
}

TEST(Params, PresetNames)
{
    const auto names = preset_names();
    ASSERT_EQ(names.size(), 1u);
    EXPECT_EQ(names[0], "paper-sec3");
    EXPECT_THROW(preset("nope"), std::exception);
}
