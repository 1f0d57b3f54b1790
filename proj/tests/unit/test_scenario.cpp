#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "xpm/errors.hpp"
#include "xpm/scenario.hpp"

using namespace xpm;

TEST(Scenario, DefaultIsPreset)
{
    const Scenario s = default_scenario();
    EXPECT_EQ(s.preset, "paper-sec3");
    EXPECT_EQ(s.params, preset("paper-sec3"));
    EXPECT_EQ(s.mode, RunMode::design);
    EXPECT_EQ(s.threshold, 10.0);
    EXPECT_FALSE(s.rates.any());
    // Resolved envelope defaults.
    const DerivedRates d = derive_rates(s.params);
    EXPECT_DOUBLE_EQ(s.pulses.signal.width, d.z_loc / 4);
    EXPECT_DOUBLE_EQ(s.pulses.signal.center, s.params.L / 2);
    EXPECT_DOUBLE_EQ(s.pulses.probe.width, d.v_p * s.params.T_p / 4);
}

TEST(Scenario, EmptyDocumentIsDefault)
{
    EXPECT_EQ(parse_scenario(""), default_scenario());
    EXPECT_EQ(parse_scenario("{}"), default_scenario());
}

TEST(Scenario, SerializeRoundTrip)
{
    Scenario s = default_scenario();
    s.mode = RunMode::quantum;
    s.params.Omega_dB = 1.0 / 3.0 * 1e8;
    s.rates.eta_im = 0.0;
    s.rates.beta = 1.234567890123e11;
    s.quantum.phi = kPi;
    s.quantum.probe.shape = PulseShape::sech;
    s.classical.scheme = SplittingScheme::lie;
    s.outputs.directory = "out dir";
    s.outputs.formats = {OutputFormat::csv, OutputFormat::plot_data};
    s.seed = 42;
    const std::string text = serialize_scenario(s);
    const Scenario back = parse_scenario(text);
    EXPECT_EQ(back, s) << text;
    EXPECT_EQ(serialize_scenario(back), text);
    EXPECT_EQ(parse_scenario(scenario_json(s)), s);
}

TEST(Scenario, OverridesOnTopOfPreset)
{
    const Scenario s = parse_scenario(R"(
mode: classical
params:
  Omega_dB_rad_per_s: 4.0e7
classical:
  n_z: 64
rates:
  kappa_s_per_s: 0
)");
    EXPECT_EQ(s.mode, RunMode::classical);
    EXPECT_EQ(s.params.Omega_dB, 4e7);
    EXPECT_EQ(s.params.Delta_B, preset("paper-sec3").Delta_B);
    EXPECT_EQ(s.classical.n_z, 64u);
    ASSERT_TRUE(s.rates.kappa_s.has_value());
    EXPECT_EQ(*s.rates.kappa_s, 0.0);
    PolaritonRates r;
    r.kappa_s = 5;
    r.beta = 2;
    EXPECT_EQ(s.rates.apply(r).kappa_s, 0.0);
    EXPECT_EQ(s.rates.apply(r).beta, 2.0);
}

TEST(Scenario, NegativeLengthNamesL)
{
    try {
        parse_scenario("params:\n  L_cm: -0.1\n");
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        ASSERT_EQ(e.fields().size(), 1u);
        EXPECT_EQ(e.fields()[0], "L");
    }
}

TEST(Scenario, CollectsEveryInvalidField)
{
    try {
        parse_scenario("params:\n  L_cm: 0\n  S_cm2: -1\nquantum:\n  t_out: 0.5\n  n_z: 12\n");
        FAIL();
    } catch (const ValidationError& e) {
        const std::vector<std::string> want{"L", "S", "quantum.n_z", "quantum.t_out"};
        EXPECT_EQ(e.fields(), want);
    }
}

TEST(Scenario, UnknownKeyReportsPathAndLine)
{
    try {
        parse_scenario("mode: design\nparams:\n  L_cm: 0.1\n  Omega_db: 3\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.path(), "params.Omega_db");
        EXPECT_EQ(e.line(), 4);
    }
}

TEST(Scenario, LaxModeWarns)
{
    std::vector<std::string> warnings;
    ParseOptions o;
    o.strict = false;
    o.warnings = &warnings;
    const Scenario s = parse_scenario("colour: blue\nparams:\n  Omega_db: 3\n", o);
    EXPECT_EQ(s.params, preset("paper-sec3"));
    ASSERT_EQ(warnings.size(), 2u);
    const bool named = warnings[0].find("colour") != std::string::npos
                       || warnings[1].find("colour") != std::string::npos;
    EXPECT_TRUE(named);
}

TEST(Scenario, TypeErrors)
{
    EXPECT_THROW(parse_scenario("params:\n  L_cm: long\n"), ConfigError);
    EXPECT_THROW(parse_scenario("mode: fast\n"), ConfigError);
    EXPECT_THROW(parse_scenario("classical:\n  n_z: -4\n"), ConfigError);
    EXPECT_THROW(parse_scenario("quantum:\n  oracle: maybe\n"), ConfigError);
    EXPECT_THROW(parse_scenario("outputs:\n  formats: [json, pdf]\n"), ConfigError);
    EXPECT_THROW(parse_scenario("preset: lab-2\n"), ConfigError);
    EXPECT_THROW(parse_scenario("- 1\n- 2\n"), ConfigError);
    EXPECT_THROW(parse_scenario("params: [1, 2\n"), ConfigError);
}

TEST(Scenario, YamlSyntaxErrorHasLine)
{
    try {
        parse_scenario("mode: design\nparams:\n  L_cm: [0.1\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_GT(e.line(), 0);
    }
}

TEST(Scenario, PresetOptionWins)
{
    ParseOptions o;
    o.preset = "paper-sec3";
    EXPECT_EQ(parse_scenario("preset: whatever\n", o).preset, "paper-sec3");
}

TEST(Scenario, DesignOnlyAlias)
{
    EXPECT_EQ(parse_scenario("mode: design-only\n").mode, RunMode::design);
}

TEST(Scenario, LoadFromFile)
{
    const auto path = std::filesystem::temp_directory_path() / "xpm_scenario_test.yaml";
    {
        std::ofstream f(path);
        f << "mode: quantum\nquantum:\n  phi: 3.14\n";
    }
    const Scenario s = load_scenario(path.string());
    EXPECT_EQ(s.mode, RunMode::quantum);
    EXPECT_EQ(s.quantum.phi.value(), 3.14);
    std::filesystem::remove(path);
    EXPECT_THROW(load_scenario(path.string()), ConfigError);
}

TEST(Scenario, WithValue)
{
    const Scenario s = default_scenario();
    const Scenario t = with_value(s, "params.Omega_dB_rad_per_s", 3e7);
    EXPECT_EQ(t.params.Omega_dB, 3e7);
    EXPECT_EQ(with_value(s, "rates.beta_rad_per_s", 5.0).rates.beta.value(), 5.0);
    EXPECT_EQ(with_value(s, "quantum.phi", 1.0).quantum.phi.value(), 1.0);
    EXPECT_THROW(with_value(s, "params.nope", 1.0), ConfigError);
    EXPECT_THROW(with_value(s, "mode", 1.0), ConfigError);
    EXPECT_THROW(with_value(s, "params.L_cm", -1.0), ValidationError);
    EXPECT_TRUE(is_value_path(s, "params.L_cm"));
    EXPECT_TRUE(is_value_path(s, "rates.eta_re_per_s"));
    EXPECT_FALSE(is_value_path(s, "params.nope"));
    EXPECT_FALSE(is_value_path(s, "mode"));
}

TEST(Scenario, SweepSectionIgnoredByParser)
{
    EXPECT_NO_THROW(parse_scenario("sweep:\n  axes: []\n"));
}
