// xpmsim: design, simulate and sweep the photonic-bandgap cross-phase gate.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "xpm/classical.hpp"
#include "xpm/errors.hpp"
#include "xpm/oracles.hpp"
#include "xpm/quantum.hpp"
#include "xpm/report.hpp"
#include "xpm/run.hpp"
#include "xpm/scenario.hpp"
#include "xpm/sweep.hpp"

namespace {

enum Exit { ok = 0, config_error = 2, constraint_failure = 3, numerical_failure = 4 };

struct Common {
    std::string preset;
    std::string config;
    std::string out_dir;
    std::vector<std::string> formats;
    bool strict_constraints = false;
    bool lax = false;
    std::optional<std::size_t> nz;
    std::optional<double> dt;
    std::string mode;
    std::size_t threads = 0;
};

void add_common(CLI::App* app, Common& c, bool dynamics)
{
    app->add_option("--preset", c.preset, "Built-in parameter set")->check(CLI::IsMember(xpm::preset_names()));
    app->add_option("--config", c.config, "Scenario file (YAML or JSON)")->check(CLI::ExistingFile);
    app->add_option("--out-dir", c.out_dir, "Output directory (default: $XPM_OUT_DIR)");
    app->add_option("--format", c.formats, "json, csv, plot-data")
        ->delimiter(',')
        ->check(CLI::IsMember({"json", "csv", "plot-data"}));
    app->add_flag("--strict-constraints", c.strict_constraints,
                  "Exit with status 3 when a regime constraint fails");
    app->add_flag("--lax", c.lax, "Warn about unknown config keys instead of failing");
    if (dynamics) {
        app->add_option("--nz", c.nz, "Grid cells (power of two)");
        app->add_option("--dt", c.dt, "Time step (s for classical, desk units for quantum)");
        app->add_option("--mode", c.mode, "Override the scenario mode")
            ->check(CLI::IsMember({"design", "classical", "quantum"}));
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw xpm::ConfigError(path, 0, "cannot open config file");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

xpm::Scenario load(const Common& c)
{
    std::vector<std::string> warnings;
    xpm::ParseOptions opts;
    opts.strict = !c.lax;
    opts.warnings = &warnings;
    if (!c.preset.empty()) opts.preset = c.preset;
    xpm::Scenario s = xpm::parse_scenario(c.config.empty() ? std::string{} : read_file(c.config), opts);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

    if (!c.mode.empty()) s.mode = xpm::run_mode_from_string(c.mode);
    if (c.nz) {
        if (s.mode == xpm::RunMode::quantum) s = xpm::with_value(s, "quantum.n_z", double(*c.nz));
        else s = xpm::with_value(s, "classical.n_z", double(*c.nz));
    }
    if (c.dt) {
        if (s.mode == xpm::RunMode::quantum) s = xpm::with_value(s, "quantum.dt", *c.dt);
        else s = xpm::with_value(s, "classical.dt_s", *c.dt);
    }
    if (!c.formats.empty()) {
        s.outputs.formats.clear();
        for (const auto& f : c.formats) s.outputs.formats.push_back(xpm::output_format_from_string(f));
    }
    return s;
}

std::string output_dir(const Common& c, const xpm::Scenario& s)
{
    if (!c.out_dir.empty()) return c.out_dir;
    if (const char* env = std::getenv("XPM_OUT_DIR"); env && *env) return env;
    return s.outputs.directory;
}

void print_summary(std::ostream& os, const xpm::RunReport& rep)
{
    const auto& d = rep.rates;
    os << std::setprecision(6);
    os << "phi            " << d.phi << " rad (" << d.phi / xpm::kPi << " pi)\n";
    os << "phi (approx)   " << rep.approx.phi << " rad" << (rep.approx.regime_ok ? "" : "  [outside regime]") << '\n';
    os << "fidelity F     " << d.F << '\n';
    os << "v_s, v_p       " << d.v_s << ", " << d.v_p << " cm/s\n";
    os << "beta           " << d.beta << " rad/s\n";
    os << "eta            " << d.eta.real() << (d.eta.imag() < 0 ? " - " : " + ")
       << std::abs(d.eta.imag()) << "i 1/s\n";
    if (d.bragg_warning) os << "warning: carrier is off the Bragg resonance by " << d.bragg_mismatch << '\n';
    if (d.cross_absorption_warning) os << "warning: |Delta_B| <= gamma_d, cross-absorption is not negligible\n";
    for (const auto& c : rep.constraints.items)
        os << (c.passed ? "  ok    " : "  FAIL  ") << std::left << std::setw(20) << c.name << std::right
           << " ratio " << c.ratio << '\n';
    if (const auto& c = rep.classical) {
        os << "classical: " << c->steps << " steps of " << c->dt << " s, exit phase "
           << c->probe_phase.mean << " rad, max deviation " << c->probe_phase.max_deviation
           << ", probe transmission " << c->probe_transmission << '\n';
    }
    if (const auto& q = rep.quantum) {
        os << "quantum: target phase " << q->phi_target << " rad, branches cos^2 "
           << q->forward_population << " / sin^2 " << q->backward_population << '\n';
        if (q->oracle)
            os << "quantum: fidelity(closed form, Trotter) " << q->fidelity << ", phi_cond "
               << q->cphase.phi_cond << ", gate distance " << q->cphase.operator_distance << '\n';
    }
}

int emit_report(const Common& c, const xpm::RunReport& rep)
{
    print_summary(std::cerr, rep);
    const std::string dir = output_dir(c, rep.scenario);
    if (dir.empty()) {
        xpm::write_report_json(std::cout, rep);
    } else {
        for (const auto& path : xpm::emit(rep, dir, rep.scenario.outputs.formats))
            std::cerr << "wrote " << path << '\n';
    }
    if (c.strict_constraints && !rep.constraints.all_passed()) return constraint_failure;
    return ok;
}

int cmd_run(const Common& c, bool design_only)
{
    xpm::Scenario s = load(c);
    if (design_only) s.mode = xpm::RunMode::design;
    return emit_report(c, xpm::run(s));
}

int cmd_validate(const Common& c)
{
    const xpm::Scenario s = load(c);
    const auto rates = xpm::derive_rates(s.params);
    const auto report = xpm::validate_constraints(s.params, rates, s.threshold);
    std::cout << "scenario ok (preset " << s.preset << ", mode " << xpm::to_string(s.mode) << ")\n";
    for (const auto& it : report.items)
        std::cout << (it.passed ? "  ok    " : "  FAIL  ") << it.name << '\n';
    if (c.strict_constraints && !report.all_passed()) return constraint_failure;
    return ok;
}

int cmd_sweep(const Common& c)
{
    if (c.config.empty()) throw xpm::ConfigError("--config", 0, "sweep needs a config with a sweep section");
    const xpm::Scenario s = load(c);
    xpm::SweepSpec spec = xpm::parse_sweep(read_file(c.config));
    if (c.threads) spec.threads = c.threads;
    const auto table = xpm::sweep(s, spec);

    std::size_t failed = 0;
    for (const auto& cell : table.cells) failed += cell.ok ? 0 : 1;
    std::cerr << table.cells.size() << " cells, " << failed << " failed\n";

    const std::string dir = output_dir(c, s);
    if (dir.empty()) {
        xpm::write_sweep_csv(std::cout, table);
        return ok;
    }
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / "sweep.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw xpm::Error("cannot write '" + path.string() + "'");
    xpm::write_sweep_csv(out, table);
    std::cerr << "wrote " << path.string() << '\n';
    return ok;
}

struct Check {
    std::string name;
    double value;
    double limit;
    bool below;  // pass when value <= limit, else value >= limit
};

int cmd_oracle_check(const Common& c)
{
    std::vector<Check> checks;

    // Single Fourier mode against the closed form over one Bragg period.
    {
        const std::size_t n = c.nz.value_or(64);
        const xpm::Grid grid(n, 1.0);
        xpm::PolaritonRates r;
        r.v_s = 0.05;
        r.v_p = 1.0;
        r.beta = 40.0;
        const double q = 2 * xpm::kPi * 3;
        xpm::FieldState s(grid);
        for (std::size_t j = 0; j < n; ++j) s.psi_plus[j] = std::polar(1.0, q * grid.z(j));
        const double chi = std::hypot(q * r.v_s, r.beta);
        const double T = 2 * xpm::kPi / chi;
        xpm::IntegratorSettings set;
        set.dt = c.dt.value_or(T / 2000);
        const auto out = xpm::evolve(s, r, set, T).final_state;
        const auto [fwd, bwd] = xpm::signal_field_solution(s.psi_plus, grid, T, r);
        double num = 0, den = 0;
        for (std::size_t j = 0; j < n; ++j) {
            num += std::norm(out.psi_plus[j] - fwd[j]) + std::norm(out.psi_minus[j] - bwd[j]);
            den += std::norm(fwd[j]) + std::norm(bwd[j]);
        }
        checks.push_back({"single-mode relative L2 error", std::sqrt(num / den), 1e-6, true});
    }

    // Two-excitation Trotter evolution against the closed-form output.
    {
        xpm::Scenario s = xpm::default_scenario();
        s.quantum.phi = xpm::kPi;
        const auto q = xpm::run_quantum(s, xpm::derive_rates(s.params));
        checks.push_back({"two-photon fidelity", q.fidelity, 0.999, false});
        checks.push_back({"conditional phase error / pi",
                          std::abs(q.cphase.phi_cond - q.phi_target) / xpm::kPi, 0.02, true});
        checks.push_back({"CPHASE gate distance", q.cphase.operator_distance, 1e-2, true});
    }

    bool all = true;
    std::cout << std::setprecision(6);
    for (const auto& ch : checks) {
        const bool pass = ch.below ? ch.value <= ch.limit : ch.value >= ch.limit;
        all = all && pass;
        std::cout << (pass ? "PASS  " : "FAIL  ") << std::left << std::setw(32) << ch.name
                  << std::right << ch.value << (ch.below ? " <= " : " >= ") << ch.limit << '\n';
    }
    return all ? ok : numerical_failure;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cross-phase modulation gate designer and simulator"};
    app.set_version_flag("--version", xpm::version());
    app.require_subcommand(1);

    Common common;
    auto* design = app.add_subcommand("design", "Derive rates, phase and fidelity; check the regime");
    add_common(design, common, false);
    auto* run = app.add_subcommand("run", "Run the scenario in its configured mode");
    add_common(run, common, true);
    auto* sweep = app.add_subcommand("sweep", "Cartesian parameter sweep from the config's sweep section");
    add_common(sweep, common, false);
    sweep->add_option("--threads", common.threads, "Worker threads (default: all cores)");
    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario");
    add_common(validate, common, false);
    auto* oracle = app.add_subcommand("oracle-check", "Compare the integrators against closed forms");
    oracle->add_option("--nz", common.nz, "Grid cells for the single-mode check");
    oracle->add_option("--dt", common.dt, "Step for the single-mode check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (*design) return cmd_run(common, true);
        if (*run) return cmd_run(common, false);
        if (*sweep) return cmd_sweep(common);
        if (*validate) return cmd_validate(common);
        if (*oracle) return cmd_oracle_check(common);
    } catch (const xpm::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return config_error;
    } catch (const xpm::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return config_error;
    } catch (const xpm::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return numerical_failure;
    } catch (const xpm::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return numerical_failure;
    }
    return ok;
}
