#include "xpm/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "xpm/errors.hpp"
#include "xpm/format.hpp"

#ifndef XPM_VERSION
#define XPM_VERSION "0.0.0"
#endif

namespace xpm {

using ojson = nlohmann::ordered_json;

namespace {

ojson complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ojson rates_json(const PolaritonRates& r)
{
    return {{"v_s", r.v_s},         {"v_p", r.v_p},         {"beta", r.beta},
            {"eta", complex_json(r.eta)}, {"kappa_s", r.kappa_s}, {"kappa_p", r.kappa_p}};
}

ojson derived_json(const DerivedRates& d)
{
    ojson j;
    j["g_A"] = d.g_A;
    j["g_B"] = d.g_B;
    j["g_B_prime"] = d.g_B_prime;
    j["N_A"] = d.N_A;
    j["N_B"] = d.N_B;
    j["theta_A"] = d.theta_A;
    j["theta_A_prime"] = d.theta_A_prime;
    j["theta_B"] = d.theta_B;
    j["v_s"] = d.v_s;
    j["v_p"] = d.v_p;
    j["v_s_prime"] = d.v_s_prime;
    j["kappa_s"] = d.kappa_s;
    j["kappa_p"] = d.kappa_p;
    j["kappa_d_bound"] = d.kappa_d_bound;
    j["eta"] = complex_json(d.eta);
    j["beta"] = d.beta;
    j["phi"] = d.phi;
    j["phi_closed_form"] = d.phi_closed_form;
    j["phi_approx"] = d.phi_approx;
    j["F"] = d.F;
    j["z_loc"] = d.z_loc;
    j["amplitude_boost"] = d.amplitude_boost;
    j["t_int"] = d.t_int;
    j["delta_omega_p_max"] = d.delta_omega_p_max;
    j["optical_depth_A"] = d.optical_depth_A;
    j["k_p"] = d.k_p;
    j["k_s"] = d.k_s;
    j["bragg_mismatch"] = d.bragg_mismatch;
    j["bragg_warning"] = d.bragg_warning;
    j["cross_absorption_warning"] = d.cross_absorption_warning;
    return j;
}

ojson constraints_json(const ConstraintReport& c)
{
    ojson items = ojson::array();
    for (const auto& it : c.items)
        items.push_back({{"name", it.name},
                         {"relation", it.relation == Relation::less ? "<" : "<<"},
                         {"lhs", it.lhs},
                         {"rhs", it.rhs},
                         {"ratio", it.ratio},
                         {"passed", it.passed}});
    return {{"threshold", c.threshold},
            {"all_passed", c.all_passed()},
            {"bragg_warning", c.bragg_warning},
            {"cross_absorption_warning", c.cross_absorption_warning},
            {"items", std::move(items)}};
}

ojson classical_json(const ClassicalResult& r)
{
    ojson traj = ojson::array();
    for (const auto& s : r.samples)
        traj.push_back({{"t", s.t},
                        {"probe_norm", s.probe_norm},
                        {"signal_norm", s.signal_norm},
                        {"forward_norm", s.forward_norm},
                        {"backward_norm", s.backward_norm},
                        {"mean_phase", s.mean_phase},
                        {"phase_deviation", s.phase_deviation}});
    return {{"rates", rates_json(r.rates)},
            {"n_z", r.initial.grid.size()},
            {"dt", r.dt},
            {"steps", r.steps},
            {"t_total", r.t_total},
            {"exit_phase", r.probe_phase.mean},
            {"phase_max_deviation", r.probe_phase.max_deviation},
            {"probe_transmission", r.probe_transmission},
            {"signal_retention", r.signal_retention},
            {"trajectory", std::move(traj)}};
}

ojson quantum_json(const QuantumResult& q)
{
    ojson j;
    j["rates"] = rates_json(q.rates);
    j["phi_target"] = q.phi_target;
    j["forward_population"] = q.forward_population;
    j["backward_population"] = q.backward_population;
    j["oracle"] = q.oracle;
    if (q.oracle) {
        j["fidelity"] = q.fidelity;
        j["trotter_norm"] = q.trotter_norm;
        j["trotter_forward"] = q.trotter_forward;
        j["trotter_backward"] = q.trotter_backward;
        j["cphase"] = {{"vacuum", complex_json(q.runs.vacuum)},
                       {"probe_only", complex_json(q.runs.probe_only)},
                       {"signal_only", complex_json(q.runs.signal_only)},
                       {"both", complex_json(q.runs.both)},
                       {"phi_cond", q.cphase.phi_cond},
                       {"global_phase", q.cphase.global_phase},
                       {"operator_distance", q.cphase.operator_distance}};
    }
    return j;
}

void csv_row(std::ostream& os, const std::string& section, const std::string& key, double v)
{
    os << section << ',' << key << ',' << format_double(v) << '\n';
}

std::string utc_timestamp()
{
    std::time_t t = 0;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch)
        t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    else
        t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    return out;
}

void close_output(std::ofstream& out, const std::filesystem::path& path)
{
    out.close();
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace

std::string version() { return XPM_VERSION; }

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Provenance make_provenance(const Scenario& s)
{
    Provenance p;
    p.version = version();
    p.timestamp = utc_timestamp();
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(serialize_scenario(s));
    p.config_hash = hex.str();
    return p;
}

void write_report_json(std::ostream& os, const RunReport& rep)
{
    ojson j;
    j["provenance"] = {{"tool", rep.provenance.tool},
                       {"version", rep.provenance.version},
                       {"timestamp", rep.provenance.timestamp},
                       {"config_hash", rep.provenance.config_hash}};
    j["scenario"] = ojson::parse(scenario_json(rep.scenario));
    j["rates"] = derived_json(rep.rates);
    j["approx_phase"] = {{"phi", rep.approx.phi},
                         {"coupling_ratio", rep.approx.coupling_ratio},
                         {"wavevector_ratio", rep.approx.wavevector_ratio},
                         {"regime_ok", rep.approx.regime_ok}};
    j["constraints"] = constraints_json(rep.constraints);
    if (rep.classical) j["classical"] = classical_json(*rep.classical);
    if (rep.quantum) j["quantum"] = quantum_json(*rep.quantum);
    os << j.dump(2) << '\n';
}

void write_report_csv(std::ostream& os, const RunReport& rep)
{
    os << "section,quantity,value\n";
    const auto& d = rep.rates;
    const std::pair<const char*, double> rates[] = {
        {"g_A", d.g_A},         {"g_B", d.g_B},           {"g_B_prime", d.g_B_prime},
        {"N_A", d.N_A},         {"N_B", d.N_B},           {"theta_A", d.theta_A},
        {"theta_A_prime", d.theta_A_prime}, {"theta_B", d.theta_B}, {"v_s", d.v_s},
        {"v_p", d.v_p},         {"v_s_prime", d.v_s_prime}, {"kappa_s", d.kappa_s},
        {"kappa_p", d.kappa_p}, {"kappa_d_bound", d.kappa_d_bound}, {"eta_re", d.eta.real()},
        {"eta_im", d.eta.imag()}, {"beta", d.beta},       {"phi", d.phi},
        {"phi_closed_form", d.phi_closed_form}, {"phi_approx", d.phi_approx}, {"F", d.F},
        {"z_loc", d.z_loc},     {"amplitude_boost", d.amplitude_boost}, {"t_int", d.t_int},
        {"delta_omega_p_max", d.delta_omega_p_max}, {"optical_depth_A", d.optical_depth_A},
    };
    for (const auto& [k, v] : rates) csv_row(os, "rates", k, v);
    for (const auto& c : rep.constraints.items) {
        csv_row(os, "constraint_ratio", c.name, c.ratio);
        csv_row(os, "constraint_passed", c.name, c.passed ? 1.0 : 0.0);
    }
    if (const auto& c = rep.classical) {
        csv_row(os, "classical", "dt", c->dt);
        csv_row(os, "classical", "steps", static_cast<double>(c->steps));
        csv_row(os, "classical", "exit_phase", c->probe_phase.mean);
        csv_row(os, "classical", "phase_max_deviation", c->probe_phase.max_deviation);
        csv_row(os, "classical", "probe_transmission", c->probe_transmission);
        csv_row(os, "classical", "signal_retention", c->signal_retention);
    }
    if (const auto& q = rep.quantum) {
        csv_row(os, "quantum", "phi_target", q->phi_target);
        csv_row(os, "quantum", "forward_population", q->forward_population);
        csv_row(os, "quantum", "backward_population", q->backward_population);
        if (q->oracle) {
            csv_row(os, "quantum", "fidelity", q->fidelity);
            csv_row(os, "quantum", "phi_cond", q->cphase.phi_cond);
            csv_row(os, "quantum", "operator_distance", q->cphase.operator_distance);
        }
    }
}

void write_plot_data(std::ostream& os, const RunReport& rep)
{
    if (const auto& c = rep.classical) {
        const FieldState& f0 = c->initial;
        const FieldState& f = c->final_state;
        const double bt = c->rates.beta * (f.t - f0.t);
        const double cb = std::cos(bt), sb = std::sin(bt);
        const auto intensity = signal_intensity(f);
        double peak = 0;
        for (const auto& x : f0.psi_plus) peak = std::max(peak, std::norm(x));

        os << "z_cm,probe_intensity,probe_phase_rad,signal_intensity,signal_phase_rad\n";
        for (std::size_t j = 0; j < f.grid.size(); ++j) {
            double signal_phase = std::nan("");
            if (std::norm(f0.psi_plus[j]) > rep.scenario.classical.support_threshold * peak) {
                const cplx undone = f.psi_plus[j] * cb - cplx{0, 1} * f.psi_minus[j] * sb;
                signal_phase = std::arg(std::conj(f0.psi_plus[j]) * undone);
            }
            os << format_double(f.grid.z(j)) << ',' << format_double(std::norm(f.psi_p[j])) << ','
               << format_double(c->probe_phase.phase[j]) << ',' << format_double(intensity[j])
               << ',' << format_double(signal_phase) << '\n';
        }
        return;
    }
    if (const auto& q = rep.quantum; q && q->final_state) {
        const SectorState& s = *q->final_state;
        const std::size_t n = s.grid().size();
        std::vector<double> probe(n), fwd(n), bwd(n);
        const double norm = s.norm2();
        for (std::size_t jp = 0; jp < n; ++jp)
            for (std::size_t js = 0; js < n; ++js) {
                const double a = std::norm(s(jp, js, 0)) / norm;
                const double b = std::norm(s(jp, js, 1)) / norm;
                probe[jp] += a + b;
                fwd[js] += a;
                bwd[js] += b;
            }
        os << "z,probe_probability,forward_probability,backward_probability\n";
        for (std::size_t j = 0; j < n; ++j)
            os << format_double(s.grid().z(j)) << ',' << format_double(probe[j]) << ','
               << format_double(fwd[j]) << ',' << format_double(bwd[j]) << '\n';
        return;
    }
    throw ConfigError("outputs.formats", 0,
                      "plot-data needs a classical run or a quantum run with the oracle enabled");
}

std::vector<std::string> emit(const RunReport& rep, const std::string& directory,
                              const std::vector<OutputFormat>& formats)
{
    namespace fs = std::filesystem;
    const fs::path dir = directory.empty() ? fs::path(".") : fs::path(directory);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());

    std::vector<std::string> written;
    auto write = [&](const std::string& name, auto&& body) {
        const fs::path path = dir / name;
        auto out = open_output(path);
        body(out);
        close_output(out, path);
        written.push_back(path.string());
    };
    for (auto f : formats) {
        switch (f) {
        case OutputFormat::json:
            write("report.json", [&](std::ostream& os) { write_report_json(os, rep); });
            break;
        case OutputFormat::csv:
            write("report.csv", [&](std::ostream& os) { write_report_csv(os, rep); });
            if (rep.classical)
                write("trajectory.csv",
                      [&](std::ostream& os) { write_trajectory_csv(os, rep.classical->samples); });
            break;
        case OutputFormat::plot_data:
            write("plot_data.csv", [&](std::ostream& os) { write_plot_data(os, rep); });
            break;
        }
    }
    return written;
}

}  // namespace xpm
