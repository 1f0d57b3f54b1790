#include "xpm/scenario.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "json.hpp"

#include "xpm/errors.hpp"
#include "xpm/format.hpp"

namespace xpm {

using ojson = nlohmann::ordered_json;

namespace {

// Physical fields with their unit-carrying config keys.
struct ParamKey {
    const char* key;
    double PhysicalParams::*field;
};

constexpr ParamKey kParamKeys[] = {
    {"L_cm", &PhysicalParams::L},
    {"S_cm2", &PhysicalParams::S},
    {"rho_A_per_cm3", &PhysicalParams::rho_A},
    {"rho_B_per_cm3", &PhysicalParams::rho_B},
    {"omega_p_rad_per_s", &PhysicalParams::omega_p},
    {"omega_signal_rad_per_s", &PhysicalParams::omega_signal},
    {"Omega_dA_rad_per_s", &PhysicalParams::Omega_dA},
    {"Omega_dA_prime_rad_per_s", &PhysicalParams::Omega_dA_prime},
    {"Omega_dB_rad_per_s", &PhysicalParams::Omega_dB},
    {"Delta_B_rad_per_s", &PhysicalParams::Delta_B},
    {"gamma_a_per_s", &PhysicalParams::gamma_a},
    {"gamma_d_per_s", &PhysicalParams::gamma_d},
    {"gamma_bc_per_s", &PhysicalParams::gamma_bc},
    {"delta_omega_PBG_rad_per_s", &PhysicalParams::delta_omega_PBG},
    {"p_s_cm", &PhysicalParams::p_s},
    {"T_in_s", &PhysicalParams::T_in},
    {"T_p_s", &PhysicalParams::T_p},
    {"c_cm_per_s", &PhysicalParams::c},
    {"sigma_abs_A_cm2", &PhysicalParams::sigma_abs_A},
};

struct RateKey {
    const char* key;
    std::optional<double> RateOverrides::*field;
};

constexpr RateKey kRateKeys[] = {
    {"eta_re_per_s", &RateOverrides::eta_re},
    {"eta_im_per_s", &RateOverrides::eta_im},
    {"beta_rad_per_s", &RateOverrides::beta},
    {"v_s_cm_per_s", &RateOverrides::v_s},
    {"v_p_cm_per_s", &RateOverrides::v_p},
    {"kappa_s_per_s", &RateOverrides::kappa_s},
    {"kappa_p_per_s", &RateOverrides::kappa_p},
};

int line_of(const YAML::Node& n)
{
    if (!n.IsDefined() || n.Mark().is_null()) return 0;
    return n.Mark().line + 1;
}

std::string join(const std::string& base, const std::string& key)
{
    return base.empty() ? key : base + "." + key;
}

// Walks one mapping, remembering which keys were read so leftovers can be
// reported.
class MapReader {
public:
    MapReader(YAML::Node node, std::string path, const ParseOptions& opts)
        : node_(std::move(node)), path_(std::move(path)), opts_(opts)
    {
        if (node_ && !node_.IsNull() && !node_.IsMap())
            throw ConfigError(path_.empty() ? "<root>" : path_, line_of(node_), "expected a mapping");
    }

    ~MapReader() = default;
    MapReader(const MapReader&) = delete;
    MapReader& operator=(const MapReader&) = delete;

    YAML::Node get(const std::string& key)
    {
        seen_.insert(key);
        if (!node_ || !node_.IsMap()) return YAML::Node(YAML::NodeType::Undefined);
        const YAML::Node& n = node_;
        return n[key];
    }

    std::string path(const std::string& key) const { return join(path_, key); }

    void number(const std::string& key, double& out)
    {
        if (auto n = get(key)) out = as_double(n, path(key));
    }

    void number(const std::string& key, std::optional<double>& out)
    {
        if (auto n = get(key)) out = as_double(n, path(key));
    }

    void count(const std::string& key, std::size_t& out)
    {
        auto n = get(key);
        if (!n) return;
        const double v = as_double(n, path(key));
        if (v < 0 || v != std::floor(v) || v > 1e15)
            throw ConfigError(path(key), line_of(n), "expected a nonnegative integer");
        out = static_cast<std::size_t>(v);
    }

    void flag(const std::string& key, bool& out)
    {
        auto n = get(key);
        if (!n) return;
        try {
            out = n.as<bool>();
        } catch (const YAML::Exception&) {
            throw ConfigError(path(key), line_of(n), "expected true or false");
        }
    }

    void text(const std::string& key, std::string& out)
    {
        auto n = get(key);
        if (!n) return;
        if (!n.IsScalar()) throw ConfigError(path(key), line_of(n), "expected a string");
        out = n.Scalar();
    }

    template <class Enum>
    void choice(const std::string& key, Enum& out, Enum (*parse)(const std::string&))
    {
        auto n = get(key);
        if (!n) return;
        if (!n.IsScalar()) throw ConfigError(path(key), line_of(n), "expected a string");
        try {
            out = parse(n.Scalar());
        } catch (const Error& e) {
            throw ConfigError(path(key), line_of(n), e.what());
        }
    }

    void finish()
    {
        if (!node_ || !node_.IsMap()) return;
        for (const auto& kv : node_) {
            const std::string key = kv.first.Scalar();
            if (seen_.count(key)) continue;
            const std::string p = path(key);
            if (opts_.strict) throw ConfigError(p, line_of(kv.first), "unknown key");
            if (opts_.warnings)
                opts_.warnings->push_back("unknown key '" + p + "' at line "
                                          + std::to_string(line_of(kv.first)) + " ignored");
        }
    }

    static double as_double(const YAML::Node& n, const std::string& path)
    {
        if (!n.IsScalar()) throw ConfigError(path, line_of(n), "expected a number");
        double v = 0;
        try {
            v = n.as<double>();
        } catch (const YAML::Exception&) {
            throw ConfigError(path, line_of(n), "expected a number, got '" + n.Scalar() + "'");
        }
        if (!std::isfinite(v)) throw ConfigError(path, line_of(n), "value must be finite");
        return v;
    }

private:
    YAML::Node node_;
    std::string path_;
    const ParseOptions& opts_;
    std::set<std::string> seen_;
};

PulseShape shape_from(const std::string& s) { return pulse_shape_from_string(s); }

struct PulseDefaults {
    bool center = false;
    bool width = false;
};

PulseDefaults read_pulse(YAML::Node node, const std::string& path, const std::string& unit,
                         const ParseOptions& opts, PulseSpec& out)
{
    MapReader r(std::move(node), path, opts);
    PulseDefaults given;
    r.choice("shape", out.shape, &shape_from);
    given.center = static_cast<bool>(r.get("center" + unit));
    r.number("center" + unit, out.center);
    given.width = static_cast<bool>(r.get("width" + unit));
    r.number("width" + unit, out.width);
    r.number("amplitude", out.amplitude);
    r.flag("normalize", out.normalize);
    r.finish();
    return given;
}

void check_pulse(const PulseSpec& p, const std::string& path, std::vector<std::string>& bad)
{
    if (!(p.width > 0)) bad.push_back(path + ".width");
    if (!(p.amplitude != 0)) bad.push_back(path + ".amplitude");
}

Scenario parse_node(const YAML::Node& root, const ParseOptions& opts)
{
    MapReader top(root, "", opts);
    Scenario s;

    top.text("preset", s.preset);
    if (opts.preset) s.preset = *opts.preset;
    try {
        s.params = preset(s.preset);
    } catch (const Error& e) {
        throw ConfigError("preset", line_of(top.get("preset")), e.what());
    }

    top.choice("mode", s.mode, &run_mode_from_string);
    top.number("threshold", s.threshold);
    if (auto n = top.get("seed")) {
        const double v = MapReader::as_double(n, "seed");
        if (v != std::floor(v) || std::abs(v) > 9e15)
            throw ConfigError("seed", line_of(n), "expected an integer");
        s.seed = static_cast<std::int64_t>(v);
    }

    {
        MapReader r(top.get("params"), "params", opts);
        for (const auto& k : kParamKeys) r.number(k.key, s.params.*k.field);
        r.finish();
    }
    {
        MapReader r(top.get("rates"), "rates", opts);
        for (const auto& k : kRateKeys) r.number(k.key, s.rates.*k.field);
        r.finish();
    }

    PulseDefaults probe_given, signal_given;
    {
        MapReader r(top.get("classical"), "classical", opts);
        r.count("n_z", s.classical.n_z);
        r.number("dt_s", s.classical.dt_s);
        r.number("t_total_s", s.classical.t_total_s);
        r.choice("scheme", s.classical.scheme, +[](const std::string& v) {
            if (v == "strang") return SplittingScheme::strang;
            if (v == "lie") return SplittingScheme::lie;
            throw Error("unknown splitting scheme '" + v + "' (expected strang or lie)");
        });
        r.count("sample_every", s.classical.sample_every);
        r.number("support_threshold", s.classical.support_threshold);
        r.flag("check_norms", s.classical.check_norms);
        r.finish();
    }
    {
        MapReader r(top.get("pulses"), "pulses", opts);
        probe_given = read_pulse(r.get("probe"), "pulses.probe", "_cm", opts, s.pulses.probe);
        signal_given = read_pulse(r.get("signal"), "pulses.signal", "_cm", opts, s.pulses.signal);
        r.finish();
    }
    {
        MapReader r(top.get("quantum"), "quantum", opts);
        auto& q = s.quantum;
        r.count("n_z", q.n_z);
        r.number("length", q.length);
        r.number("v_p", q.v_p);
        r.number("v_s", q.v_s);
        r.number("beta", q.beta);
        r.number("t_out", q.t_out);
        r.number("dt", q.dt);
        r.number("contact_width_cells", q.contact_width_cells);
        r.number("phi", q.phi);
        r.flag("complex_eta", q.complex_eta);
        r.flag("oracle", q.oracle);
        read_pulse(r.get("probe"), "quantum.probe", "", opts, q.probe);
        read_pulse(r.get("signal"), "quantum.signal", "", opts, q.signal);
        r.finish();
    }
    {
        MapReader r(top.get("outputs"), "outputs", opts);
        r.text("directory", s.outputs.directory);
        if (auto n = r.get("formats")) {
            if (!n.IsSequence())
                throw ConfigError("outputs.formats", line_of(n), "expected a list");
            s.outputs.formats.clear();
            for (const auto& f : n) {
                try {
                    s.outputs.formats.push_back(output_format_from_string(f.Scalar()));
                } catch (const Error& e) {
                    throw ConfigError("outputs.formats", line_of(f), e.what());
                }
            }
        }
        r.finish();
    }
    top.get("sweep");  // read by the sweep front end
    top.finish();

    // Physical invariants.
    std::vector<std::string> bad = invalid_fields(s.params);
    if (!(s.threshold > 1)) bad.push_back("threshold");
    if (s.classical.n_z < 8 || !is_power_of_two(s.classical.n_z)) bad.push_back("classical.n_z");
    if (s.classical.dt_s < 0) bad.push_back("classical.dt_s");
    if (s.classical.t_total_s < 0) bad.push_back("classical.t_total_s");
    if (!(s.classical.support_threshold > 0 && s.classical.support_threshold < 1))
        bad.push_back("classical.support_threshold");
    const auto& q = s.quantum;
    if (q.n_z < 8 || !is_power_of_two(q.n_z)) bad.push_back("quantum.n_z");
    if (!(q.length > 0)) bad.push_back("quantum.length");
    if (!(q.v_p > 0)) bad.push_back("quantum.v_p");
    if (q.v_s < 0) bad.push_back("quantum.v_s");
    if (q.beta < 0) bad.push_back("quantum.beta");
    if (!(q.t_out > q.length / q.v_p)) bad.push_back("quantum.t_out");
    if (!(q.dt > 0)) bad.push_back("quantum.dt");
    if (q.contact_width_cells < 0) bad.push_back("quantum.contact_width_cells");
    check_pulse(q.probe, "quantum.probe", bad);
    check_pulse(q.signal, "quantum.signal", bad);
    if (probe_given.width) check_pulse(s.pulses.probe, "pulses.probe", bad);
    if (signal_given.width) check_pulse(s.pulses.signal, "pulses.signal", bad);
    if (!bad.empty()) throw ValidationError(bad);

    // Envelope defaults that depend on the derived rates.
    const DerivedRates d = derive_rates(s.params);
    if (!probe_given.center) s.pulses.probe.center = 0;
    if (!probe_given.width) s.pulses.probe.width = d.v_p * s.params.T_p / 4;
    if (!signal_given.center) s.pulses.signal.center = s.params.L / 2;
    if (!signal_given.width) s.pulses.signal.width = d.z_loc / 4;
    return s;
}

ojson pulse_json(const PulseSpec& p, const std::string& unit)
{
    ojson j;
    j["shape"] = to_string(p.shape);
    j["center" + unit] = p.center;
    j["width" + unit] = p.width;
    j["amplitude"] = p.amplitude;
    j["normalize"] = p.normalize;
    return j;
}

ojson to_json(const Scenario& s)
{
    ojson j;
    j["preset"] = s.preset;
    j["mode"] = to_string(s.mode);
    j["threshold"] = s.threshold;
    j["seed"] = s.seed;

    ojson params = ojson::object();
    for (const auto& k : kParamKeys) params[k.key] = s.params.*k.field;
    j["params"] = std::move(params);

    ojson rates = ojson::object();
    for (const auto& k : kRateKeys)
        if (const auto& v = s.rates.*k.field) rates[k.key] = *v;
    j["rates"] = std::move(rates);

    const auto& c = s.classical;
    j["classical"] = {{"n_z", c.n_z},
                      {"dt_s", c.dt_s},
                      {"t_total_s", c.t_total_s},
                      {"scheme", c.scheme == SplittingScheme::strang ? "strang" : "lie"},
                      {"sample_every", c.sample_every},
                      {"support_threshold", c.support_threshold},
                      {"check_norms", c.check_norms}};
    j["pulses"] = {{"probe", pulse_json(s.pulses.probe, "_cm")},
                   {"signal", pulse_json(s.pulses.signal, "_cm")}};

    const auto& q = s.quantum;
    ojson qj;
    qj["n_z"] = q.n_z;
    qj["length"] = q.length;
    qj["v_p"] = q.v_p;
    qj["v_s"] = q.v_s;
    qj["beta"] = q.beta;
    qj["t_out"] = q.t_out;
    qj["dt"] = q.dt;
    qj["contact_width_cells"] = q.contact_width_cells;
    if (q.phi) qj["phi"] = *q.phi;
    qj["complex_eta"] = q.complex_eta;
    qj["oracle"] = q.oracle;
    qj["probe"] = pulse_json(q.probe, "");
    qj["signal"] = pulse_json(q.signal, "");
    j["quantum"] = std::move(qj);

    ojson formats = ojson::array();
    for (auto f : s.outputs.formats) formats.push_back(to_string(f));
    j["outputs"] = {{"directory", s.outputs.directory}, {"formats", std::move(formats)}};
    return j;
}

void emit_yaml(YAML::Emitter& out, const ojson& j)
{
    switch (j.type()) {
    case ojson::value_t::object:
        out << YAML::BeginMap;
        for (const auto& [k, v] : j.items()) {
            out << YAML::Key << k << YAML::Value;
            emit_yaml(out, v);
        }
        out << YAML::EndMap;
        break;
    case ojson::value_t::array:
        out << YAML::Flow << YAML::BeginSeq;
        for (const auto& v : j) emit_yaml(out, v);
        out << YAML::EndSeq;
        break;
    case ojson::value_t::string:
        out << YAML::DoubleQuoted << j.get<std::string>();
        break;
    case ojson::value_t::boolean:
        out << (j.get<bool>() ? "true" : "false");
        break;
    case ojson::value_t::number_float:
        out << format_double(j.get<double>());
        break;
    case ojson::value_t::number_integer:
    case ojson::value_t::number_unsigned:
        out << j.dump();
        break;
    default:
        out << YAML::Null;
    }
}

YAML::Node load_yaml(const std::string& text)
{
    try {
        return YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError("<document>", e.mark.is_null() ? 0 : e.mark.line + 1, e.msg);
    }
}

}  // namespace

std::string to_string(RunMode m)
{
    switch (m) {
    case RunMode::design: return "design";
    case RunMode::classical: return "classical";
    case RunMode::quantum: return "quantum";
    }
    return "design";
}

RunMode run_mode_from_string(const std::string& s)
{
    if (s == "design" || s == "design-only") return RunMode::design;
    if (s == "classical") return RunMode::classical;
    if (s == "quantum") return RunMode::quantum;
    throw Error("unknown mode '" + s + "' (expected design, classical or quantum)");
}

std::string to_string(OutputFormat f)
{
    switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::plot_data: return "plot-data";
    }
    return "json";
}

OutputFormat output_format_from_string(const std::string& s)
{
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "plot-data") return OutputFormat::plot_data;
    throw Error("unknown output format '" + s + "' (expected json, csv or plot-data)");
}

bool RateOverrides::any() const
{
    return eta_re || eta_im || beta || v_s || v_p || kappa_s || kappa_p;
}

PolaritonRates RateOverrides::apply(PolaritonRates r) const
{
    if (eta_re) r.eta.real(*eta_re);
    if (eta_im) r.eta.imag(*eta_im);
    if (beta) r.beta = *beta;
    if (v_s) r.v_s = *v_s;
    if (v_p) r.v_p = *v_p;
    if (kappa_s) r.kappa_s = *kappa_s;
    if (kappa_p) r.kappa_p = *kappa_p;
    return r;
}

Scenario parse_scenario(const std::string& text, const ParseOptions& opts)
{
    const YAML::Node root = load_yaml(text);
    if (root && !root.IsNull() && !root.IsMap())
        throw ConfigError("<root>", line_of(root), "expected a mapping at the top level");
    return parse_node(root, opts);
}

Scenario load_scenario(const std::string& path, const ParseOptions& opts)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(path, 0, "cannot open config file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), opts);
}

Scenario default_scenario(const std::string& preset_name)
{
    ojson j = {{"preset", preset_name}};
    return parse_scenario(j.dump());
}

std::string serialize_scenario(const Scenario& s)
{
    YAML::Emitter out;
    out.SetIndent(2);
    emit_yaml(out, to_json(s));
    return std::string(out.c_str()) + "\n";
}

std::string scenario_json(const Scenario& s) { return to_json(s).dump(); }

Scenario with_value(const Scenario& s, const std::string& path, double value)
{
    ojson j = to_json(s);
    ojson* node = &j;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
        if (key.empty() || !node->is_object()) throw ConfigError(path, 0, "invalid key path");
        if (dot == std::string::npos) {
            if (node->contains(key) && !(*node)[key].is_number())
                throw ConfigError(path, 0, "key path does not name a number");
            (*node)[key] = value;
            break;
        }
        if (!node->contains(key)) throw ConfigError(path, 0, "unknown key path");
        node = &(*node)[key];
        start = dot + 1;
    }
    return parse_scenario(j.dump());
}

bool is_value_path(const Scenario& s, const std::string& path)
{
    if (path == "quantum.phi") return true;
    for (const auto& k : kRateKeys)
        if (path == std::string("rates.") + k.key) return true;
    const ojson j = to_json(s);
    const ojson* node = &j;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
        if (!node->is_object() || !node->contains(key)) return false;
        node = &(*node)[key];
        if (dot == std::string::npos) return node->is_number();
        start = dot + 1;
    }
}

}  // namespace xpm
