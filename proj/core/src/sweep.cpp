#include "xpm/sweep.hpp"

#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include <yaml-cpp/yaml.h>

#include "xpm/errors.hpp"
#include "xpm/format.hpp"
#include "xpm/run.hpp"

namespace xpm {

namespace {

int line_of(const YAML::Node& n)
{
    if (!n.IsDefined() || n.Mark().is_null()) return 0;
    return n.Mark().line + 1;
}

double number(const YAML::Node& n, const std::string& path)
{
    if (!n || !n.IsScalar()) throw ConfigError(path, line_of(n), "expected a number");
    try {
        const double v = n.as<double>();
        if (!std::isfinite(v)) throw ConfigError(path, line_of(n), "value must be finite");
        return v;
    } catch (const YAML::Exception&) {
        throw ConfigError(path, line_of(n), "expected a number, got '" + n.Scalar() + "'");
    }
}

void check_keys(const YAML::Node& n, const std::string& path,
                std::initializer_list<const char*> allowed)
{
    for (const auto& kv : n) {
        const std::string k = kv.first.Scalar();
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw ConfigError(path + "." + k, line_of(kv.first), "unknown key");
    }
}

std::string csv_text(std::string s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

void fill_cell(SweepCell& cell, const Scenario& base, const SweepSpec& spec,
               const std::vector<std::string>& paths)
{
    try {
        Scenario s = base;
        for (std::size_t a = 0; a < paths.size(); ++a) s = with_value(s, paths[a], cell.point[a]);
        if (!spec.full_runs) s.mode = RunMode::design;
        const RunReport rep = run(s);
        cell.phi = rep.rates.phi;
        cell.F = rep.rates.F;
        cell.phi_approx = rep.approx.phi;
        cell.constraints_passed = rep.constraints.all_passed();
        for (const auto& c : rep.constraints.items) cell.ratios.push_back(c.ratio);
        if (rep.classical) cell.exit_phase = rep.classical->probe_phase.mean;
        if (rep.quantum && rep.quantum->oracle) cell.phi_cond = rep.quantum->cphase.phi_cond;
        cell.ok = true;
    } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
        cell.ratios.clear();
    }
}

}  // namespace

std::vector<double> axis_range(double from, double to, std::size_t count, Spacing spacing)
{
    if (count == 0) throw DomainError("axis_range: count must be positive");
    if (spacing == Spacing::log && !(from > 0 && to > 0))
        throw DomainError("axis_range: log spacing needs positive endpoints");
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        v[i] = spacing == Spacing::linear ? from + u * (to - from)
                                          : std::exp(std::log(from) + u * (std::log(to) - std::log(from)));
    }
    v.front() = from;
    if (count > 1) v.back() = to;
    return v;
}

SweepSpec parse_sweep(const std::string& text)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError("<document>", e.mark.is_null() ? 0 : e.mark.line + 1, e.msg);
    }
    const YAML::Node node = root.IsMap() ? root["sweep"] : YAML::Node(YAML::NodeType::Undefined);
    if (!node || !node.IsMap()) throw ConfigError("sweep", 0, "config has no sweep section");
    check_keys(node, "sweep", {"axes", "runs", "threads"});

    SweepSpec spec;
    if (const auto r = node["runs"]) {
        const std::string v = r.Scalar();
        if (v != "design" && v != "full")
            throw ConfigError("sweep.runs", line_of(r), "expected design or full");
        spec.full_runs = v == "full";
    }
    if (const auto t = node["threads"]) {
        const double v = number(t, "sweep.threads");
        if (v < 0 || v != std::floor(v)) throw ConfigError("sweep.threads", line_of(t), "expected a count");
        spec.threads = static_cast<std::size_t>(v);
    }
    const auto axes = node["axes"];
    if (!axes || !axes.IsSequence() || axes.size() == 0)
        throw ConfigError("sweep.axes", line_of(node), "need at least one axis");
    for (std::size_t i = 0; i < axes.size(); ++i) {
        const auto a = axes[i];
        const std::string path = "sweep.axes[" + std::to_string(i) + "]";
        if (!a.IsMap()) throw ConfigError(path, line_of(a), "expected a mapping");
        check_keys(a, path, {"path", "values", "from", "to", "count", "spacing"});
        SweepAxis axis;
        if (!a["path"] || !a["path"].IsScalar())
            throw ConfigError(path + ".path", line_of(a), "missing parameter path");
        axis.path = a["path"].Scalar();
        if (const auto vals = a["values"]) {
            if (!vals.IsSequence() || vals.size() == 0)
                throw ConfigError(path + ".values", line_of(vals), "expected a nonempty list");
            for (const auto& v : vals) axis.values.push_back(number(v, path + ".values"));
        } else {
            for (const char* k : {"from", "to", "count"})
                if (!a[k]) throw ConfigError(path + "." + k, line_of(a), "need values or from/to/count");
            const double from = number(a["from"], path + ".from");
            const double to = number(a["to"], path + ".to");
            const double count = number(a["count"], path + ".count");
            if (count < 1 || count != std::floor(count))
                throw ConfigError(path + ".count", line_of(a["count"]), "expected a positive integer");
            Spacing spacing = Spacing::linear;
            if (const auto sp = a["spacing"]) {
                if (sp.Scalar() == "log") spacing = Spacing::log;
                else if (sp.Scalar() != "linear")
                    throw ConfigError(path + ".spacing", line_of(sp), "expected linear or log");
            }
            try {
                axis.values = axis_range(from, to, static_cast<std::size_t>(count), spacing);
            } catch (const DomainError& e) {
                throw ConfigError(path, line_of(a), e.what());
            }
        }
        spec.axes.push_back(std::move(axis));
    }
    return spec;
}

SweepTable sweep(const Scenario& base, const SweepSpec& spec)
{
    if (spec.axes.empty()) throw ConfigError("sweep.axes", 0, "need at least one axis");
    SweepTable table;
    table.full_runs = spec.full_runs;
    table.mode = spec.full_runs ? base.mode : RunMode::design;
    std::size_t total = 1;
    for (const auto& a : spec.axes) {
        if (a.values.empty()) throw ConfigError(a.path, 0, "axis has no values");
        for (double v : a.values)
            if (!std::isfinite(v)) throw ConfigError(a.path, 0, "axis values must be finite");
        if (!is_value_path(base, a.path))
            throw ConfigError(a.path, 0, "sweep axis does not name a numeric scenario field");
        table.axis_paths.push_back(a.path);
        total *= a.values.size();
    }
    for (const auto& c : validate_constraints(base.params, derive_rates(base.params), base.threshold).items)
        table.constraint_names.push_back(c.name);

    table.cells.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rem = i;
        auto& point = table.cells[i].point;
        point.resize(spec.axes.size());
        for (std::size_t a = spec.axes.size(); a-- > 0;) {
            const auto& vals = spec.axes[a].values;
            point[a] = vals[rem % vals.size()];
            rem /= vals.size();
        }
    }

    std::size_t workers = spec.threads ? spec.threads : std::thread::hardware_concurrency();
    workers = std::max<std::size_t>(1, std::min(workers, total));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < total;)
            fill_cell(table.cells[i], base, spec, table.axis_paths);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return table;
}

void write_sweep_csv(std::ostream& os, const SweepTable& t)
{
    for (const auto& p : t.axis_paths) os << csv_text(p) << ',';
    os << "status,error,phi,F,phi_approx,constraints_passed";
    for (const auto& n : t.constraint_names) os << ",ratio_" << n;
    const bool exit_col = t.full_runs && t.mode == RunMode::classical;
    const bool cphase_col = t.full_runs && t.mode == RunMode::quantum;
    if (exit_col) os << ",exit_phase";
    if (cphase_col) os << ",phi_cond";
    os << '\n';

    for (const auto& c : t.cells) {
        for (double v : c.point) os << format_double(v) << ',';
        if (!c.ok) {
            os << "error," << csv_text(c.error) << ",,,,";
            for (std::size_t i = 0; i < t.constraint_names.size(); ++i) os << ',';
            if (exit_col || cphase_col) os << ',';
            os << '\n';
            continue;
        }
        os << "ok,," << format_double(c.phi) << ',' << format_double(c.F) << ','
           << format_double(c.phi_approx) << ',' << (c.constraints_passed ? "true" : "false");
        for (double r : c.ratios) os << ',' << format_double(r);
        if (exit_col) os << ',' << format_double(c.exit_phase);
        if (cphase_col) os << ',' << format_double(c.phi_cond);
        os << '\n';
    }
}

}  // namespace xpm
