#include "xpm/run.hpp"

#include <algorithm>
#include <cmath>

#include "xpm/errors.hpp"

namespace xpm {

namespace {

// Scales a field to excitation number amplitude^2 when the spec asks for it.
void normalize_field(std::vector<cplx>& field, const Grid& grid, const PulseSpec& spec)
{
    if (!spec.normalize) return;
    const double n = excitation_number(field, grid);
    if (!(n > 0)) throw DomainError("pulse envelope vanishes on the grid");
    const double scale = std::abs(spec.amplitude) / std::sqrt(n);
    for (auto& x : field) x *= scale;
}

}  // namespace

PolaritonRates quantum_rates(const Scenario& s, const DerivedRates& d)
{
    const auto& q = s.quantum;
    const double phi = q.phi.value_or(d.phi);
    const double eta_re = phi * q.v_p / q.length;
    double eta_im = 0;
    if (q.complex_eta && d.eta.real() != 0) eta_im = eta_re * d.eta.imag() / d.eta.real();
    PolaritonRates r;
    r.v_p = q.v_p;
    r.v_s = q.v_s;
    r.beta = q.beta;
    r.eta = {eta_re, eta_im};
    return r;
}

ClassicalResult run_classical(const Scenario& s, const DerivedRates& d)
{
    ClassicalResult out;
    out.rates = s.rates.apply(d.polariton());
    const auto& r = out.rates;
    const auto& c = s.classical;
    if (!(r.v_p > 0)) throw DomainError("classical run: v_p must be positive");

    const Grid grid(c.n_z, s.params.L);
    out.t_total = c.t_total_s > 0 ? c.t_total_s : s.params.L / r.v_p;
    const double vmax = std::max(r.v_s, r.v_p);
    double dt = c.dt_s > 0 ? c.dt_s : 0.5 * grid.dz() / vmax;
    dt = std::min(dt, out.t_total);

    FieldState initial = init_state(grid, make_envelope(s.pulses.probe, grid),
                                    make_envelope(s.pulses.signal, grid), false);
    normalize_field(initial.psi_p, grid, s.pulses.probe);
    normalize_field(initial.psi_plus, grid, s.pulses.signal);

    IntegratorSettings settings;
    settings.dt = dt;
    settings.scheme = c.scheme;
    settings.check_norms = c.check_norms;

    ObserverSpec observers;
    observers.every = c.sample_every;
    observers.support_threshold = c.support_threshold;

    Trajectory traj = evolve(initial, r, settings, out.t_total, observers);
    out.steps = static_cast<std::size_t>(std::ceil(out.t_total / dt * (1.0 - 1e-12)));
    out.dt = out.t_total / static_cast<double>(out.steps);
    out.samples = std::move(traj.samples);
    out.probe_phase = probe_phase_shift(initial, traj.final_state, r.v_p, c.support_threshold);
    out.probe_transmission = probe_norm(traj.final_state) / probe_norm(initial);
    out.signal_retention = signal_norm(traj.final_state) / signal_norm(initial);
    out.initial = std::move(initial);
    out.final_state = std::move(traj.final_state);
    return out;
}

QuantumResult run_quantum(const Scenario& s, const DerivedRates& d)
{
    const auto& q = s.quantum;
    QuantumResult out;
    out.rates = quantum_rates(s, d);
    out.phi_target = out.rates.eta.real() * q.length / out.rates.v_p;
    const double cb = std::cos(out.rates.beta * q.t_out);
    out.forward_population = cb * cb;
    out.backward_population = 1.0 - cb * cb;
    out.oracle = q.oracle;
    if (!q.oracle) return out;

    const Grid grid(q.n_z, q.length);
    const auto probe = SinglePhotonWavepacket::from_envelope(grid, make_envelope(q.probe, grid));
    const auto signal = SinglePhotonWavepacket::from_envelope(grid, make_envelope(q.signal, grid));

    HamiltonianOptions opts;
    opts.contact_width_cells = q.contact_width_cells;
    opts.length = q.length;
    const TwoPhotonHamiltonian h(grid, out.rates, opts);

    const SectorState in = product_state(grid, &probe, &signal);
    SectorState evolved = trotter_evolve(in, h, q.t_out, q.dt);
    const SectorState expected = closed_form_output(probe, signal, out.rates, q.t_out, q.length);
    out.fidelity = fidelity(expected, evolved);
    out.trotter_norm = evolved.norm2();
    out.trotter_forward = evolved.branch_population(0) / out.trotter_norm;
    out.trotter_backward = evolved.branch_population(1) / out.trotter_norm;

    out.runs = run_cphase_variants(probe, signal, h, q.t_out, q.dt);
    out.cphase = conditional_phase_extract(out.runs, out.phi_target);
    out.final_state = std::move(evolved);
    return out;
}

RunReport run(const Scenario& s)
{
    validate(s.params);
    RunReport rep;
    rep.scenario = s;
    rep.provenance = make_provenance(s);
    rep.rates = derive_rates(s.params);
    rep.approx = approx_phase(s.params, s.threshold);
    rep.constraints = validate_constraints(s.params, rep.rates, s.threshold);
    if (s.mode == RunMode::classical) rep.classical = run_classical(s, rep.rates);
    if (s.mode == RunMode::quantum) rep.quantum = run_quantum(s, rep.rates);
    return rep;
}

}  // namespace xpm
