#include "xpm/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "xpm/errors.hpp"

namespace xpm {

namespace {

constexpr cplx kI{0.0, 1.0};

double sum_abs2(std::span<const cplx> v)
{
    return std::accumulate(v.begin(), v.end(), 0.0,
                           [](double acc, const cplx& x) { return acc + std::norm(x); });
}

// Exact time integrals of the local intensities over tau for
//   a' = -2 g a b,  b' = -2 g a b   (a = I_s, b = I_p, g = Im eta)
// which is what the cross-phase flow does to the two intensities in one cell.
void intensity_integrals(double a0, double b0, double g, double tau, double& A, double& B)
{
    if (g == 0 || a0 == 0 || b0 == 0) {
        A = a0 * tau;
        B = b0 * tau;
        return;
    }
    const double D = a0 - b0;
    const double u = 2.0 * g * D * tau;
    double h, hm;
    if (std::abs(u) < 1e-6) {
        h = 2.0 * g * tau * (1.0 + u / 2.0 + u * u / 6.0);
        hm = 2.0 * g * tau * (1.0 - u / 2.0 + u * u / 6.0);
    } else {
        h = std::expm1(u) / D;
        hm = std::expm1(-u) / (-D);
    }
    A = std::log1p(a0 * h) / (2.0 * g);
    B = std::log1p(b0 * hm) / (2.0 * g);
}

}  // namespace

double excitation_number(std::span<const cplx> psi, const Grid& grid)
{
    return sum_abs2(psi) * grid.dz() / grid.length();
}

double probe_norm(const FieldState& s) { return excitation_number(s.psi_p, s.grid); }

double signal_norm(const FieldState& s)
{
    return excitation_number(s.psi_plus, s.grid) + excitation_number(s.psi_minus, s.grid);
}

std::vector<double> signal_intensity(const FieldState& s)
{
    std::vector<double> out(s.grid.size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = std::norm(s.psi_plus[j]) + std::norm(s.psi_minus[j]);
    return out;
}

FieldState init_state(const Grid& grid, const Envelope& probe, const Envelope& signal,
                      bool normalize)
{
    FieldState s(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double z = grid.z(j);
        s.psi_plus[j] = signal ? signal(z) : cplx{};
        s.psi_p[j] = probe ? probe(z) : cplx{};
    }
    if (normalize) {
        for (auto* field : {&s.psi_plus, &s.psi_p}) {
            const double n = excitation_number(*field, grid);
            if (!(n > 0) || !std::isfinite(n))
                throw DomainError("init_state: cannot normalize an all-zero envelope");
            const double scale = 1.0 / std::sqrt(n);
            for (auto& x : *field) x *= scale;
        }
    }
    return s;
}

ClassicalIntegrator::ClassicalIntegrator(const Grid& grid, const PolaritonRates& rates,
                                         const IntegratorSettings& settings)
    : grid_(grid), rates_(rates), settings_(settings),
      fft_({static_cast<int>(grid.size())}), k_(grid.size())
{
    if (!(settings.dt > 0)) throw DomainError("integrator: dt must be positive");
    if (!(rates.v_s >= 0) || !(rates.v_p >= 0))
        throw DomainError("integrator: group velocities must be nonnegative");
    const double vmax = std::max(rates.v_s, rates.v_p);
    if (vmax > 0 && settings.dt > grid.dz() / vmax * (1.0 + 1e-12))
        throw DomainError("integrator: dt violates the CFL bound dz / max(v_s, v_p)");
    for (std::size_t j = 0; j < grid.size(); ++j) k_[j] = grid.wavenumber(j);
}

bool ClassicalIntegrator::conserving() const noexcept
{
    return rates_.kappa_s == 0 && rates_.kappa_p == 0 && rates_.eta.imag() == 0;
}

const ClassicalIntegrator::PhaseTable& ClassicalIntegrator::phases(double tau)
{
    for (const auto& t : tables_)
        if (t.tau == tau && !t.probe.empty()) return t;
    PhaseTable& t = tables_[next_table_];
    next_table_ = (next_table_ + 1) % 2;
    t.tau = tau;
    const std::size_t n = k_.size();
    t.plus.resize(n);
    t.minus.resize(n);
    t.probe.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        t.plus[j] = std::polar(1.0, -k_[j] * rates_.v_s * tau);
        t.minus[j] = std::conj(t.plus[j]);
        t.probe[j] = std::polar(1.0, -k_[j] * rates_.v_p * tau);
    }
    return t;
}

void ClassicalIntegrator::advect(FieldState& s, double tau)
{
    const PhaseTable& t = phases(tau);
    auto shift = [&](std::vector<cplx>& field, double velocity, const std::vector<cplx>& factor) {
        if (velocity == 0) return;
        fft_.forward(field);
        for (std::size_t j = 0; j < field.size(); ++j) field[j] *= factor[j];
        fft_.inverse(field);
    };
    shift(s.psi_plus, rates_.v_s, t.plus);
    shift(s.psi_minus, rates_.v_s, t.minus);
    shift(s.psi_p, rates_.v_p, t.probe);
}

void ClassicalIntegrator::bragg(FieldState& s, double tau) const
{
    const double c = std::cos(rates_.beta * tau);
    const cplx is = kI * std::sin(rates_.beta * tau);
    for (std::size_t j = 0; j < s.psi_plus.size(); ++j) {
        const cplx fwd = s.psi_plus[j];
        const cplx bwd = s.psi_minus[j];
        s.psi_plus[j] = c * fwd + is * bwd;
        s.psi_minus[j] = is * fwd + c * bwd;
    }
}

void ClassicalIntegrator::cross_phase(FieldState& s, double tau) const
{
    const cplx eta = rates_.eta;
    if (eta == cplx{}) return;
    for (std::size_t j = 0; j < s.psi_p.size(); ++j) {
        const double a0 = std::norm(s.psi_plus[j]) + std::norm(s.psi_minus[j]);
        const double b0 = std::norm(s.psi_p[j]);
        double A, B;
        intensity_integrals(a0, b0, eta.imag(), tau, A, B);
        const cplx signal_factor = std::exp(kI * eta * B);
        s.psi_plus[j] *= signal_factor;
        s.psi_minus[j] *= signal_factor;
        s.psi_p[j] *= std::exp(kI * eta * A);
    }
}

void ClassicalIntegrator::damp(FieldState& s, double tau) const
{
    if (rates_.kappa_s != 0) {
        const double f = std::exp(-rates_.kappa_s * tau);
        for (auto& x : s.psi_plus) x *= f;
        for (auto& x : s.psi_minus) x *= f;
    }
    if (rates_.kappa_p != 0) {
        const double f = std::exp(-rates_.kappa_p * tau);
        for (auto& x : s.psi_p) x *= f;
    }
}

// Bragg and cross-phase commute (the cross-phase factor is common to both
// branches and I_s is invariant under the rotation), so only the damping
// needs to be nested symmetrically.
void ClassicalIntegrator::local(FieldState& s, double tau) const
{
    bragg(s, tau);
    cross_phase(s, 0.5 * tau);
    damp(s, tau);
    cross_phase(s, 0.5 * tau);
}

void ClassicalIntegrator::check(const FieldState& s, double probe_before,
                                double signal_before) const
{
    const double pn = probe_norm(s);
    const double sn = signal_norm(s);
    if (!std::isfinite(pn) || !std::isfinite(sn))
        throw NumericalError("integrator: non-finite field values");
    if (!settings_.check_norms || !conserving()) return;
    auto drift = [](double now, double before) {
        return before > 0 ? std::abs(now - before) / before : std::abs(now);
    };
    if (drift(pn, probe_before) > settings_.norm_drift_tolerance
        || drift(sn, signal_before) > settings_.norm_drift_tolerance)
        throw NumericalError("integrator: excitation-number drift exceeds tolerance");
}

void ClassicalIntegrator::step(FieldState& s) { advance(s, 1); }

void ClassicalIntegrator::advance(FieldState& s, std::size_t n)
{
    if (n == 0) return;
    if (s.grid != grid_) throw DomainError("integrator: state grid does not match");
    const double dt = settings_.dt;
    double pn = probe_norm(s);
    double sn = signal_norm(s);

    if (settings_.scheme == SplittingScheme::strang) {
        advect(s, 0.5 * dt);
        for (std::size_t i = 0; i < n; ++i) {
            local(s, dt);
            advect(s, i + 1 == n ? 0.5 * dt : dt);
            s.t += dt;
            check(s, pn, sn);
            pn = probe_norm(s);
            sn = signal_norm(s);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            advect(s, dt);
            local(s, dt);
            s.t += dt;
            check(s, pn, sn);
            pn = probe_norm(s);
            sn = signal_norm(s);
        }
    }
}

FieldState step(FieldState state, const PolaritonRates& rates, const IntegratorSettings& settings)
{
    ClassicalIntegrator integrator(state.grid, rates, settings);
    integrator.step(state);
    return state;
}

namespace {

TrajectorySample sample(const FieldState& initial, const FieldState& s, double v_p,
                        double threshold)
{
    TrajectorySample out;
    out.t = s.t;
    out.forward_norm = excitation_number(s.psi_plus, s.grid);
    out.backward_norm = excitation_number(s.psi_minus, s.grid);
    out.signal_norm = out.forward_norm + out.backward_norm;
    out.probe_norm = probe_norm(s);
    if (out.probe_norm > 0 && probe_norm(initial) > 0) {
        const auto profile = probe_phase_shift(initial, s, v_p, threshold);
        out.mean_phase = profile.mean;
        out.phase_deviation = profile.max_deviation;
    }
    return out;
}

}  // namespace

Trajectory evolve(const FieldState& initial, const PolaritonRates& rates,
                  const IntegratorSettings& settings, double T_total, const ObserverSpec& observers)
{
    if (!(T_total > 0)) throw DomainError("evolve: T_total must be positive");
    if (!(settings.dt > 0)) throw DomainError("evolve: dt must be positive");

    const auto n_steps =
        static_cast<std::size_t>(std::ceil(T_total / settings.dt * (1.0 - 1e-12)));
    IntegratorSettings exact = settings;
    exact.dt = T_total / static_cast<double>(n_steps);
    ClassicalIntegrator integrator(initial.grid, rates, exact);

    Trajectory traj{{}, initial};
    FieldState& s = traj.final_state;
    const double t0 = initial.t;
    traj.samples.push_back(sample(initial, s, rates.v_p, observers.support_threshold));
    if (observers.callback) observers.callback(s);

    const std::size_t chunk = observers.every > 0 ? observers.every : n_steps;
    std::size_t done = 0;
    while (done < n_steps) {
        const std::size_t n = std::min(chunk, n_steps - done);
        integrator.advance(s, n);
        done += n;
        if (done == n_steps) s.t = t0 + T_total;
        traj.samples.push_back(sample(initial, s, rates.v_p, observers.support_threshold));
        if (observers.callback) observers.callback(s);
    }
    return traj;
}

PhaseProfile probe_phase_shift(const FieldState& initial, const FieldState& final_state,
                               double v_p, double support_threshold)
{
    if (initial.grid != final_state.grid)
        throw DomainError("probe_phase_shift: grids differ");
    const Grid& grid = initial.grid;
    const std::size_t n = grid.size();

    // Free translation of the initial probe to the final time.
    std::vector<cplx> aligned = initial.psi_p;
    FftPlan fft({static_cast<int>(n)});
    fft.forward(aligned);
    const double shift = v_p * (final_state.t - initial.t);
    for (std::size_t j = 0; j < n; ++j) aligned[j] *= std::polar(1.0, -grid.wavenumber(j) * shift);
    fft.inverse(aligned);

    double peak = 0;
    std::size_t anchor = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = std::norm(aligned[j]);
        if (w > peak) {
            peak = w;
            anchor = j;
        }
    }

    PhaseProfile out;
    out.phase.assign(n, std::numeric_limits<double>::quiet_NaN());
    out.support.assign(n, false);
    for (std::size_t j = 0; j < n; ++j)
        out.support[j] = peak > 0 && std::norm(aligned[j]) > support_threshold * peak
                         && final_state.psi_p[j] != cplx{};
    if (!out.support[anchor]) throw DomainError("probe_phase_shift: empty probe support");

    // Walk once around the ring from the brightest cell, resolving 2 pi jumps
    // by continuity with the previous supported cell.
    double previous = std::arg(final_state.psi_p[anchor] / aligned[anchor]);
    out.phase[anchor] = previous;
    for (std::size_t step = 1; step < n; ++step) {
        const std::size_t j = (anchor + step) % n;
        if (!out.support[j]) continue;
        double ph = std::arg(final_state.psi_p[j] / aligned[j]);
        ph += 2.0 * kPi * std::round((previous - ph) / (2.0 * kPi));
        out.phase[j] = ph;
        previous = ph;
    }

    double sum = 0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j)
        if (out.support[j]) {
            sum += out.phase[j];
            ++count;
        }
    double mean = sum / static_cast<double>(count);
    const double wrap = 2.0 * kPi * std::floor((mean + 0.5 * kPi) / (2.0 * kPi));
    mean -= wrap;
    for (std::size_t j = 0; j < n; ++j)
        if (out.support[j]) {
            out.phase[j] -= wrap;
            out.max_deviation = std::max(out.max_deviation, std::abs(out.phase[j] - mean));
        }
    out.mean = mean;
    return out;
}

}  // namespace xpm
