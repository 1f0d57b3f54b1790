#include "xpm/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xpm/errors.hpp"

namespace xpm {

namespace {

constexpr cplx kI{0.0, 1.0};

std::unique_ptr<FftPlan> sector_fft(const Grid& grid, Occupation occ)
{
    const int n = static_cast<int>(grid.size());
    if (occ.probe && occ.signal) return std::make_unique<FftPlan>(std::vector<int>{n, n}, 2);
    if (occ.probe) return std::make_unique<FftPlan>(std::vector<int>{n}, 1);
    if (occ.signal) return std::make_unique<FftPlan>(std::vector<int>{n}, 2);
    return nullptr;
}

// Kinetic energy per flat index, laid out like SectorState::amp in k-space.
std::vector<double> kinetic_energies(const Grid& grid, const PolaritonRates& rates,
                                     const HamiltonianTerms& terms, Occupation occ)
{
    SectorState shape(grid, occ);
    std::vector<double> e(shape.amp.size(), 0.0);
    for (std::size_t jp = 0; jp < shape.probe_cells(); ++jp)
        for (std::size_t js = 0; js < shape.signal_cells(); ++js)
            for (std::size_t b = 0; b < shape.branches(); ++b) {
                double en = 0;
                if (occ.probe && terms.probe_kinetic) en += rates.v_p * grid.wavenumber(jp);
                if (occ.signal && terms.signal_kinetic)
                    en += (b == 0 ? 1.0 : -1.0) * rates.v_s * grid.wavenumber(js);
                e[shape.index(jp, js, b)] = en;
            }
    return e;
}

}  // namespace

// ---------------------------------------------------------------------------

SinglePhotonWavepacket::SinglePhotonWavepacket(const Grid& grid, std::vector<cplx> xi)
    : grid_(grid), xi_(std::move(xi))
{
    if (xi_.size() != grid.size()) throw DomainError("wavepacket: amplitude count != N_z");
    double n2 = 0;
    for (const auto& x : xi_) n2 += std::norm(x);
    if (!(n2 > 0) || !std::isfinite(n2)) throw DomainError("wavepacket: zero amplitudes");
    const double s = 1.0 / std::sqrt(n2);
    for (auto& x : xi_) x *= s;
}

SinglePhotonWavepacket SinglePhotonWavepacket::from_envelope(const Grid& grid,
                                                             const Envelope& envelope)
{
    std::vector<cplx> f(grid.size());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = envelope(grid.z(j));
    FftPlan fft({static_cast<int>(grid.size())});
    fft.forward(f);
    for (auto& x : f) x /= static_cast<double>(grid.size());
    return {grid, std::move(f)};
}

cplx SinglePhotonWavepacket::envelope(double z) const
{
    cplx acc{};
    for (std::size_t j = 0; j < xi_.size(); ++j) acc += xi_[j] * std::polar(1.0, grid_.wavenumber(j) * z);
    return acc;
}

std::vector<cplx> SinglePhotonWavepacket::cell_amplitudes(double shift) const
{
    std::vector<cplx> v(xi_.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = xi_[j] * std::polar(1.0, -grid_.wavenumber(j) * shift);
    FftPlan fft({static_cast<int>(grid_.size())});
    fft.inverse(v);
    const double scale = std::sqrt(static_cast<double>(grid_.size()));
    for (auto& x : v) x *= scale;
    return v;
}

SinglePhotonWavepacket SinglePhotonWavepacket::mirrored() const
{
    const std::size_t n = xi_.size();
    std::vector<cplx> m(n);
    for (std::size_t j = 0; j < n; ++j) m[j] = xi_[(n - j) % n];
    return {grid_, std::move(m)};
}

// ---------------------------------------------------------------------------

SectorState::SectorState(const Grid& grid, Occupation occ)
    : grid_(grid), occ_(occ), np_(occ.probe ? grid.size() : 1), ns_(occ.signal ? grid.size() : 1),
      nb_(occ.signal ? 2 : 1)
{
    amp.assign(np_ * ns_ * nb_, cplx{});
}

double SectorState::norm2() const
{
    return std::accumulate(amp.begin(), amp.end(), 0.0,
                           [](double acc, const cplx& x) { return acc + std::norm(x); });
}

double SectorState::branch_population(std::size_t b) const
{
    if (!occ_.signal) return b == 0 ? norm2() : 0.0;
    double acc = 0;
    for (std::size_t i = b; i < amp.size(); i += nb_) acc += std::norm(amp[i]);
    return acc;
}

SectorState product_state(const Grid& grid, const SinglePhotonWavepacket* probe,
                          const SinglePhotonWavepacket* signal)
{
    SectorState s(grid, {probe != nullptr, signal != nullptr});
    const std::vector<cplx> p = probe ? probe->cell_amplitudes() : std::vector<cplx>{1.0};
    const std::vector<cplx> f = signal ? signal->cell_amplitudes() : std::vector<cplx>{1.0};
    for (std::size_t jp = 0; jp < p.size(); ++jp)
        for (std::size_t js = 0; js < f.size(); ++js) s(jp, js, 0) = p[jp] * f[js];
    return s;
}

cplx overlap(const SectorState& a, const SectorState& b)
{
    if (a.amp.size() != b.amp.size() || !(a.occupation() == b.occupation()))
        throw DomainError("overlap: states live in different sectors");
    cplx acc{};
    for (std::size_t i = 0; i < a.amp.size(); ++i) acc += std::conj(a.amp[i]) * b.amp[i];
    return acc;
}

double fidelity(const SectorState& a, const SectorState& b)
{
    return std::norm(overlap(a, b)) / (a.norm2() * b.norm2());
}

// ---------------------------------------------------------------------------

TwoPhotonHamiltonian::TwoPhotonHamiltonian(const Grid& grid, const PolaritonRates& rates,
                                           const HamiltonianOptions& options)
    : grid_(grid), rates_(rates), options_(options),
      length_(options.length > 0 ? options.length : grid.length()), kernel_(grid.size(), 0.0)
{
    if (!std::isfinite(rates.v_s) || !std::isfinite(rates.v_p) || !std::isfinite(rates.beta)
        || !std::isfinite(rates.eta.real()) || !std::isfinite(rates.eta.imag()))
        throw DomainError("hamiltonian: rates must be finite");
    if (!(options.contact_width_cells >= 0))
        throw DomainError("hamiltonian: contact width must be nonnegative");

    const std::size_t n = grid.size();
    const double dz = grid.dz();
    if (options.contact_width_cells == 0) {
        kernel_[0] = 1.0 / dz;
        return;
    }
    const double w = options.contact_width_cells;
    double total = 0;
    for (std::size_t d = 0; d < n; ++d) {
        auto m = static_cast<double>(d);
        if (d >= n / 2) m -= static_cast<double>(n);
        kernel_[d] = std::exp(-0.5 * m * m / (w * w));
        total += kernel_[d];
    }
    for (auto& k : kernel_) k /= total * dz;
}

SectorState TwoPhotonHamiltonian::apply(const SectorState& psi) const
{
    if (psi.grid() != grid_) throw DomainError("hamiltonian: grid mismatch");
    const Occupation occ = psi.occupation();
    const auto& terms = options_.terms;

    SectorState out = psi;
    if (auto fft = sector_fft(grid_, occ)) {
        const auto energy = kinetic_energies(grid_, rates_, terms, occ);
        fft->forward(out.amp);
        for (std::size_t i = 0; i < out.amp.size(); ++i) out.amp[i] *= energy[i];
        fft->inverse(out.amp);
    } else {
        std::fill(out.amp.begin(), out.amp.end(), cplx{});
    }

    const std::size_t n = grid_.size();
    for (std::size_t jp = 0; jp < psi.probe_cells(); ++jp)
        for (std::size_t js = 0; js < psi.signal_cells(); ++js) {
            if (occ.signal && terms.bragg) {
                out(jp, js, 0) -= rates_.beta * psi(jp, js, 1);
                out(jp, js, 1) -= rates_.beta * psi(jp, js, 0);
            }
            if (occ.signal && occ.probe && terms.interaction) {
                const cplx v = rates_.eta * length_ * kernel_[(jp + n - js) % n];
                out(jp, js, 0) -= v * psi(jp, js, 0);
                out(jp, js, 1) -= v * psi(jp, js, 1);
            }
        }
    return out;
}

TwoPhotonHamiltonian build_two_photon_hamiltonian(const Grid& grid, const PolaritonRates& rates,
                                                  const HamiltonianOptions& options)
{
    return TwoPhotonHamiltonian(grid, rates, options);
}

// ---------------------------------------------------------------------------

TrotterPropagator::TrotterPropagator(const TwoPhotonHamiltonian& h, Occupation occ, double dt)
    : h_(&h), occ_(occ), dt_(dt), fft_(sector_fft(h.grid(), occ))
{
    if (!(dt > 0)) throw DomainError("trotter: dt must be positive");
    const auto energy = kinetic_energies(h.grid(), h.rates(), h.options().terms, occ);
    half_phase_.resize(energy.size());
    full_phase_.resize(energy.size());
    for (std::size_t i = 0; i < energy.size(); ++i) {
        half_phase_[i] = std::polar(1.0, -energy[i] * 0.5 * dt);
        full_phase_[i] = std::polar(1.0, -energy[i] * dt);
    }
    if (occ.probe && occ.signal && h.options().terms.interaction) {
        const auto& kernel = h.contact_kernel();
        contact_phase_.resize(kernel.size());
        for (std::size_t d = 0; d < kernel.size(); ++d)
            contact_phase_[d] = std::exp(kI * h.rates().eta * h.length() * kernel[d] * dt);
    }
}

void TrotterPropagator::kinetic(SectorState& psi, const std::vector<cplx>& phases) const
{
    if (!fft_) return;
    fft_->forward(psi.amp);
    for (std::size_t i = 0; i < psi.amp.size(); ++i) psi.amp[i] *= phases[i];
    fft_->inverse(psi.amp);
}

void TrotterPropagator::local(SectorState& psi) const
{
    const bool bragg = occ_.signal && h_->options().terms.bragg && h_->rates().beta != 0;
    const bool contact = !contact_phase_.empty();
    if (!bragg && !contact) return;
    const double c = std::cos(h_->rates().beta * dt_);
    const cplx is = kI * std::sin(h_->rates().beta * dt_);
    const std::size_t n = psi.grid().size();
    for (std::size_t jp = 0; jp < psi.probe_cells(); ++jp)
        for (std::size_t js = 0; js < psi.signal_cells(); ++js) {
            cplx& f = psi(jp, js, 0);
            cplx& b = psi(jp, js, 1);
            if (bragg) {
                const cplx nf = c * f + is * b;
                b = is * f + c * b;
                f = nf;
            }
            if (contact) {
                const cplx ph = contact_phase_[(jp + n - js) % n];
                f *= ph;
                b *= ph;
            }
        }
}

void TrotterPropagator::advance(SectorState& psi, std::size_t steps) const
{
    if (steps == 0) return;
    if (!(psi.occupation() == occ_) || psi.grid() != h_->grid())
        throw DomainError("trotter: state does not match the propagator");
    kinetic(psi, half_phase_);
    for (std::size_t i = 0; i < steps; ++i) {
        local(psi);
        kinetic(psi, i + 1 == steps ? half_phase_ : full_phase_);
    }
    psi.t += dt_ * static_cast<double>(steps);
}

SectorState trotter_evolve(const SectorState& psi, const TwoPhotonHamiltonian& h, double T,
                           double dt, const TrotterOptions& options)
{
    if (T < 0) throw DomainError("trotter_evolve: T must be nonnegative");
    if (!(dt > 0)) throw DomainError("trotter_evolve: dt must be positive");
    SectorState out = psi;
    if (T == 0) return out;

    const auto steps = static_cast<std::size_t>(std::ceil(T / dt * (1.0 - 1e-12)));
    TrotterPropagator prop(h, psi.occupation(), T / static_cast<double>(steps));
    const double before = out.norm2();
    prop.advance(out, steps);
    out.t = psi.t + T;

    const double after = out.norm2();
    if (!std::isfinite(after)) throw NumericalError("trotter_evolve: non-finite amplitudes");
    const bool unitary = h.rates().eta.imag() == 0 || !h.options().terms.interaction;
    const double allowed =
        options.norm_tolerance * std::max(1.0, static_cast<double>(steps) / 1e4);
    if (unitary && std::abs(after - before) > allowed * before)
        throw NumericalError("trotter_evolve: norm drift exceeds tolerance");
    return out;
}

SectorState free_evolve(const SectorState& psi, const PolaritonRates& rates, double T,
                        const HamiltonianTerms& terms)
{
    SectorState out = psi;
    out.t = psi.t + T;
    const Occupation occ = psi.occupation();
    auto fft = sector_fft(psi.grid(), occ);
    if (!fft) return out;
    const Grid& grid = psi.grid();

    fft->forward(out.amp);
    for (std::size_t jp = 0; jp < out.probe_cells(); ++jp) {
        const cplx probe_phase = occ.probe && terms.probe_kinetic
                                     ? std::polar(1.0, -rates.v_p * grid.wavenumber(jp) * T)
                                     : cplx{1.0};
        for (std::size_t js = 0; js < out.signal_cells(); ++js) {
            if (!occ.signal) {
                out(jp, js, 0) *= probe_phase;
                continue;
            }
            // exp(-i M T), M = [[a, -beta], [-beta, -a]]
            const double a = terms.signal_kinetic ? rates.v_s * grid.wavenumber(js) : 0.0;
            const double beta = terms.bragg ? rates.beta : 0.0;
            const double chi = std::hypot(a, beta);
            cplx u00{1.0}, u01{}, u11{1.0};
            if (chi > 0) {
                const double c = std::cos(chi * T);
                const double s = std::sin(chi * T) / chi;
                u00 = cplx{c, -a * s};
                u11 = cplx{c, a * s};
                u01 = cplx{0.0, beta * s};
            }
            const cplx f = out(jp, js, 0);
            const cplx b = out(jp, js, 1);
            out(jp, js, 0) = probe_phase * (u00 * f + u01 * b);
            out(jp, js, 1) = probe_phase * (u01 * f + u11 * b);
        }
    }
    fft->inverse(out.amp);
    return out;
}

SectorState closed_form_output(const SinglePhotonWavepacket& in_p,
                               const SinglePhotonWavepacket& in_plus, const PolaritonRates& rates,
                               double t_out, double length)
{
    if (in_p.grid() != in_plus.grid()) throw DomainError("closed_form_output: grids differ");
    const Grid& grid = in_p.grid();
    const double L = length > 0 ? length : grid.length();
    if (!(rates.v_p > 0)) throw DomainError("closed_form_output: v_p must be positive");
    if (!(t_out > L / rates.v_p))
        throw DomainError("closed_form_output: premature readout, t_out must exceed L / v_p");

    const cplx global = std::exp(kI * rates.eta * L / rates.v_p);
    const auto p = in_p.cell_amplitudes(rates.v_p * t_out);
    // Backward modes labelled -q carry xi^q: same z-envelope as the input.
    const auto f = in_plus.cell_amplitudes();

    const double c = std::cos(rates.beta * t_out);
    const cplx is = kI * std::sin(rates.beta * t_out);
    SectorState out(grid, {true, true});
    for (std::size_t jp = 0; jp < p.size(); ++jp)
        for (std::size_t js = 0; js < f.size(); ++js) {
            out(jp, js, 0) = global * p[jp] * c * f[js];
            out(jp, js, 1) = global * p[jp] * is * f[js];
        }
    out.t = t_out;
    return out;
}

std::vector<cplx> backward_mode_amplitudes(const Grid& grid, const std::vector<cplx>& cells)
{
    if (cells.size() != grid.size()) throw DomainError("backward_mode_amplitudes: size mismatch");
    const std::size_t n = grid.size();
    std::vector<cplx> a = cells;
    FftPlan fft({static_cast<int>(n)});
    fft.forward(a);
    for (auto& x : a) x /= static_cast<double>(n);
    // Standard coefficient at k is the backward amplitude at label -k.
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = a[(n - j) % n];
    return out;
}

std::vector<cplx> project_probe(const SectorState& psi, const std::vector<cplx>& probe)
{
    if (!psi.occupation().probe || probe.size() != psi.probe_cells())
        throw DomainError("project_probe: probe axis mismatch");
    const std::size_t ns = psi.signal_cells(), nb = psi.branches();
    std::vector<cplx> out(ns * nb);
    for (std::size_t jp = 0; jp < psi.probe_cells(); ++jp) {
        const cplx w = std::conj(probe[jp]);
        for (std::size_t js = 0; js < ns; ++js)
            for (std::size_t b = 0; b < nb; ++b) out[js * nb + b] += w * psi(jp, js, b);
    }
    return out;
}

// ---------------------------------------------------------------------------

CphaseRuns run_cphase_variants(const SinglePhotonWavepacket& in_p,
                               const SinglePhotonWavepacket& in_plus, const TwoPhotonHamiltonian& h,
                               double T, double dt)
{
    const Grid& grid = h.grid();
    auto amplitude = [&](const SinglePhotonWavepacket* p, const SinglePhotonWavepacket* s) {
        const SectorState in = product_state(grid, p, s);
        const SectorState out = trotter_evolve(in, h, T, dt);
        const SectorState reference = free_evolve(in, h.rates(), T, h.options().terms);
        return overlap(reference, out);
    };
    CphaseRuns runs;
    runs.vacuum = amplitude(nullptr, nullptr);
    runs.probe_only = amplitude(&in_p, nullptr);
    runs.signal_only = amplitude(nullptr, &in_plus);
    runs.both = amplitude(&in_p, &in_plus);
    return runs;
}

CphaseResult conditional_phase_extract(const CphaseRuns& runs, double phi_target,
                                       double min_magnitude)
{
    const cplx a[4] = {runs.vacuum, runs.probe_only, runs.signal_only, runs.both};
    for (const auto& x : a)
        if (!(std::abs(x) >= min_magnitude))
            throw NumericalError("conditional_phase_extract: overlap magnitude too small");

    CphaseResult r;
    double phi = std::arg(runs.both) - std::arg(runs.probe_only) - std::arg(runs.signal_only)
                 + std::arg(runs.vacuum);
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi < 0) phi += 2.0 * kPi;
    r.phi_cond = phi;

    const cplx d[4] = {1.0, 1.0, 1.0, std::polar(1.0, phi_target)};
    cplx fit{};
    for (int i = 0; i < 4; ++i) fit += std::conj(d[i]) * a[i];
    r.global_phase = std::arg(fit);
    const cplx undo = std::polar(1.0, -r.global_phase);
    for (int i = 0; i < 4; ++i)
        r.operator_distance = std::max(r.operator_distance, std::abs(a[i] * undo - d[i]));
    return r;
}

}  // namespace xpm
