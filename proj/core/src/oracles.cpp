#include "xpm/oracles.hpp"

#include <cmath>
#include <limits>

#include "xpm/errors.hpp"

namespace xpm {

namespace {

constexpr cplx kI{0.0, 1.0};

// Direct DFT with a twiddle table; sign -1 forward (with 1/N), +1 inverse.
std::vector<cplx> direct_dft(const std::vector<cplx>& in, int sign)
{
    const std::size_t n = in.size();
    std::vector<cplx> twiddle(n);
    for (std::size_t m = 0; m < n; ++m)
        twiddle[m] = std::polar(1.0, sign * 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n));
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{};
        for (std::size_t j = 0; j < n; ++j) acc += in[j] * twiddle[(j * k) % n];
        out[k] = sign < 0 ? acc / static_cast<double>(n) : acc;
    }
    return out;
}

}  // namespace

ModeSolution signal_mode_solution(cplx psi_plus_0, double q, double t, const PolaritonRates& rates,
                                  cplx phi_s, std::optional<cplx> mirror)
{
    if (!std::isfinite(rates.v_s) || !std::isfinite(rates.beta))
        throw DomainError("signal_mode_solution: rates must be finite");
    ModeSolution m;
    m.q = q;
    const double qv = q * rates.v_s;
    m.chi = std::sqrt(qv * qv + rates.beta * rates.beta);
    const cplx phase = std::exp(kI * phi_s);
    const cplx backward_seed = mirror.value_or(psi_plus_0);
    if (m.chi == 0) {
        m.psi_plus = psi_plus_0 * phase;
        m.psi_minus = 0;
        return m;
    }
    const double s = std::sin(m.chi * t);
    m.psi_plus = psi_plus_0 * phase * (std::cos(m.chi * t) - kI * (qv / m.chi) * s);
    m.psi_minus = kI * backward_seed * phase * (rates.beta / m.chi) * s;
    return m;
}

std::pair<std::vector<cplx>, std::vector<cplx>>
signal_field_solution(const std::vector<cplx>& psi_plus_0, const Grid& grid, double t,
                      const PolaritonRates& rates, cplx phi_s)
{
    if (psi_plus_0.size() != grid.size()) throw DomainError("signal_field_solution: size mismatch");
    const std::size_t n = grid.size();
    const auto a = direct_dft(psi_plus_0, -1);

    std::vector<cplx> fwd(n), bwd(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double k = grid.wavenumber(j);
        const std::size_t jm = (n - j) % n;  // bin of -k
        fwd[j] = signal_mode_solution(a[j], k, t, rates, phi_s).psi_plus;
        // Coefficient of e^{ikz} in Psi_- is the backward amplitude at label -k,
        // which is seeded by psi_+(k, 0).
        bwd[j] = signal_mode_solution(a[jm], -k, t, rates, phi_s, a[j]).psi_minus;
    }
    return {direct_dft(fwd, +1), direct_dft(bwd, +1)};
}

std::pair<cplx, cplx> trapped_signal(cplx psi_plus_initial, double t, const PolaritonRates& rates,
                                     cplx phi_s)
{
    const cplx base = psi_plus_initial * std::exp(kI * phi_s);
    return {base * std::cos(rates.beta * t), kI * base * std::sin(rates.beta * t)};
}

double trapping_bandwidth_ratio(double q_max, const PolaritonRates& rates)
{
    if (rates.beta == 0) return std::numeric_limits<double>::infinity();
    return std::abs(q_max) * rates.v_s / rates.beta;
}

cplx probe_phase_integral(double z, const std::function<double(double)>& intensity,
                          const PolaritonRates& rates, int cells)
{
    if (cells < 1) throw DomainError("probe_phase_integral: need at least one panel");
    if (!(rates.v_p > 0)) throw DomainError("probe_phase_integral: v_p must be positive");
    const double h = z / cells;
    double sum = 0;
    for (int i = 0; i < cells; ++i) sum += intensity((i + 0.5) * h);
    return rates.eta / rates.v_p * (sum * h);
}

cplx probe_solution(double z, double t, const std::function<cplx(double)>& boundary,
                    const std::function<double(double)>& intensity, const PolaritonRates& rates,
                    double length, int cells)
{
    if (!(z >= 0) || z > length) throw DomainError("probe_solution: z outside [0, L]");
    const double tau = t - z / rates.v_p;
    return boundary(tau) * std::exp(kI * probe_phase_integral(z, intensity, rates, cells));
}

double distortion_rate(double q, const PolaritonRates& rates)
{
    if (!(rates.beta > 0)) throw DomainError("distortion_rate: beta must be positive");
    if (std::abs(q) * rates.v_s >= rates.beta)
        throw DomainError("distortion_rate: |q| >= beta/v_s is outside the trapping regime");
    return q * q * rates.v_s * rates.v_s / (kPi * rates.beta);
}

}  // namespace xpm
