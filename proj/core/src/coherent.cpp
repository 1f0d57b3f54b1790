#include <cmath>

#include "xpm/errors.hpp"
#include "xpm/quantum.hpp"

namespace xpm {

namespace {

constexpr cplx kI{0.0, 1.0};

template <class F>
double midpoint(double a, double b, int cells, F&& f)
{
    if (b == a) return 0;
    const double h = (b - a) / cells;
    double sum = 0;
    for (int i = 0; i < cells; ++i) sum += f(a + (i + 0.5) * h);
    return sum * h;
}

void check(const PolaritonRates& rates, const CoherentSettings& settings)
{
    if (!(settings.length > 0)) throw DomainError("coherent: length must be positive");
    if (settings.cells < 1) throw DomainError("coherent: need at least one quadrature panel");
    if (!(rates.v_p > 0) || !(rates.v_s > 0)) throw DomainError("coherent: velocities must be positive");
}

double signal_integral(const CoherentInput& in, const CoherentSettings& s, double z)
{
    return midpoint(0.0, z, s.cells, [&](double x) { return std::norm(in.alpha_plus(x)); });
}

}  // namespace

cplx CoherentInput::alpha_p(double tau, double c) const
{
    cplx acc{};
    for (const auto& m : probe) acc += m.amplitude * std::exp(-kI * (m.q * c * tau));
    return acc;
}

cplx CoherentInput::alpha_plus(double z) const
{
    cplx acc{};
    for (const auto& m : signal) acc += m.amplitude * std::exp(kI * (m.q * z));
    return acc;
}

CoherentFields coherent_expectation(const CoherentInput& input, const PolaritonRates& rates,
                                    const CoherentSettings& settings, double z, double t)
{
    check(rates, settings);
    const double L = settings.length;
    const double c = settings.c;
    const cplx phi = rates.eta * L / rates.v_p;

    const double tau = t - z / rates.v_p;
    const cplx probe_exponent =
        (std::exp(kI * phi * c / rates.v_s) - 1.0) / L * signal_integral(input, settings, z);

    const double probe_dose = midpoint(0.0, t, settings.cells, [&](double tp) {
        return std::norm(input.alpha_p(tp - z / rates.v_p, c));
    });
    const cplx signal_factor =
        input.alpha_plus(z) * std::exp((std::exp(kI * phi) - 1.0) / L * c * probe_dose);

    CoherentFields out;
    out.probe = input.alpha_p(tau, c) * std::exp(probe_exponent);
    out.forward = signal_factor * std::cos(rates.beta * t);
    out.backward = signal_factor * kI * std::sin(rates.beta * t);
    return out;
}

double coherent_classical_probe_phase(const CoherentInput& input, const PolaritonRates& rates,
                                      const CoherentSettings& settings, double z)
{
    check(rates, settings);
    return rates.eta.real() * settings.c / (rates.v_p * rates.v_s)
           * signal_integral(input, settings, z);
}

}  // namespace xpm
