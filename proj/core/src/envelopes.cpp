#include "xpm/envelopes.hpp"

#include <cmath>

#include "xpm/errors.hpp"

namespace xpm {

std::string to_string(PulseShape s)
{
    switch (s) {
    case PulseShape::gaussian: return "gaussian";
    case PulseShape::sech: return "sech";
    case PulseShape::flat_top: return "flat-top";
    }
    return "gaussian";
}

PulseShape pulse_shape_from_string(const std::string& s)
{
    if (s == "gaussian") return PulseShape::gaussian;
    if (s == "sech") return PulseShape::sech;
    if (s == "flat-top") return PulseShape::flat_top;
    throw DomainError("unknown pulse shape '" + s + "'");
}

Envelope make_envelope(const PulseSpec& spec, const Grid& grid)
{
    if (!(spec.width > 0)) throw DomainError("pulse width must be positive");
    return [spec, grid](double z) -> std::complex<double> {
        const double d = grid.periodic_distance(z, spec.center);
        const double x = d / spec.width;
        double a = 0;
        switch (spec.shape) {
        case PulseShape::gaussian: a = std::exp(-0.25 * x * x); break;
        case PulseShape::sech: a = 1.0 / std::cosh(x); break;
        case PulseShape::flat_top: {
            const double x2 = x * x;
            const double x8 = x2 * x2 * x2 * x2;
            a = std::exp(-0.5 * x8);
            break;
        }
        }
        return {spec.amplitude * a, 0.0};
    };
}

}  // namespace xpm
