#pragma once

#include <complex>
#include <functional>
#include <string>

#include "xpm/grid.hpp"

namespace xpm {

enum class PulseShape { gaussian, sech, flat_top };

std::string to_string(PulseShape s);
PulseShape pulse_shape_from_string(const std::string& s);

// Envelope on the ring. `width` is the rms width of |psi|^2 for the Gaussian,
// the sech scale length, and the half-width of the flat top (super-Gaussian
// of order 8).
struct PulseSpec {
    PulseShape shape = PulseShape::gaussian;
    double center = 0;
    double width = 1;
    double amplitude = 1;
    bool normalize = true;

    bool operator==(const PulseSpec&) const = default;
};

using Envelope = std::function<std::complex<double>(double z)>;

// Periodic envelope: distances are measured with Grid::periodic_distance.
Envelope make_envelope(const PulseSpec& spec, const Grid& grid);

}  // namespace xpm
