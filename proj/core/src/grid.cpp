#include "xpm/grid.hpp"

#include <cmath>
#include <string>

#include "xpm/errors.hpp"
#include "xpm/params.hpp"

namespace xpm {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

Grid::Grid(std::size_t n, double length) : n_(n), length_(length)
{
    if (n < 8 || !is_power_of_two(n))
        throw DomainError("grid: N_z must be a power of two >= 8, got " + std::to_string(n));
    if (!(length > 0) || !std::isfinite(length))
        throw DomainError("grid: length must be positive");
}

double Grid::wavenumber(std::size_t j) const noexcept
{
    const auto n = static_cast<long long>(n_);
    auto m = static_cast<long long>(j);
    if (m >= n / 2) m -= n;
    return 2.0 * kPi * static_cast<double>(m) / length_;
}

double Grid::periodic_distance(double a, double b) const noexcept
{
    double d = std::fmod(a - b, length_);
    if (d >= 0.5 * length_) d -= length_;
    if (d < -0.5 * length_) d += length_;
    return d;
}

}  // namespace xpm
