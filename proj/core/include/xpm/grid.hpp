#pragma once

#include <cstddef>

namespace xpm {

// Uniform periodic grid on [0, length): cell j sits at z_j = j dz and cell
// n-1 neighbours cell 0.
class Grid {
public:
    Grid(std::size_t n, double length);

    std::size_t size() const noexcept { return n_; }
    double length() const noexcept { return length_; }
    double dz() const noexcept { return length_ / static_cast<double>(n_); }
    double z(std::size_t j) const noexcept { return static_cast<double>(j) * dz(); }

    // Angular wavenumber of DFT bin j: 2 pi m / length with m folded into
    // [-n/2, n/2).
    double wavenumber(std::size_t j) const noexcept;

    // Shortest signed separation a - b on the ring.
    double periodic_distance(double a, double b) const noexcept;

    bool operator==(const Grid&) const = default;

private:
    std::size_t n_;
    double length_;
};

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace xpm
