#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace xpm {

// Owning wrapper around an FFTW plan for a batch of complex transforms of
// rank 1 or 2 over interleaved data. Plans are created with
// FFTW_UNALIGNED so any buffer of the planned size can be transformed.
// Planner access is serialized internally; execution is thread-safe.
class FftPlan {
public:
    // `dims` is the transform shape (row-major), `howmany` interleaved
    // transforms with element stride `howmany` and batch distance 1.
    FftPlan(std::vector<int> dims, int howmany = 1);
    ~FftPlan();

    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;
    FftPlan(FftPlan&& other) noexcept;
    FftPlan& operator=(FftPlan&& other) noexcept;

    std::size_t size() const noexcept { return total_; }

    void forward(std::span<std::complex<double>> data) const;
    // Normalized: inverse(forward(x)) == x.
    void inverse(std::span<std::complex<double>> data) const;

private:
    void release() noexcept;

    std::size_t total_ = 0;
    std::size_t points_ = 0;
    void* forward_ = nullptr;
    void* backward_ = nullptr;
};

}  // namespace xpm
