#include "xpm/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <numeric>

#include "xpm/errors.hpp"

namespace xpm {

namespace {

std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

FftPlan::FftPlan(std::vector<int> dims, int howmany)
{
    if (dims.empty() || howmany < 1) throw DomainError("FftPlan: empty transform");
    points_ = std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                              [](std::size_t a, int d) { return a * static_cast<std::size_t>(d); });
    total_ = points_ * static_cast<std::size_t>(howmany);

    std::vector<std::complex<double>> scratch(total_);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int rank = static_cast<int>(dims.size());

    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_many_dft(rank, dims.data(), howmany, as_fftw(scratch.data()), nullptr,
                                  howmany, 1, as_fftw(scratch.data()), nullptr, howmany, 1,
                                  FFTW_FORWARD, flags);
    backward_ = fftw_plan_many_dft(rank, dims.data(), howmany, as_fftw(scratch.data()), nullptr,
                                   howmany, 1, as_fftw(scratch.data()), nullptr, howmany, 1,
                                   FFTW_BACKWARD, flags);
    if (!forward_ || !backward_) {
        release();
        throw NumericalError("FftPlan: FFTW planning failed");
    }
}

FftPlan::~FftPlan() { release(); }

FftPlan::FftPlan(FftPlan&& other) noexcept
    : total_(other.total_), points_(other.points_), forward_(other.forward_),
      backward_(other.backward_)
{
    other.forward_ = other.backward_ = nullptr;
}

FftPlan& FftPlan::operator=(FftPlan&& other) noexcept
{
    if (this != &other) {
        release();
        total_ = other.total_;
        points_ = other.points_;
        forward_ = other.forward_;
        backward_ = other.backward_;
        other.forward_ = other.backward_ = nullptr;
    }
    return *this;
}

void FftPlan::release() noexcept
{
    if (!forward_ && !backward_) return;
    std::lock_guard lock(planner_mutex());
    if (forward_) fftw_destroy_plan(static_cast<fftw_plan>(forward_));
    if (backward_) fftw_destroy_plan(static_cast<fftw_plan>(backward_));
    forward_ = backward_ = nullptr;
}

void FftPlan::forward(std::span<std::complex<double>> data) const
{
    if (data.size() != total_) throw DomainError("FftPlan: buffer size mismatch");
    fftw_execute_dft(static_cast<fftw_plan>(forward_), as_fftw(data.data()), as_fftw(data.data()));
}

void FftPlan::inverse(std::span<std::complex<double>> data) const
{
    if (data.size() != total_) throw DomainError("FftPlan: buffer size mismatch");
    fftw_execute_dft(static_cast<fftw_plan>(backward_), as_fftw(data.data()), as_fftw(data.data()));
    const double scale = 1.0 / static_cast<double>(points_);
    for (auto& x : data) x *= scale;
}

}  // namespace xpm
