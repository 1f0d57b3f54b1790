#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "xpm/grid.hpp"
#include "xpm/params.hpp"

namespace xpm {

// Closed-form solutions of the polariton equations. These share no code with
// the integrator: spectral sums below use a direct DFT.

struct ModeSolution {
    double q = 0;
    double chi = 0;  // sqrt(q^2 v_s^2 + beta^2)
    cplx psi_plus;
    cplx psi_minus;
};

// Signal mode q under a spatially flat probe:
//   psi_+(q,t) = psi_+(q,0) e^{i phi_s} [cos(chi t) - i (q v_s / chi) sin(chi t)]
//   psi_-(q,t) = i psi_+(-q,0) e^{i phi_s} (beta / chi) sin(chi t)
// where the backward amplitude psi_-(q) multiplies e^{-iqz}. `mirror` is
// psi_+(-q, 0); it defaults to psi_plus_0. phi_s may be complex (absorption).
ModeSolution signal_mode_solution(cplx psi_plus_0, double q, double t, const PolaritonRates& rates,
                                  cplx phi_s = {}, std::optional<cplx> mirror = std::nullopt);

// Whole-grid version: psi_+(z, 0) sampled on `grid` evolved to time t.
// Returns (psi_+(z,t), psi_-(z,t)).
std::pair<std::vector<cplx>, std::vector<cplx>>
signal_field_solution(const std::vector<cplx>& psi_plus_0, const Grid& grid, double t,
                      const PolaritonRates& rates, cplx phi_s = {});

// Strong-trapping limit |q| << beta/v_s:
//   Psi_+(z,t) = Psi_+(z,0) e^{i phi_s} cos(beta t)
//   Psi_-(z,t) = i Psi_+(z,0) e^{i phi_s} sin(beta t)
std::pair<cplx, cplx> trapped_signal(cplx psi_plus_initial, double t, const PolaritonRates& rates,
                                     cplx phi_s = {});

// Ratio (max |q| of the envelope) / (beta / v_s); the trapped form is only
// valid when this is small.
double trapping_bandwidth_ratio(double q_max, const PolaritonRates& rates);

// Probe in the absorption-free regime for a frozen signal intensity:
//   Psi_p(z,t) = Psi_p(0, t - z/v_p) exp[(i eta / v_p) int_0^z I_s dz'].
// The integral uses the composite midpoint rule with `cells` panels.
cplx probe_solution(double z, double t, const std::function<cplx(double)>& boundary,
                    const std::function<double(double)>& intensity, const PolaritonRates& rates,
                    double length, int cells = 256);

// Accumulated probe phase (complex for complex eta) at z:
// (eta / v_p) int_0^z I_s dz', midpoint rule.
cplx probe_phase_integral(double z, const std::function<double(double)>& intensity,
                          const PolaritonRates& rates, int cells = 256);

// Spreading rate of trapped signal mode q: q^2 v_s^2 / (pi beta),
// 0 <= |q| < beta/v_s.
double distortion_rate(double q, const PolaritonRates& rates);

}  // namespace xpm
