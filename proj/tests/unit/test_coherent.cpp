#include <cmath>

#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "xpm/errors.hpp"
#include "xpm/quantum.hpp"

using namespace xpm;

namespace {

PolaritonRates rates(double eta)
{
    PolaritonRates r;
    r.v_p = 1;
    r.v_s = 4;
    r.beta = 2;
    r.eta = eta;
    return r;
}

CoherentSettings settings()
{
    CoherentSettings s;
    s.length = 1;
    s.c = 8;
    s.cells = 2048;
    return s;
}

}  // namespace

TEST(Coherent, InputSums)
{
    CoherentInput in;
    in.probe = {{1.0, {0.5, 0}}, {2.0, {0, 0.25}}};
    in.signal = {{3.0, {1, 0}}};
    EXPECT_NEAR(std::abs(in.alpha_p(0.1, 2.0) - (0.5 * std::polar(1.0, -0.2) + cplx(0, 0.25) * std::polar(1.0, -0.4))),
                0.0, 1e-15);
    EXPECT_NEAR(std::abs(in.alpha_plus(0.5) - std::polar(1.0, 1.5)), 0.0, 1e-15);
}

TEST(Coherent, NoSignalLeavesProbeUntouched)
{
    CoherentInput in;
    in.probe = {{0.0, {0.7, 0.1}}};
    const CoherentFields f = coherent_expectation(in, rates(1.0), settings(), 0.6, 0.9);
    EXPECT_NEAR(std::abs(f.probe - cplx(0.7, 0.1)), 0.0, 1e-15);
    EXPECT_EQ(f.forward, cplx{});
}

TEST(Coherent, BranchSplitFollowsBragg)
{
    CoherentInput in;
    in.signal = {{0.0, {0.6, 0}}};
    const auto r = rates(0.0);
    const CoherentFields f = coherent_expectation(in, r, settings(), 0.3, 0.7);
    EXPECT_NEAR(std::abs(f.forward - 0.6 * std::cos(1.4)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.backward - cplx(0, 0.6 * std::sin(1.4))), 0.0, 1e-15);
}

TEST(Coherent, MatchesTruncatedFock)
{
    CoherentInput in;
    in.probe = {{0.0, {0.8, -0.3}}};
    in.signal = {{0.0, {0.4, 0.2}}, {2 * kPi, {-0.2, 0.1}}};
    const auto r = rates(0.6);
    const auto s = settings();
    const double z = 0.7, t = 0.8;
    const CoherentFields f = coherent_expectation(in, r, s, z, t);

    double n1 = 0, n2 = 0;
    const int m = 2048;
    for (int i = 0; i < m; ++i) {
        const double x = (i + 0.5) * z / m;
        (i < m / 2 ? n1 : n2) += std::norm(in.alpha_plus(x)) * z / m;
    }
    const double theta = r.eta.real() * s.c / r.v_s;
    const auto fock = oracle::fock_cross_kerr(in.alpha_p(t - z / r.v_p, s.c), {std::sqrt(n1), std::sqrt(n2)}, theta, 6);
    EXPECT_LT(fock.truncation, 1e-3);
    EXPECT_NEAR(std::abs(f.probe - fock.expectation) / std::abs(fock.expectation), 0.0, 1e-3);
}

TEST(Coherent, FockOracleConvergesWithCutoff)
{
    // Truncation error falls off factorially; exact value from the Poisson sum.
    const cplx a{0.9, 0.3};
    const double nbar = 0.8, theta = 1.1;
    const cplx exact = a * std::exp(nbar * (std::exp(cplx(0, theta)) - 1.0));
    double prev = 1;
    for (int n : {3, 4, 5, 6}) {
        const auto r = oracle::fock_cross_kerr(a, {std::sqrt(nbar)}, theta, n);
        const double err = std::abs(r.expectation - exact) / std::abs(exact);
        EXPECT_LT(err, prev);
        prev = err;
    }
    EXPECT_LT(prev, 1e-3);
}

TEST(Coherent, WeakCouplingIsClassicalPhase)
{
    CoherentInput in;
    in.probe = {{0.0, {1.0, 0}}};
    in.signal = {{0.0, {0.5, 0}}, {2 * kPi, {0.2, 0}}};
    const auto r = rates(1e-4);
    const auto s = settings();
    const CoherentFields f = coherent_expectation(in, r, s, 0.9, 1.0);
    const double got = std::arg(f.probe / in.alpha_p(1.0 - 0.9, s.c));
    const double want = coherent_classical_probe_phase(in, r, s, 0.9);
    EXPECT_NEAR(got, want, 1e-6 * std::abs(want));
}

TEST(Coherent, RejectsBadSettings)
{
    CoherentInput in;
    auto s = settings();
    s.length = 0;
    EXPECT_THROW(coherent_expectation(in, rates(1), s, 0.1, 0.1), DomainError);
    s = settings();
    s.cells = 0;
    EXPECT_THROW(coherent_expectation(in, rates(1), s, 0.1, 0.1), DomainError);
    auto r = rates(1);
    r.v_s = 0;
    EXPECT_THROW(coherent_classical_probe_phase(in, r, settings(), 0.1), DomainError);
}
