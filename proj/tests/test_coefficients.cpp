#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sqz/coefficients.hpp"
#include "sqz/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace sqz;

TEST_CASE("drive derived quantities")
{
    const DriveParams d{3.0, 4.0};
    CHECK(d.Omega_prime() == 5.0);
    CHECK(d.Delta_tilde() == doctest::Approx(0.8));
    CHECK(d.Omega_tilde() == doctest::Approx(0.6));
    CHECK_THROWS_AS(DriveParams({0.0, 0.0}).validate(), Error);
    CHECK_THROWS_AS(DriveParams({-1.0, 1.0}).validate(), Error);
    CHECK_NOTHROW(DriveParams({0.0, 1.0}).validate());
}

TEST_CASE("vacuum reservoir reduces to detuning only")
{
    const SqueezedVacuumParams bath{2.0, 0.0, 0.7, 10.0};
    const DriveParams drive{3.0, 1.5};
    const auto c = effective_coefficients(bath, drive, {});
    CHECK(c.n_tilde == 0.0);
    CHECK(c.m_tilde == complex(0.0, 0.0));
    CHECK(c.delta == doctest::Approx(0.75));
    CHECK(c.beta == complex(0.0, 0.0));
    CHECK(c.upsilon == complex(0.0, 0.0));
}

TEST_CASE("upsilon from two-point spectra")
{
    const SqueezedVacuumParams bath{1.0, 0.5, 0.0, 10.0};
    const DriveParams drive{10.0, 0.0};
    const complex u = upsilon(bath, drive);
    const double expected = (spectral_n(bath, 10.0) - spectral_n(bath, 20.0)) -
                            (spectral_m_abs(bath, 10.0) - spectral_m_abs(bath, 20.0));
    CHECK(u.imag() == 0.0);
    CHECK(u.real() == doctest::Approx(expected).epsilon(1e-15));

    // the carrier-sideband mismatch vanishes as the sideband approaches the carrier
    const DriveParams close{1e-9, 0.0};
    CHECK(std::abs(upsilon(bath, close)) < 1e-6);
}

TEST_CASE("resonant drive reduction")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const SqueezedVacuumParams bath{0.2 + u(rng), 0.0, 6.0 * u(rng), 5.0 + 10.0 * u(rng)};
        SqueezedVacuumParams b = bath;
        b.epsilon = 0.9 * b.gamma * u(rng);
        const DriveParams drive{0.5 + 20.0 * u(rng), 0.0};
        const auto c = evaluate_coefficients(b, drive, {});
        const double side = b.omega_L + drive.Omega;
        const complex ups = upsilon(b, drive);
        CHECK(c.n_tilde == doctest::Approx(spectral_n(b, side) + 0.5 * ups.real()).epsilon(1e-13));
        const complex m = spectral_m(b, side) - 0.5 * ups;
        CHECK(std::abs(c.m_tilde - m) <= 1e-13 * (1.0 + std::abs(m)));
        CHECK(c.delta == doctest::Approx(-0.5 * ups.imag()).epsilon(1e-12));
        CHECK(std::abs(c.beta) <= 1e-14);
    }
}

TEST_CASE("real profile at phi = 0")
{
    const SqueezedVacuumParams bath{1.0, 0.5, 0.0, 10.0};
    const DriveParams drive{10.0, 0.0};
    const auto c = evaluate_coefficients(bath, drive, {});
    CHECK(c.m_tilde.imag() == 0.0);
    CHECK(c.delta == 0.0);
    CHECK(c.beta == complex(0.0, 0.0));
    const double by_parts = spectral_m_abs(bath, 20.0) - 0.5 * upsilon(bath, drive).real();
    CHECK(c.m_tilde.real() == doctest::Approx(by_parts).epsilon(1e-15));
    // the carrier dominates this profile, so N~ goes negative and the checked path refuses it
    CHECK(c.n_tilde < 0.0);
    try {
        effective_coefficients(bath, drive, {});
        FAIL("expected UnphysicalCoefficients");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnphysicalCoefficients);
    }
}

TEST_CASE("phase covariance under phi -> phi + pi")
{
    SqueezedVacuumParams a{1.0, 0.4, 0.3, 8.0};
    SqueezedVacuumParams b = a;
    b.phi += std::numbers::pi;
    const DriveParams drive{4.0, 1.5};
    const SqueezingShifts s{0.2, 0.3};
    const auto ca = evaluate_coefficients(a, drive, s);
    const auto cb = evaluate_coefficients(b, drive, s);

    // recompute b from a by flipping every e^{i phi} factor
    const double dt = drive.Delta_tilde();
    const double mis = 0.5 * (1.0 - dt * dt);
    const double side = a.omega_L + drive.Omega_prime();
    const double dn = spectral_n(a, a.omega_L) - spectral_n(a, side);
    const double dm = spectral_m_abs(a, a.omega_L) - spectral_m_abs(a, side);
    const complex ph = std::polar(1.0, a.phi);
    const complex ups_b = dn + dm * ph;
    const complex m_b = -spectral_m_abs(a, side) * ph - mis * ups_b - complex(0.0, 1.0) * dt * s.delta_M * ph;
    CHECK(std::abs(cb.upsilon - ups_b) < 1e-14);
    CHECK(std::abs(cb.m_tilde - m_b) < 1e-13);
    CHECK(cb.n_tilde == doctest::Approx(spectral_n(a, side) + mis * ups_b.real()).epsilon(1e-14));
    CHECK(ca.n_tilde != doctest::Approx(cb.n_tilde));
}

TEST_CASE("asymptotic shifts preset")
{
    const SqueezedVacuumParams bath{1.0, 0.6, 0.0, 10.0};
    const DriveParams drive{200.0, 2.0};
    const auto s = SqueezingShifts::preset("asymptotic", bath, drive);
    CHECK(s.delta_N == 0.0);
    const double m_side = spectral_m_abs(bath, 10.0 + drive.Omega_prime());
    const double tan_theta = m_side / (drive.Delta_tilde() * s.delta_M);
    CHECK(tan_theta == doctest::Approx((1.0 - 0.36) / (2.0 * 2.0 * 1.0)).epsilon(1e-12));
    CHECK(SqueezingShifts::preset("zero", bath, drive).delta_M == 0.0);
    CHECK_THROWS_AS(SqueezingShifts::preset("bogus", bath, drive), Error);
}
