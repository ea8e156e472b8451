#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sqz/error.hpp"
#include "sqz/weak.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace sqz;

namespace {

// <f| U(t_f - t) A U(t - t_i) |i> / <f| U(t_f - t_i) |i> written out component by component.
complex weak_value_by_hand(const complex a[2][2], const complex pre[2], const complex post[2], double w,
                           double t_i, double t, double t_f)
{
    auto phase = [w](double dt, int row) { return std::polar(1.0, (row == 0 ? 0.5 : -0.5) * w * dt); };
    complex num = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            num += std::conj(post[r]) * phase(t_f - t, r) * a[r][c] * phase(t - t_i, c) * pre[c];
    complex den = 0.0;
    for (int r = 0; r < 2; ++r)
        den += std::conj(post[r]) * phase(t_f - t_i, r) * pre[r];
    return num / den;
}

double quadrature_decay_time(double Gamma, double T)
{
    auto p = [&](double s) { return std::exp(-Gamma * s) * -std::expm1(-Gamma * (T - s)) / -std::expm1(-Gamma * T); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(p, 0.0, T, 15, 1e-13);
}

} // namespace

TEST_CASE("measurement schedule")
{
    const MeasurementSchedule s(1.5, 100, 10.0);
    CHECK(s.tau_M() == doctest::Approx(0.1));
    CHECK(s.t_f() == doctest::Approx(11.5));
    CHECK(s.window() == doctest::Approx(10.0));
    CHECK_THROWS_AS(MeasurementSchedule(0.0, 0, 1.0), Error);
    CHECK_THROWS_AS(MeasurementSchedule(0.0, 5, 0.0), Error);
}

TEST_CASE("free propagator")
{
    CHECK(propagator(3.0, 0.0) == Matrix2c::Identity());
    CHECK((propagator(1.0, 2.0 * std::numbers::pi) + Matrix2c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    const Matrix2c u = propagator(0.7, 1.3);
    CHECK((u * u.adjoint() - Matrix2c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("x projector")
{
    const Matrix2c p = x_projector();
    CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(p(0, 1).real() == doctest::Approx(0.5));
    CHECK(p.trace().real() == doctest::Approx(1.0));
}

TEST_CASE("weak values")
{
    const PrePostSelection xy(PrePostSelection::x_polarized(), PrePostSelection::y_polarized());
    CHECK(std::abs(weak_value(Matrix2c::Identity(), xy, 2.0, 0.0, 0.4, 1.0) - 1.0) < 1e-14);

    const Vector2c e(1.0, 0.0);
    const PrePostSelection ee(e, e);
    for (double t : {0.0, 0.3, 0.9})
        CHECK(std::abs(weak_value(pauli::sigma_z(), ee, 5.0, 0.0, t, 1.0) - 1.0) < 1e-14);
    const Vector2c g(0.0, 1.0);
    CHECK(std::abs(weak_value(pauli::sigma_z(), PrePostSelection(g, g), 5.0, 0.0, 0.5, 1.0) + 1.0) < 1e-14);

    const Matrix2c p = x_projector();
    const complex a[2][2] = {{p(0, 0), p(0, 1)}, {p(1, 0), p(1, 1)}};
    const double r = 1.0 / std::sqrt(2.0);
    const complex pre[2] = {r, r};
    const complex post[2] = {r, complex(0.0, r)};
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const double w = 0.1 + 5.0 * u(rng);
        const double t_f = 0.5 + 3.0 * u(rng);
        const double t = t_f * u(rng);
        const complex lib = weak_value(p, xy, w, 0.0, t, t_f);
        const complex ref = weak_value_by_hand(a, pre, post, w, 0.0, t, t_f);
        CHECK(std::abs(lib - ref) < 1e-12 * (1.0 + std::abs(ref)));
    }
    // numpy reference, outside the eigenvalue range of the projector
    CHECK(std::abs(weak_value(p, xy, 1.0, 0.0, 0.5, 1.0) - 1.7557859607078485) < 1e-14);

    const PrePostSelection orth(e, g);
    try {
        weak_value(p, orth, 1.0, 0.0, 0.5, 1.0);
        FAIL("expected OrthogonalSelection");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::OrthogonalSelection);
    }
    CHECK_THROWS_AS(PrePostSelection(Vector2c::Zero(), e), Error);
}

TEST_CASE("weak survival law")
{
    const MeasurementSchedule s(0.0, 20, 10.0);
    CHECK(weak_survival(1.0, s, s.t_i()) == 1.0);
    CHECK(weak_survival(1.0, s, s.t_f()) == 0.0);
    const double mid = std::exp(-1.0) * (1.0 - std::exp(-1.0)) / (1.0 - std::exp(-2.0));
    CHECK(mid == doctest::Approx(0.26894).epsilon(1e-5));
    CHECK(weak_survival(1.0, s, 1.0) == doctest::Approx(mid).epsilon(1e-15));

    double prev = 1.0;
    for (int k = 1; k < 100; ++k) {
        const double v = weak_survival(1.0, s, 0.02 * k);
        CHECK(v < prev);
        prev = v;
    }
    try {
        weak_survival(1.0, s, 2.5);
        FAIL("expected OutOfWindow");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::OutOfWindow);
    }
}

TEST_CASE("decay time integral")
{
    CHECK(decay_time_exact(1.0, 2.0) == doctest::Approx(1.0 - 2.0 / (std::exp(2.0) - 1.0)).epsilon(1e-14));
    CHECK(decay_time_exact(1.0, 2.0) == doctest::Approx(0.68697).epsilon(1e-5));
    CHECK(decay_time_exact(1.0, 2.0) == doctest::Approx(quadrature_decay_time(1.0, 2.0)).epsilon(1e-12));
    CHECK(decay_time_exact(0.0, 3.0) == 1.5);
    CHECK(decay_time_exact(1e-9, 3.0) == doctest::Approx(1.5).epsilon(1e-8));
    CHECK(decay_time_exact(2.0, 1e3) == doctest::Approx(0.5).epsilon(1e-14));

    // both branches meet at the series threshold
    const double below = decay_time_exact(1.0, std::nextafter(1e-2, 0.0));
    const double above = decay_time_exact(1.0, 1e-2);
    CHECK(below == doctest::Approx(above).epsilon(1e-13));

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double x = std::pow(10.0, -6.0 + 7.3 * u(rng));
        const double T = 0.1 + 10.0 * u(rng);
        const double G = x / T;
        CHECK(decay_time_exact(G, T) == doctest::Approx(quadrature_decay_time(G, T)).epsilon(1e-9));
    }
}

TEST_CASE("frequent-measurement approximation")
{
    CHECK(decay_time_approx(0.0, 10.0, 100.0) == doctest::Approx(5.0));
    CHECK(decay_time_approx(2.0, 10.0, std::numeric_limits<double>::infinity()) == 0.5);
    CHECK(decay_time_approx(0.1, 10.0, 100.0) == doctest::Approx(3.3333333333).epsilon(1e-9));
    const double exact = decay_time_exact(0.1, MeasurementSchedule(0.0, 100, 10.0));
    CHECK(exact == doctest::Approx(10.0 - 10.0 / (std::exp(1.0) - 1.0)).epsilon(1e-14));
    CHECK(exact == doctest::Approx(4.180).epsilon(1e-3));
    CHECK_THROWS_AS(decay_time_approx(1.0, 10.0, 0.5), Error);
}

TEST_CASE("decoherence and Zeno times")
{
    EffectiveCoefficients c;
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(decoherence_time(2.0, c, 10.0, inf) == 1.0);
    CHECK(zeno_time(2.0, c, 10.0, inf) == 0.5);

    c.n_tilde = 1.5;
    c.m_tilde = complex(0.5, 0.2);
    CHECK(decoherence_time(1.0, c, 25.0, 100.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(decoherence_time(1.0, c, 25.0, 100.0) == decay_time_approx(quadrature_decay_rate(1.0, c), 25.0, 100.0));

    c.n_tilde = 0.5;
    CHECK(zeno_time(2.0, c, 100.0, 100.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(zeno_time(2.0, c, 100.0, 100.0) == decay_time_approx(population_decay_rate(2.0, c), 100.0, 100.0));
}
