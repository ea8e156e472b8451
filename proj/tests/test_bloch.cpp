#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sqz/bloch.hpp"
#include "sqz/error.hpp"
#include "sqz/fit.hpp"
#include "sqz/rate_check.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

using namespace sqz;

namespace {

struct Draw {
    SqueezedVacuumParams bath;
    DriveParams drive;
    SqueezingShifts shifts;
};

Draw random_draw(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Draw d;
    d.bath.gamma = 0.3 + 2.0 * u(rng);
    d.bath.epsilon = 0.95 * d.bath.gamma * u(rng);
    d.bath.phi = 2.0 * std::numbers::pi * u(rng);
    d.bath.omega_L = 1.0 + 30.0 * u(rng);
    d.drive = {10.0 * u(rng), 6.0 * (u(rng) - 0.5)};
    d.shifts = {u(rng) - 0.5, u(rng)};
    return d;
}

DensityMatrix random_state(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix2c a;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            a(i, j) = complex(n(rng), n(rng));
    DensityMatrix d;
    d.rho = a * a.adjoint();
    d.rho /= d.rho.trace();
    return d;
}

double sz_of(const Trajectory& t) { return t.samples.back().state.to_bloch().s_z; }

} // namespace

TEST_CASE("Pauli conventions")
{
    const Matrix2c sp = pauli::sigma_plus();
    const Matrix2c sm = pauli::sigma_minus();
    CHECK((sp * sm - sm * sp - pauli::sigma_z()).norm() == 0.0);
    const auto e = DensityMatrix::excited().to_bloch();
    CHECK(e.s_z == 1.0);
    CHECK(DensityMatrix::ground().to_bloch().s_z == -1.0);
    const BlochState x{complex(0.5, 0.0), 0.0};
    CHECK(x.sigma_x() == 1.0);
    CHECK(x.inside_ball());
    CHECK_FALSE(BlochState{complex(0.6, 0.0), 0.0}.inside_ball());
}

TEST_CASE("spontaneous emission from the excited state")
{
    const SqueezedVacuumParams bath{1.0, 0.0, 0.0, 5.0};
    const DriveParams drive{0.0, 1.0};
    const auto c = effective_coefficients(bath, drive, {});
    const auto eq = MasterEquation::from(bath, drive, c);
    const Matrix2c d = eq.apply(DensityMatrix::excited().rho);
    CHECK((d(0, 0) - d(1, 1)).real() == doctest::Approx(-2.0));
    CHECK(bloch_derivative(DensityMatrix::excited().to_bloch(), eq).ds_z == doctest::Approx(-2.0));
    const auto g = bloch_derivative(BlochState{}, eq);
    CHECK(std::abs(g.ds_minus) == 0.0);
    CHECK(g.ds_z == 0.0);
}

TEST_CASE("generator preserves trace and hermiticity")
{
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
        const auto d = random_draw(rng);
        const auto c = evaluate_coefficients(d.bath, d.drive, d.shifts);
        const auto eq = MasterEquation::from(d.bath, d.drive, c);
        CHECK(std::abs(eq.apply(Matrix2c::Identity() / 2.0).trace()) < 1e-12);
        const Matrix2c out = eq.apply(random_state(rng).rho);
        CHECK(std::abs(out.trace()) < 1e-12);
        CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("superoperator and Bloch equations agree")
{
    std::mt19937_64 rng(9);
    for (int k = 0; k < 300; ++k) {
        const auto d = random_draw(rng);
        const auto c = evaluate_coefficients(d.bath, d.drive, d.shifts);
        const auto eq = MasterEquation::from(d.bath, d.drive, c);
        const auto L = build_liouvillian(eq);
        const auto rho = random_state(rng);
        const Matrix2c out = L.apply(rho.rho);
        CHECK((out - eq.apply(rho.rho)).cwiseAbs().maxCoeff() < 1e-12);

        const auto b = bloch_derivative(rho.to_bloch(), eq);
        const complex dsm = (pauli::sigma_minus() * out).trace();
        const double dsz = (pauli::sigma_z() * out).trace().real();
        const double scale = 1.0 + std::abs(b.ds_minus) + std::abs(b.ds_z);
        CHECK(std::abs(dsm - b.ds_minus) < 1e-12 * scale);
        CHECK(std::abs(dsz - b.ds_z) < 1e-12 * scale);
    }
}

TEST_CASE("vectorisation round trip")
{
    Matrix2c m;
    m << complex(1, 2), complex(3, 4), complex(5, 6), complex(7, 8);
    CHECK(unvectorize(vectorize(m)) == m);
}

TEST_CASE("undriven steady state")
{
    std::mt19937_64 rng(21);
    for (int k = 0; k < 50; ++k) {
        auto d = random_draw(rng);
        d.drive.Omega = 0.0;
        const auto c = evaluate_coefficients(d.bath, d.drive, {});
        if (c.n_tilde < 0.0)
            continue;
        const auto eq = MasterEquation::from(d.bath, d.drive, c);
        const double nt = c.n_tilde;
        const auto s = steady_state(eq);
        CHECK(s.s_z == doctest::Approx(-1.0 / (1.0 + 2.0 * nt)).epsilon(1e-12));
        const double sz = 0.3;
        CHECK(bloch_derivative(BlochState{0.0, sz}, eq).ds_z ==
              doctest::Approx(-d.bath.gamma * (1.0 + 2.0 * nt) * sz - d.bath.gamma).epsilon(1e-12));
    }
}

TEST_CASE("driven steady state is a fixed point of the Liouvillian")
{
    std::mt19937_64 rng(22);
    for (int k = 0; k < 50; ++k) {
        const auto d = random_draw(rng);
        const auto c = evaluate_coefficients(d.bath, d.drive, d.shifts);
        const auto eq = MasterEquation::from(d.bath, d.drive, c);
        const auto s = steady_state(eq);
        CHECK(eq.apply(s.to_density().rho).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("vacuum closed forms")
{
    const SqueezedVacuumParams bath{1.0, 0.0, 0.0, 5.0};
    const DriveParams drive{0.0, 1.0};
    const auto L = build_liouvillian(bath, drive, effective_coefficients(bath, drive, {}));
    const auto excited = evolve(L, DensityMatrix::excited(), 0.0, 2.0);
    for (const auto& s : excited.samples)
        CHECK(s.state.to_bloch().s_z == doctest::Approx(2.0 * std::exp(-s.t) - 1.0).epsilon(1e-8));
    CHECK(excited.max_trace_error < 1e-10);
    CHECK(excited.positivity_warnings == 0);

    const auto mixed = evolve(L, DensityMatrix::maximally_mixed(), 0.0, 3.0);
    CHECK(sz_of(mixed) == doctest::Approx(-(1.0 - std::exp(-3.0))).epsilon(1e-8));
}

TEST_CASE("evolve rejects bad input")
{
    const SqueezedVacuumParams bath{1.0, 0.0, 0.0, 5.0};
    const DriveParams drive{0.0, 1.0};
    const auto L = build_liouvillian(bath, drive, effective_coefficients(bath, drive, {}));
    CHECK_THROWS_AS(evolve(L, DensityMatrix::excited(), 1.0, 1.0), Error);
    CHECK_THROWS_AS(evolve(L, BlochState{complex(0.9, 0.0), 0.5}, 0.0, 1.0), Error);
    DensityMatrix bad;
    bad.rho(0, 0) = 2.0;
    CHECK_THROWS_AS(evolve(L, bad, 0.0, 1.0), Error);
}

TEST_CASE("trajectory csv")
{
    const SqueezedVacuumParams bath{1.0, 0.0, 0.0, 5.0};
    const DriveParams drive{0.0, 1.0};
    const auto L = build_liouvillian(bath, drive, effective_coefficients(bath, drive, {}));
    EvolveOptions o;
    o.samples = 3;
    std::ostringstream os;
    write_trajectory_csv(os, evolve(L, DensityMatrix::excited(), 0.0, 1.0, o));
    const std::string s = os.str();
    CHECK(s.rfind("t,", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 4);
}

TEST_CASE("decay rates")
{
    EffectiveCoefficients c;
    CHECK(quadrature_decay_rate(1.0, c) == 0.5);
    CHECK(population_decay_rate(1.0, c) == 1.0);
    c.n_tilde = 1.5;
    c.m_tilde = complex(0.5, 0.0);
    CHECK(quadrature_decay_rate(1.0, c) == 2.5);
    c.n_tilde = 0.5;
    CHECK(population_decay_rate(2.0, c) == 4.0);

    c = {};
    c.n_tilde = 0.2;
    c.m_tilde = complex(0.1, 0.3);
    c.delta = -0.3;
    const auto r = quadrature_rates(1.0, c);
    CHECK(r.cross_term == doctest::Approx(0.0));
    CHECK(std::max(r.effective[0], r.effective[1]) == doctest::Approx(quadrature_decay_rate(1.0, c)));
}

TEST_CASE("exponential fit on synthetic data")
{
    std::vector<double> t, y;
    for (int k = 0; k <= 200; ++k) {
        t.push_back(0.01 * k);
        y.push_back(std::exp(-3.0 * t.back()));
    }
    const auto f = fit_exponential(t, y);
    CHECK(f.rate == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(f.offset == doctest::Approx(0.0).epsilon(1e-9));

    std::vector<double> flat(t.size(), 0.25);
    try {
        fit_exponential(t, flat);
        FAIL("expected FitDegenerate");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FitDegenerate);
    }
    std::vector<double> slow;
    for (double ti : t)
        slow.push_back(std::exp(-0.1 * ti));
    CHECK_THROWS_AS(fit_exponential(t, slow), Error);
}

TEST_CASE("vacuum population fit gives gamma")
{
    const SqueezedVacuumParams bath{1.3, 0.0, 0.0, 5.0};
    const DriveParams drive{0.0, 1.0};
    const auto check = population_rate_check(bath, drive, {});
    CHECK(check.analytic == doctest::Approx(1.3));
    CHECK(check.relative_error() < 1e-6);
}

TEST_CASE("fitted rates reproduce the analytic ones")
{
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int pop = 0, dec = 0;
    for (int attempt = 0; attempt < 200 && (pop < 4 || dec < 4); ++attempt) {
        auto d = random_draw(rng);
        d.bath.epsilon = 0.9 * d.bath.gamma * u(rng);
        if (std::abs(d.drive.Delta) < 0.2)
            continue;
        const bool population = pop < 4;
        if (population) {
            d.drive.Omega = 0.0;
            d.shifts = {};
        } else {
            d.shifts = decoupling_shifts(d.bath, d.drive, u(rng));
        }
        const auto c = evaluate_coefficients(d.bath, d.drive, d.shifts);
        if (c.n_tilde < 0.0 || relaxation_abscissa(build_liouvillian(d.bath, d.drive, c)) >= 0.0)
            continue;
        if (!population)
            CHECK(std::abs(c.m_tilde.imag() + c.delta) < 1e-9 * (1.0 + std::abs(c.delta)));
        const auto check = population ? population_rate_check(d.bath, d.drive, d.shifts)
                                       : quadrature_rate_check(d.bath, d.drive, d.shifts);
        CHECK(check.relative_error() < 1e-6);
        (population ? pop : dec) += 1;
    }
    CHECK(pop == 4);
    CHECK(dec == 4);
}
