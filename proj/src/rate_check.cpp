#include "sqz/rate_check.hpp"

#include "sqz/error.hpp"

#include <cmath>

namespace sqz {

SqueezingShifts decoupling_shifts(const SqueezedVacuumParams& bath, const DriveParams& drive, double delta_M)
{
    drive.validate();
    if (drive.Delta == 0.0)
        throw Error(ErrorKind::DivisionByZero, "delta_N cannot cancel the cross term when Delta = 0");
    // delta depends on delta_N only through + Delta~ delta_N; Im M~ does not depend on it.
    const auto base = evaluate_coefficients(bath, drive, {0.0, delta_M});
    return {-(base.m_tilde.imag() + base.delta) / drive.Delta_tilde(), delta_M};
}

namespace {

RateCheck run_check(const SqueezedVacuumParams& bath, const DriveParams& drive, const SqueezingShifts& shifts,
                    double rel_tol, bool population)
{
    const auto coeffs = effective_coefficients(bath, drive, shifts);
    const double analytic = population ? population_decay_rate(bath.gamma, coeffs)
                                       : quadrature_decay_rate(bath.gamma, coeffs);
    if (!(analytic > 0.0))
        throw Error(ErrorKind::IllConditioned, "analytic rate is not positive");

    const auto generator = build_liouvillian(bath, drive, coeffs);
    EvolveOptions opts;
    opts.rel_tol = rel_tol;
    opts.abs_tol = 1e-14;
    opts.samples = 401;
    const DensityMatrix initial =
        population ? DensityMatrix::excited() : BlochState{complex(0.5, 0.0), 0.0}.to_density();
    const auto traj = evolve(generator, initial, 0.0, 6.0 / analytic, opts);

    FitOptions fo;
    fo.residual_limit = 1e-5;
    const auto fit = fit_decay_rate(traj, population ? Observable::SigmaZ : Observable::SigmaX, fo);
    return {analytic, fit.rate, fit.residual};
}

} // namespace

RateCheck population_rate_check(const SqueezedVacuumParams& bath, const DriveParams& drive,
                                const SqueezingShifts& shifts, double rel_tol)
{
    return run_check(bath, drive, shifts, rel_tol, true);
}

RateCheck quadrature_rate_check(const SqueezedVacuumParams& bath, const DriveParams& drive,
                                const SqueezingShifts& shifts, double rel_tol)
{
    return run_check(bath, drive, shifts, rel_tol, false);
}

} // namespace sqz
