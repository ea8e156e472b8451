#pragma once

#include "sqz/fit.hpp"

namespace sqz {

/// delta_N that cancels the quadrature cross term (Im M~ + delta = 0) for the
/// given delta_M. Requires Delta != 0.
SqueezingShifts decoupling_shifts(const SqueezedVacuumParams& bath, const DriveParams& drive, double delta_M);

struct RateCheck {
    double analytic = 0.0;
    double fitted = 0.0;
    double residual = 0.0;
    double relative_error() const { return std::abs(fitted - analytic) / std::abs(analytic); }
};

/// Integrates from |e> and fits <sigma_z> against gamma (1 + 2 N~).
/// Meaningful when the drive is off (beta = 0 and sigma_z decouples).
RateCheck population_rate_check(const SqueezedVacuumParams& bath, const DriveParams& drive,
                                const SqueezingShifts& shifts, double rel_tol = 1e-10);

/// Integrates from the x-polarised state and fits <sigma_x> against
/// gamma (1/2 + N~ + Re M~). Meaningful when Im M~ + delta = 0.
RateCheck quadrature_rate_check(const SqueezedVacuumParams& bath, const DriveParams& drive,
                                const SqueezingShifts& shifts, double rel_tol = 1e-10);

} // namespace sqz
