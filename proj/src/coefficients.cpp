#include "sqz/coefficients.hpp"

#include "sqz/error.hpp"

#include <cmath>

namespace sqz {

double DriveParams::Omega_prime() const noexcept { return std::hypot(Omega, Delta); }
double DriveParams::Delta_tilde() const noexcept { return Delta / Omega_prime(); }
double DriveParams::Omega_tilde() const noexcept { return Omega / Omega_prime(); }

void DriveParams::validate() const
{
    if (!std::isfinite(Omega) || Omega < 0.0)
        throw Error(ErrorKind::InvalidParams, "Omega must be finite and >= 0");
    if (!std::isfinite(Delta))
        throw Error(ErrorKind::InvalidParams, "Delta must be finite");
    if (!(Omega_prime() > 0.0))
        throw Error(ErrorKind::InvalidParams, "Omega and Delta cannot both vanish (Omega' = 0)");
}

SqueezingShifts SqueezingShifts::asymptotic(const SqueezedVacuumParams& bath, const DriveParams& drive)
{
    bath.validate();
    drive.validate();
    const double omega_p = drive.Omega_prime();
    const double m_side = spectral_m_abs(bath, bath.omega_L + omega_p);
    const double mu = bath.mu();
    const double lambda = bath.lambda();
    return {0.0, m_side * omega_p * (mu + lambda) / (mu * lambda)};
}

SqueezingShifts SqueezingShifts::preset(const std::string& name, const SqueezedVacuumParams& bath,
                                        const DriveParams& drive)
{
    if (name == "zero")
        return zero();
    if (name == "asymptotic")
        return asymptotic(bath, drive);
    throw Error(ErrorKind::InvalidParams, "unknown shifts preset '" + name + "'");
}

complex upsilon(const SqueezedVacuumParams& bath, const DriveParams& drive)
{
    bath.validate();
    drive.validate();
    const double carrier = bath.omega_L;
    const double sideband = bath.omega_L + drive.Omega_prime();
    const double dn = spectral_n(bath, carrier) - spectral_n(bath, sideband);
    const double dm = spectral_m_abs(bath, carrier) - spectral_m_abs(bath, sideband);
    return dn - std::polar(dm, bath.phi);
}

EffectiveCoefficients evaluate_coefficients(const SqueezedVacuumParams& bath,
                                            const DriveParams& drive,
                                            const SqueezingShifts& shifts)
{
    bath.validate();
    drive.validate();
    if (!std::isfinite(shifts.delta_N) || !std::isfinite(shifts.delta_M))
        throw Error(ErrorKind::InvalidParams, "squeezing shifts must be finite");

    const complex i{0.0, 1.0};
    const double dt = drive.Delta_tilde();
    const double ot = drive.Omega_tilde();
    const double mismatch = 0.5 * (1.0 - dt * dt);
    const double sideband = bath.omega_L + drive.Omega_prime();
    const complex phase = std::polar(1.0, bath.phi);

    EffectiveCoefficients c;
    c.upsilon = upsilon(bath, drive);
    c.n_tilde = spectral_n(bath, sideband) + mismatch * c.upsilon.real();
    c.m_tilde = spectral_m(bath, sideband) - mismatch * c.upsilon + i * dt * shifts.delta_M * phase;
    c.delta = drive.Delta / bath.gamma - mismatch * c.upsilon.imag() + dt * shifts.delta_N;
    c.beta = bath.gamma * ot * (shifts.delta_N + shifts.delta_M * phase - i * dt * c.upsilon);
    return c;
}

EffectiveCoefficients effective_coefficients(const SqueezedVacuumParams& bath,
                                             const DriveParams& drive,
                                             const SqueezingShifts& shifts)
{
    auto c = evaluate_coefficients(bath, drive, shifts);
    if (c.n_tilde < 0.0)
        throw Error(ErrorKind::UnphysicalCoefficients,
                    "effective photon number N~ = " + std::to_string(c.n_tilde) + " < 0");
    return c;
}

} // namespace sqz
