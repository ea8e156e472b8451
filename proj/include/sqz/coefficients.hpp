#pragma once

#include "sqz/spectrum.hpp"

#include <string>

namespace sqz {

/// Coherent laser drive: Rabi frequency and detuning Delta = omega_L - omega_A.
struct DriveParams {
    double Omega = 1.0;
    double Delta = 0.0;

    double Omega_prime() const noexcept;       ///< sqrt(Omega^2 + Delta^2)
    double Delta_tilde() const noexcept;       ///< Delta / Omega'
    double Omega_tilde() const noexcept;       ///< Omega / Omega'

    /// Omega >= 0 and Omega' > 0; Omega = 0 is allowed with Delta != 0.
    void validate() const;
};

/// Squeezing-induced shifts delta_N, delta_M (dimensionless).
struct SqueezingShifts {
    double delta_N = 0.0;
    double delta_M = 0.0;

    static SqueezingShifts zero() { return {}; }

    /// delta_N = 0 and delta_M chosen so that tan(theta) = |M(omega_L+Omega')| / (Delta~ delta_M)
    /// equals (gamma^2 - epsilon^2) / (2 Delta gamma).
    static SqueezingShifts asymptotic(const SqueezedVacuumParams& bath, const DriveParams& drive);

    /// Resolves a preset name ("zero" or "asymptotic").
    static SqueezingShifts preset(const std::string& name, const SqueezedVacuumParams& bath,
                                  const DriveParams& drive);
};

struct EffectiveCoefficients {
    double n_tilde = 0.0;
    complex m_tilde{};
    double delta = 0.0;
    complex beta{};
    complex upsilon{};
};

/// Bandwidth-mismatch term between the carrier and the Rabi sideband:
/// N(w_L) - N(w_L+Omega') - [|M(w_L)| - |M(w_L+Omega')|] e^{i phi}.
complex upsilon(const SqueezedVacuumParams& bath, const DriveParams& drive);

/// Effective master-equation coefficients. Throws UnphysicalCoefficients when
/// n_tilde < 0, which marks inputs outside the validity of the expansion.
EffectiveCoefficients effective_coefficients(const SqueezedVacuumParams& bath,
                                             const DriveParams& drive,
                                             const SqueezingShifts& shifts);

/// Same arithmetic without the n_tilde >= 0 check, for algebraic consistency checks.
EffectiveCoefficients evaluate_coefficients(const SqueezedVacuumParams& bath,
                                            const DriveParams& drive,
                                            const SqueezingShifts& shifts);

} // namespace sqz
