#pragma once

#include <complex>

namespace sqz {

using complex = std::complex<double>;

/// Finite-bandwidth squeezed vacuum produced by a degenerate parametric
/// oscillator below threshold. All frequencies share one angular unit.
struct SqueezedVacuumParams {
    double gamma = 1.0;   ///< cavity damping rate, > 0
    double epsilon = 0.0; ///< amplification coefficient, 0 <= epsilon < gamma
    double phi = 0.0;     ///< squeezing phase [rad]
    double omega_L = 1.0; ///< laser carrier frequency, > 0

    double lambda() const noexcept { return gamma + epsilon; }
    double mu() const noexcept { return gamma - epsilon; }

    /// Throws Error(InvalidParams) naming the offending field.
    void validate() const;
};

struct SpectralPoint {
    double omega = 0.0;
    double n_value = 0.0;
    complex m_value{};
};

/// Mean photon number N(omega) of the squeezed reservoir.
double spectral_n(const SqueezedVacuumParams& params, double omega);

/// |M(omega)|, the modulus of the two-photon correlator.
double spectral_m_abs(const SqueezedVacuumParams& params, double omega);

/// M(omega) = |M(omega)| exp(i phi).
complex spectral_m(const SqueezedVacuumParams& params, double omega);

SpectralPoint spectral_point(const SqueezedVacuumParams& params, double omega);

} // namespace sqz
