#include "sqz/spectrum.hpp"

#include "sqz/error.hpp"

#include <cmath>
#include <string>

namespace sqz {

namespace {

// Both Lorentzian combinations share the prefactor (lambda^2 - mu^2)/4 = gamma*epsilon.
// Written over the common denominator so that neither the difference (N) nor the
// sum (|M|) suffers cancellation in the far wings.
struct LorentzianPair {
    double prefactor;
    double wide;   // x^2 + mu^2
    double narrow; // x^2 + lambda^2
};

LorentzianPair lorentzians(const SqueezedVacuumParams& p, double omega)
{
    p.validate();
    const double x = omega - p.omega_L;
    const double x2 = x * x;
    return {p.gamma * p.epsilon, x2 + p.mu() * p.mu(), x2 + p.lambda() * p.lambda()};
}

} // namespace

void SqueezedVacuumParams::validate() const
{
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidParams, msg); };
    if (!std::isfinite(gamma) || gamma <= 0.0)
        fail("gamma must be finite and > 0 (got " + std::to_string(gamma) + ")");
    if (!std::isfinite(epsilon) || epsilon < 0.0)
        fail("epsilon must be finite and >= 0 (got " + std::to_string(epsilon) + ")");
    if (epsilon >= gamma)
        fail("epsilon must be < gamma (below-threshold oscillator); got epsilon=" +
             std::to_string(epsilon) + ", gamma=" + std::to_string(gamma));
    if (!std::isfinite(phi))
        fail("phi must be finite");
    if (!std::isfinite(omega_L) || omega_L <= 0.0)
        fail("omega_L must be finite and > 0 (got " + std::to_string(omega_L) + ")");
}

double spectral_n(const SqueezedVacuumParams& params, double omega)
{
    const auto l = lorentzians(params, omega);
    const double a = l.prefactor;
    // A(p - q) with p - q = 4A p q
    return 4.0 * a * a / (l.wide * l.narrow);
}

double spectral_m_abs(const SqueezedVacuumParams& params, double omega)
{
    const auto l = lorentzians(params, omega);
    return l.prefactor * (l.wide + l.narrow) / (l.wide * l.narrow);
}

complex spectral_m(const SqueezedVacuumParams& params, double omega)
{
    return std::polar(spectral_m_abs(params, omega), params.phi);
}

SpectralPoint spectral_point(const SqueezedVacuumParams& params, double omega)
{
    return {omega, spectral_n(params, omega), spectral_m(params, omega)};
}

} // namespace sqz
