#pragma once

#include "sqz/coefficients.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace sqz {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

// Basis ordering is {|e>, |g>}: sigma_+ = |e><g|, sigma_z = diag(1, -1).
namespace pauli {
Matrix2c sigma_plus();
Matrix2c sigma_minus();
Matrix2c sigma_z();
Matrix2c identity();
} // namespace pauli

struct BlochState;

struct DensityMatrix {
    Matrix2c rho = Matrix2c::Identity() / 2.0;

    static DensityMatrix excited();
    static DensityMatrix ground();
    static DensityMatrix maximally_mixed();

    double trace_error() const;       ///< |tr(rho) - 1|
    double hermiticity_error() const; ///< max |rho - rho^dagger|
    double min_eigenvalue() const;
    BlochState to_bloch() const;
};

/// Expectation values <sigma_->, <sigma_z>; <sigma_+> = conj(<sigma_->).
struct BlochState {
    complex s_minus{};
    double s_z = -1.0;

    double sigma_x() const { return 2.0 * s_minus.real(); }
    double sigma_y() const { return -2.0 * s_minus.imag(); }
    bool inside_ball(double tol = 1e-10) const;
    DensityMatrix to_density() const;
};

struct BlochDerivative {
    complex ds_minus{};
    double ds_z = 0.0;
};

/// The inputs of the driven squeezed-vacuum master equation: damping rate,
/// Rabi frequency and the effective coefficients. Omega_prime only sets the
/// integrator's step ceiling.
struct MasterEquation {
    double gamma = 1.0;
    double Omega = 0.0;
    double Omega_prime = 0.0;
    EffectiveCoefficients coeffs{};

    static MasterEquation from(const SqueezedVacuumParams& bath, const DriveParams& drive,
                               const EffectiveCoefficients& coeffs);

    /// drho/dt evaluated term by term on a 2x2 operator (need not be a state).
    Matrix2c apply(const Matrix2c& rho) const;
};

/// 4x4 generator acting on column-stacked rho: vec(rho) = (rho_ee, rho_ge, rho_eg, rho_gg).
struct Liouvillian {
    Matrix4c matrix = Matrix4c::Zero();
    double max_step = 0.0; ///< step ceiling used by evolve, from the fastest rate

    Matrix2c apply(const Matrix2c& rho) const;
};

/// Largest real part among the generator's eigenvalues once the stationary
/// (zero) eigenvalue is removed. Negative means every deviation from the steady
/// state decays; non-negative flags coefficient sets outside the physical region.
double relaxation_abscissa(const Liouvillian& generator);

Vector4c vectorize(const Matrix2c& rho);
Matrix2c unvectorize(const Vector4c& v);

Liouvillian build_liouvillian(const MasterEquation& eq);
Liouvillian build_liouvillian(const SqueezedVacuumParams& bath, const DriveParams& drive,
                              const EffectiveCoefficients& coeffs);

BlochDerivative bloch_derivative(const BlochState& state, const MasterEquation& eq);
BlochDerivative bloch_derivative(const BlochState& state, const SqueezedVacuumParams& bath,
                                 const DriveParams& drive, const EffectiveCoefficients& coeffs);

/// Fixed point of the Bloch equations, from a direct linear solve.
BlochState steady_state(const MasterEquation& eq);

struct EvolveOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.0;    ///< 0 selects the Liouvillian's ceiling
    std::size_t samples = 201; ///< emitted samples including both end points
};

struct TrajectorySample {
    double t = 0.0;
    DensityMatrix state;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double max_trace_error = 0.0;
    double min_eigenvalue = 1.0;
    std::size_t positivity_warnings = 0; ///< samples with an eigenvalue below -1e-10

    std::vector<double> times() const;
};

Trajectory evolve(const Liouvillian& generator, const DensityMatrix& initial, double t_start,
                  double t_end, const EvolveOptions& options = {});
Trajectory evolve(const Liouvillian& generator, const BlochState& initial, double t_start,
                  double t_end, const EvolveOptions& options = {});

/// CSV columns t, Re<sigma_->, Im<sigma_->, <sigma_z>, trace_error (no header comments).
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Decay rate of the symmetric quadrature <sigma_+ + sigma_->: gamma (1/2 + N~ + Re M~).
double quadrature_decay_rate(double gamma, const EffectiveCoefficients& coeffs);
/// Decay rate of the population inversion: gamma (1 + 2 N~).
double population_decay_rate(double gamma, const EffectiveCoefficients& coeffs);

/// Quadrature sector of the Bloch generator with the drive switched off. When
/// Im M~ + delta != 0 the two quadratures mix and the literal rate is no longer
/// an eigenrate; `effective` then carries -Re of the two eigenvalues.
struct QuadratureRates {
    double literal = 0.0;
    double cross_term = 0.0; ///< gamma (Im M~ + delta)
    double effective[2] = {0.0, 0.0};
};
QuadratureRates quadrature_rates(double gamma, const EffectiveCoefficients& coeffs);

} // namespace sqz
