#pragma once

#include "sqz/bloch.hpp"

#include <cstdint>

namespace sqz {

using Vector2c = Eigen::Vector2cd;

/// Weak-measurement window [t_i, t_f] made of n measurements spaced tau_M = 1/omega_L.
class MeasurementSchedule {
public:
    MeasurementSchedule(double t_i, std::uint64_t n, double omega_L);

    double t_i() const noexcept { return t_i_; }
    double t_f() const noexcept { return t_f_; }
    std::uint64_t n() const noexcept { return n_; }
    double tau_M() const noexcept { return tau_M_; }
    double window() const noexcept { return t_f_ - t_i_; }

private:
    double t_i_;
    double t_f_;
    std::uint64_t n_;
    double tau_M_;
};

struct PrePostSelection {
    Vector2c pre;
    Vector2c post;

    /// Normalises both vectors; throws InvalidParams on a zero vector.
    PrePostSelection(Vector2c pre_state, Vector2c post_state);

    static Vector2c x_polarized(); ///< (1, 1)/sqrt(2)
    static Vector2c y_polarized(); ///< (1, i)/sqrt(2)
};

/// Projector onto the x-polarised state, |+x><+x|.
Matrix2c x_projector();

/// Free evolution diag(e^{i w t/2}, e^{-i w t/2}) of a spin precessing at omega_A.
Matrix2c propagator(double omega_A, double t);

/// <f| U(t_f - t) A U(t - t_i) |i> / <f| U(t_f - t_i) |i>.
complex weak_value(const Matrix2c& op, const PrePostSelection& sel, double omega_A, double t_i,
                   double t, double t_f);

/// Weak value of the survival probability with pre- and post-selection on the
/// same decaying level, given amplitude decay e^{-Gamma t}.
double weak_survival(double Gamma, const MeasurementSchedule& sched, double t);

/// Integral of weak_survival over the window: 1/Gamma - T/(e^{Gamma T} - 1).
double decay_time_exact(double Gamma, double window);
double decay_time_exact(double Gamma, const MeasurementSchedule& sched);

/// Frequent-measurement approximation 1/(Gamma + 2 omega_L / n). n may be +inf.
double decay_time_approx(double Gamma, double omega_L, double n);

/// Weak-value decoherence time: decay_time_approx at the quadrature decay rate.
double decoherence_time(double gamma, const EffectiveCoefficients& coeffs, double omega_L, double n);

/// Weak-value Zeno time: decay_time_approx at the population decay rate.
double zeno_time(double gamma, const EffectiveCoefficients& coeffs, double omega_L, double n);

} // namespace sqz
