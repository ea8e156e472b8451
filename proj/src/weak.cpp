#include "sqz/weak.hpp"

#include "sqz/error.hpp"

#include <cmath>
#include <string>

namespace sqz {

MeasurementSchedule::MeasurementSchedule(double t_i, std::uint64_t n, double omega_L)
    : t_i_(t_i), t_f_(0.0), n_(n), tau_M_(0.0)
{
    if (!std::isfinite(t_i))
        throw Error(ErrorKind::InvalidParams, "t_i must be finite");
    if (n == 0)
        throw Error(ErrorKind::InvalidParams, "measurement count n must be >= 1");
    if (!std::isfinite(omega_L) || omega_L <= 0.0)
        throw Error(ErrorKind::InvalidParams, "omega_L must be finite and > 0");
    tau_M_ = 1.0 / omega_L;
    t_f_ = t_i + static_cast<double>(n) * tau_M_;
}

PrePostSelection::PrePostSelection(Vector2c pre_state, Vector2c post_state)
{
    const double np = pre_state.norm();
    const double nf = post_state.norm();
    if (!(np > 0.0) || !(nf > 0.0) || !std::isfinite(np) || !std::isfinite(nf))
        throw Error(ErrorKind::InvalidParams, "selection states must be non-zero and finite");
    pre = pre_state / np;
    post = post_state / nf;
}

Vector2c PrePostSelection::x_polarized() { return Vector2c(1.0, 1.0) / std::sqrt(2.0); }

Vector2c PrePostSelection::y_polarized() { return Vector2c(1.0, complex(0.0, 1.0)) / std::sqrt(2.0); }

Matrix2c x_projector()
{
    const Vector2c x = PrePostSelection::x_polarized();
    return x * x.adjoint();
}

Matrix2c propagator(double omega_A, double t)
{
    Matrix2c u = Matrix2c::Zero();
    u(0, 0) = std::polar(1.0, 0.5 * omega_A * t);
    u(1, 1) = std::polar(1.0, -0.5 * omega_A * t);
    return u;
}

complex weak_value(const Matrix2c& op, const PrePostSelection& sel, double omega_A, double t_i,
                   double t, double t_f)
{
    const complex denom = sel.post.dot(propagator(omega_A, t_f - t_i) * sel.pre);
    if (std::abs(denom) < 1e-12)
        throw Error(ErrorKind::OrthogonalSelection,
                    "post-selected state is orthogonal to the evolved pre-selected state");
    const complex num = sel.post.dot(propagator(omega_A, t_f - t) * op * propagator(omega_A, t - t_i) * sel.pre);
    return num / denom;
}

double weak_survival(double Gamma, const MeasurementSchedule& sched, double t)
{
    if (!(Gamma > 0.0) || !std::isfinite(Gamma))
        throw Error(ErrorKind::InvalidParams, "Gamma must be finite and > 0");
    if (t < sched.t_i() || t > sched.t_f())
        throw Error(ErrorKind::OutOfWindow, "t = " + std::to_string(t) + " outside [t_i, t_f]");
    if (t == sched.t_i())
        return 1.0;
    if (t == sched.t_f())
        return 0.0;
    // (1 - e^{-a}) written with expm1 to stay accurate for short windows
    const double num = -std::expm1(-Gamma * (sched.t_f() - t));
    const double den = -std::expm1(-Gamma * sched.window());
    return std::exp(-Gamma * (t - sched.t_i())) * num / den;
}

double decay_time_exact(double Gamma, double window)
{
    if (!(Gamma >= 0.0) || !std::isfinite(Gamma))
        throw Error(ErrorKind::InvalidParams, "Gamma must be finite and >= 0");
    if (!(window > 0.0) || !std::isfinite(window))
        throw Error(ErrorKind::InvalidParams, "window must be finite and > 0");
    const double x = Gamma * window;
    if (x < 1e-2) {
        // T * (1 - x/(e^x - 1)) / x, Bernoulli series
        const double x2 = x * x;
        return window * (0.5 - x / 12.0 + x * x2 / 720.0 - x * x2 * x2 / 30240.0);
    }
    return 1.0 / Gamma - window / std::expm1(x);
}

double decay_time_exact(double Gamma, const MeasurementSchedule& sched)
{
    return decay_time_exact(Gamma, sched.window());
}

double decay_time_approx(double Gamma, double omega_L, double n)
{
    if (!(n >= 1.0))
        throw Error(ErrorKind::InvalidParams, "n must be >= 1");
    if (!(omega_L > 0.0))
        throw Error(ErrorKind::InvalidParams, "omega_L must be > 0");
    return 1.0 / (Gamma + 2.0 * omega_L / n);
}

double decoherence_time(double gamma, const EffectiveCoefficients& coeffs, double omega_L, double n)
{
    return decay_time_approx(quadrature_decay_rate(gamma, coeffs), omega_L, n);
}

double zeno_time(double gamma, const EffectiveCoefficients& coeffs, double omega_L, double n)
{
    return decay_time_approx(population_decay_rate(gamma, coeffs), omega_L, n);
}

} // namespace sqz
