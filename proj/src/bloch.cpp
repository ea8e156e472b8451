#include "sqz/bloch.hpp"

#include "sqz/error.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <ostream>

namespace sqz {

namespace pauli {
Matrix2c sigma_plus()
{
    Matrix2c m = Matrix2c::Zero();
    m(0, 1) = 1.0;
    return m;
}
Matrix2c sigma_minus()
{
    Matrix2c m = Matrix2c::Zero();
    m(1, 0) = 1.0;
    return m;
}
Matrix2c sigma_z()
{
    Matrix2c m = Matrix2c::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}
Matrix2c identity() { return Matrix2c::Identity(); }
} // namespace pauli

// ---------------------------------------------------------------------------
// states

DensityMatrix DensityMatrix::excited()
{
    DensityMatrix d;
    d.rho = Matrix2c::Zero();
    d.rho(0, 0) = 1.0;
    return d;
}

DensityMatrix DensityMatrix::ground()
{
    DensityMatrix d;
    d.rho = Matrix2c::Zero();
    d.rho(1, 1) = 1.0;
    return d;
}

DensityMatrix DensityMatrix::maximally_mixed() { return {}; }

double DensityMatrix::trace_error() const { return std::abs(rho.trace() - 1.0); }

double DensityMatrix::hermiticity_error() const
{
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const
{
    const Matrix2c h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

BlochState DensityMatrix::to_bloch() const
{
    // <sigma_-> = tr(sigma_- rho) = rho_eg, <sigma_z> = rho_ee - rho_gg
    return {rho(0, 1), (rho(0, 0) - rho(1, 1)).real()};
}

bool BlochState::inside_ball(double tol) const
{
    return std::norm(s_minus) <= (1.0 - s_z * s_z) / 4.0 + tol;
}

DensityMatrix BlochState::to_density() const
{
    DensityMatrix d;
    d.rho(0, 0) = 0.5 * (1.0 + s_z);
    d.rho(1, 1) = 0.5 * (1.0 - s_z);
    d.rho(0, 1) = s_minus;
    d.rho(1, 0) = std::conj(s_minus);
    return d;
}

// ---------------------------------------------------------------------------
// generator

MasterEquation MasterEquation::from(const SqueezedVacuumParams& bath, const DriveParams& drive,
                                    const EffectiveCoefficients& coeffs)
{
    bath.validate();
    drive.validate();
    return {bath.gamma, drive.Omega, drive.Omega_prime(), coeffs};
}

Matrix2c MasterEquation::apply(const Matrix2c& rho) const
{
    const complex i{0.0, 1.0};
    const Matrix2c sp = pauli::sigma_plus();
    const Matrix2c sm = pauli::sigma_minus();
    const Matrix2c sz = pauli::sigma_z();
    auto comm = [](const Matrix2c& a, const Matrix2c& b) -> Matrix2c { return a * b - b * a; };

    const double n = coeffs.n_tilde;
    const complex m = coeffs.m_tilde;
    const complex beta = coeffs.beta;
    const Matrix2c pm = sp * sm;
    const Matrix2c mp = sm * sp;
    const Matrix2c sz_rho = comm(sz, rho);

    Matrix2c out = 0.5 * i * gamma * coeffs.delta * sz_rho;
    out += 0.5 * gamma * n * (2.0 * sp * rho * sm - mp * rho - rho * mp);
    out += 0.5 * gamma * (n + 1.0) * (2.0 * sm * rho * sp - pm * rho - rho * pm);
    out -= gamma * m * sp * rho * sp;
    out -= gamma * std::conj(m) * sm * rho * sm;
    out -= 0.5 * i * Omega * comm(sp + sm, rho);
    out += 0.25 * i * (beta * comm(sp, sz_rho) - std::conj(beta) * comm(sm, sz_rho));
    return out;
}

Vector4c vectorize(const Matrix2c& rho)
{
    return Vector4c(rho(0, 0), rho(1, 0), rho(0, 1), rho(1, 1));
}

Matrix2c unvectorize(const Vector4c& v)
{
    Matrix2c rho;
    rho(0, 0) = v(0);
    rho(1, 0) = v(1);
    rho(0, 1) = v(2);
    rho(1, 1) = v(3);
    return rho;
}

Matrix2c Liouvillian::apply(const Matrix2c& rho) const { return unvectorize(matrix * vectorize(rho)); }

Liouvillian build_liouvillian(const MasterEquation& eq)
{
    if (!(eq.gamma > 0.0) || !std::isfinite(eq.gamma))
        throw Error(ErrorKind::InvalidParams, "gamma must be finite and > 0");
    Liouvillian l;
    for (int k = 0; k < 4; ++k) {
        Vector4c basis = Vector4c::Zero();
        basis(k) = 1.0;
        l.matrix.col(k) = vectorize(eq.apply(unvectorize(basis)));
    }
    const double pop = std::abs(population_decay_rate(eq.gamma, eq.coeffs));
    const double fastest = std::max({pop, eq.Omega_prime, eq.Omega, eq.gamma});
    l.max_step = 0.01 / fastest;
    return l;
}

Liouvillian build_liouvillian(const SqueezedVacuumParams& bath, const DriveParams& drive,
                              const EffectiveCoefficients& coeffs)
{
    return build_liouvillian(MasterEquation::from(bath, drive, coeffs));
}

double relaxation_abscissa(const Liouvillian& generator)
{
    Eigen::ComplexEigenSolver<Matrix4c> es(generator.matrix, false);
    const auto& ev = es.eigenvalues();
    Eigen::Index stationary = 0;
    for (Eigen::Index k = 1; k < ev.size(); ++k)
        if (std::abs(ev(k)) < std::abs(ev(stationary)))
            stationary = k;
    double worst = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (k != stationary)
            worst = std::max(worst, ev(k).real());
    return worst;
}

BlochDerivative bloch_derivative(const BlochState& state, const MasterEquation& eq)
{
    const complex i{0.0, 1.0};
    const double g = eq.gamma;
    const auto& c = eq.coeffs;
    const complex sm = state.s_minus;
    const complex sp = std::conj(sm);
    const double sz = state.s_z;

    BlochDerivative d;
    d.ds_minus = -g * (0.5 + c.n_tilde - i * c.delta) * sm - g * c.m_tilde * sp + 0.5 * i * eq.Omega * sz;
    const complex dz = i * (eq.Omega + std::conj(c.beta)) * sm - i * (eq.Omega + c.beta) * sp -
                       g * (1.0 + 2.0 * c.n_tilde) * sz - g;
    d.ds_z = dz.real();
    return d;
}

BlochDerivative bloch_derivative(const BlochState& state, const SqueezedVacuumParams& bath,
                                 const DriveParams& drive, const EffectiveCoefficients& coeffs)
{
    return bloch_derivative(state, MasterEquation::from(bath, drive, coeffs));
}

BlochState steady_state(const MasterEquation& eq)
{
    // Bloch equations are affine in (x, y, z) = (<sx>, <sy>, <sz>): f(v) = A v + b.
    auto f = [&](const Eigen::Vector3d& v) {
        const BlochState s{complex(0.5 * v(0), -0.5 * v(1)), v(2)};
        const auto d = bloch_derivative(s, eq);
        return Eigen::Vector3d(2.0 * d.ds_minus.real(), -2.0 * d.ds_minus.imag(), d.ds_z);
    };
    const Eigen::Vector3d b = f(Eigen::Vector3d::Zero());
    Eigen::Matrix3d a;
    for (int k = 0; k < 3; ++k)
        a.col(k) = f(Eigen::Vector3d::Unit(k)) - b;
    Eigen::FullPivLU<Eigen::Matrix3d> lu(a);
    if (!lu.isInvertible())
        throw Error(ErrorKind::IllConditioned, "Bloch generator is singular; no unique steady state");
    const Eigen::Vector3d v = lu.solve(-b);
    return {complex(0.5 * v(0), -0.5 * v(1)), v(2)};
}

// ---------------------------------------------------------------------------
// integration

namespace {

using OdeState = std::array<double, 8>;

OdeState pack(const Vector4c& v)
{
    OdeState s{};
    for (int k = 0; k < 4; ++k) {
        s[2 * k] = v(k).real();
        s[2 * k + 1] = v(k).imag();
    }
    return s;
}

Vector4c unpack(const OdeState& s)
{
    Vector4c v;
    for (int k = 0; k < 4; ++k)
        v(k) = complex(s[2 * k], s[2 * k + 1]);
    return v;
}

} // namespace

std::vector<double> Trajectory::times() const
{
    std::vector<double> t;
    t.reserve(samples.size());
    for (const auto& s : samples)
        t.push_back(s.t);
    return t;
}

Trajectory evolve(const Liouvillian& generator, const DensityMatrix& initial, double t_start,
                  double t_end, const EvolveOptions& options)
{
    namespace ode = boost::numeric::odeint;

    if (!(t_end > t_start))
        throw Error(ErrorKind::InvalidParams, "t_end must exceed t_start");
    if (options.samples < 2)
        throw Error(ErrorKind::InvalidParams, "at least two samples are required");
    if (initial.trace_error() > 1e-12 || initial.hermiticity_error() > 1e-12)
        throw Error(ErrorKind::InvalidParams, "initial state is not a unit-trace Hermitian matrix");

    const double max_step = options.max_step > 0.0 ? options.max_step : generator.max_step;
    const Matrix4c& l = generator.matrix;
    auto rhs = [&l](const OdeState& x, OdeState& dxdt, double) { dxdt = pack(l * unpack(x)); };

    std::vector<double> times(options.samples);
    const double span = t_end - t_start;
    for (std::size_t k = 0; k < options.samples; ++k)
        times[k] = t_start + span * static_cast<double>(k) / static_cast<double>(options.samples - 1);
    times.back() = t_end;

    Trajectory traj;
    traj.samples.reserve(options.samples);
    auto observe = [&traj](const OdeState& x, double t) {
        DensityMatrix d;
        d.rho = unvectorize(unpack(x));
        const double ev = d.min_eigenvalue();
        traj.max_trace_error = std::max(traj.max_trace_error, d.trace_error());
        traj.min_eigenvalue = std::min(traj.min_eigenvalue, ev);
        if (ev < -1e-10)
            ++traj.positivity_warnings;
        traj.samples.push_back({t, d});
    };

    OdeState x = pack(vectorize(initial.rho));
    auto stepper = ode::make_controlled(options.abs_tol, options.rel_tol, max_step,
                                        ode::runge_kutta_dopri5<OdeState>());
    try {
        ode::integrate_times(stepper, rhs, x, times.begin(), times.end(), std::min(max_step, span),
                             observe, ode::max_step_checker(1000000));
    } catch (const std::exception& e) {
        throw Error(ErrorKind::StepFailure, e.what());
    }
    if (traj.positivity_warnings > 0)
        std::clog << "warning: density matrix left the positive cone at " << traj.positivity_warnings
                  << " samples (min eigenvalue " << traj.min_eigenvalue << ")\n";
    return traj;
}

Trajectory evolve(const Liouvillian& generator, const BlochState& initial, double t_start,
                  double t_end, const EvolveOptions& options)
{
    if (!initial.inside_ball())
        throw Error(ErrorKind::InvalidParams, "initial Bloch vector lies outside the Bloch ball");
    return evolve(generator, initial.to_density(), t_start, t_end, options);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj)
{
    char buf[160];
    os << "t,re_s_minus,im_s_minus,s_z,trace_error\n";
    for (const auto& s : traj.samples) {
        const auto b = s.state.to_bloch();
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, b.s_minus.real(),
                      b.s_minus.imag(), b.s_z, s.state.trace_error());
        os << buf;
    }
}

// ---------------------------------------------------------------------------
// rates

double quadrature_decay_rate(double gamma, const EffectiveCoefficients& coeffs)
{
    return gamma * (0.5 + coeffs.n_tilde + coeffs.m_tilde.real());
}

double population_decay_rate(double gamma, const EffectiveCoefficients& coeffs)
{
    return gamma * (1.0 + 2.0 * coeffs.n_tilde);
}

QuadratureRates quadrature_rates(double gamma, const EffectiveCoefficients& coeffs)
{
    const auto& c = coeffs;
    QuadratureRates r;
    r.literal = quadrature_decay_rate(gamma, c);
    r.cross_term = gamma * (c.m_tilde.imag() + c.delta);

    // d/dt (<sx>, <sy>) with Omega = 0
    Eigen::Matrix2d a;
    a << -r.literal, r.cross_term,
         -gamma * (c.delta - c.m_tilde.imag()), -gamma * (0.5 + c.n_tilde - c.m_tilde.real());
    Eigen::EigenSolver<Eigen::Matrix2d> es(a, false);
    double e0 = -es.eigenvalues()(0).real();
    double e1 = -es.eigenvalues()(1).real();
    if (e0 > e1)
        std::swap(e0, e1);
    r.effective[0] = e0;
    r.effective[1] = e1;
    return r;
}

} // namespace sqz
