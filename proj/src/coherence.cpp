#include "sqz/coherence.hpp"

#include "sqz/bloch.hpp"
#include "sqz/error.hpp"
#include "sqz/weak.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace sqz {

std::string to_string(ConditionMode mode) { return mode == ConditionMode::Paper ? "paper" : "derived"; }

ConditionMode parse_condition_mode(const std::string& text)
{
    if (text == "paper")
        return ConditionMode::Paper;
    if (text == "derived")
        return ConditionMode::Derived;
    throw Error(ErrorKind::InvalidParams, "mode must be 'paper' or 'derived', got '" + text + "'");
}

double timescale_ratio(double gamma, const EffectiveCoefficients& coeffs, double omega_L, double n,
                       ConditionMode mode)
{
    if (!(n >= 1.0))
        throw Error(ErrorKind::InvalidParams, "n must be >= 1");
    const double meas = omega_L / n;
    const double pop = gamma * (1.0 + 2.0 * coeffs.n_tilde) + 2.0 * meas;
    if (mode == ConditionMode::Derived)
        return (gamma * (0.5 + coeffs.n_tilde + coeffs.m_tilde.real()) + 2.0 * meas) / pop;
    return 0.5 + (2.0 * gamma * coeffs.m_tilde.real() + meas) / pop;
}

bool sustainable_condition(const EffectiveCoefficients& coeffs, ConditionMode mode)
{
    const double factor = mode == ConditionMode::Paper ? 4.0 : 2.0;
    return factor * coeffs.m_tilde.real() <= 1.0 + 2.0 * coeffs.n_tilde;
}

AngularCondition angular_condition(const SqueezedVacuumParams& bath, const DriveParams& drive,
                                   const SqueezingShifts& shifts)
{
    bath.validate();
    drive.validate();
    const double dt = drive.Delta_tilde();
    const double sideband = bath.omega_L + drive.Omega_prime();
    const double m_side = spectral_m_abs(bath, sideband);
    const double n_side = spectral_n(bath, sideband);
    const double re_upsilon = upsilon(bath, drive).real();

    AngularCondition a;
    a.denominator = 1.0 + 2.0 * n_side + 3.0 * (1.0 - dt * dt) * re_upsilon;
    if (std::abs(a.denominator) < 1e-12)
        throw Error(ErrorKind::SingularDenominator, "angular-condition denominator vanishes");

    const double adjacent = dt * shifts.delta_M;
    if (m_side == 0.0 && adjacent == 0.0) {
        a.theta = 0.0;
        a.lhs = 0.0;
    } else {
        a.theta = std::atan2(m_side, adjacent);
        a.lhs = std::hypot(adjacent, m_side) * std::sin(a.theta - bath.phi) / a.denominator;
    }
    a.holds = a.lhs <= 0.25;
    return a;
}

double squeezing_phase_profile(double Delta, double Omega)
{
    if (!(Omega > 0.0))
        throw Error(ErrorKind::InvalidParams, "Omega must be > 0");
    return std::numbers::pi * Delta / Omega;
}

double tan_theta(const SqueezedVacuumParams& bath, const DriveParams& drive, const SqueezingShifts& shifts)
{
    bath.validate();
    drive.validate();
    const double adjacent = drive.Delta_tilde() * shifts.delta_M;
    if (adjacent == 0.0)
        throw Error(ErrorKind::DivisionByZero, "Delta~ * delta_M = 0");
    return spectral_m_abs(bath, bath.omega_L + drive.Omega_prime()) / adjacent;
}

TanThetaAsymptotic tan_theta_asymptotic(const SqueezedVacuumParams& bath, const DriveParams& drive)
{
    bath.validate();
    drive.validate();
    if (drive.Delta == 0.0)
        throw Error(ErrorKind::DivisionByZero, "Delta = 0");
    const double g = bath.gamma;
    const double e = bath.epsilon;
    return {(g * g - e * e) / (2.0 * drive.Delta * g), drive.Omega / bath.lambda()};
}

double tan_theta_asymptotic_factored(const SqueezedVacuumParams& bath, const DriveParams& drive)
{
    bath.validate();
    drive.validate();
    if (drive.Delta == 0.0)
        throw Error(ErrorKind::DivisionByZero, "Delta = 0");
    const double mu = bath.mu();
    const double lambda = bath.lambda();
    return mu * lambda / ((mu + lambda) * drive.Omega_prime() * drive.Delta_tilde());
}

double sufficient_condition_margin(const SqueezedVacuumParams& bath, const DriveParams& drive)
{
    bath.validate();
    drive.validate();
    if (!(drive.Omega > 0.0))
        throw Error(ErrorKind::DivisionByZero, "Omega = 0");
    const double arg = std::numbers::pi * drive.Delta / drive.Omega;
    // distance of arg from the nearest pole pi/2 + k pi
    const double shifted = arg - 0.5 * std::numbers::pi;
    const double dist = std::abs(shifted - std::numbers::pi * std::round(shifted / std::numbers::pi));
    if (dist < 1e-9)
        throw Error(ErrorKind::TangentSingularity, "pi Delta / Omega is at a pole of tan");
    const double g = bath.gamma;
    const double e = bath.epsilon;
    return drive.Delta * std::tan(arg) - (g * g - e * e) / (2.0 * g);
}

// ---------------------------------------------------------------------------
// sweeps

std::size_t SweepGrid::size() const
{
    return gamma.size() * epsilon.size() * Delta.size() * Omega.size() * phi.size() * omega_L.size() *
           n.size();
}

std::vector<SweepPoint> SweepGrid::points() const
{
    std::vector<SweepPoint> out;
    out.reserve(size());
    for (double g : gamma)
        for (double e : epsilon)
            for (double d : Delta)
                for (double o : Omega)
                    for (double p : phi)
                        for (double w : omega_L)
                            for (double m : n) {
                                SweepPoint pt{g, e, d, o, p, w, m};
                                if (phi_profile)
                                    pt.phi = o > 0.0 ? std::numbers::pi * d / o
                                                     : std::numeric_limits<double>::quiet_NaN();
                                out.push_back(pt);
                            }
    return out;
}

SqueezingShifts ShiftsSpec::resolve(const SqueezedVacuumParams& bath, const DriveParams& drive) const
{
    if (explicit_shifts)
        return *explicit_shifts;
    return SqueezingShifts::preset(preset, bath, drive);
}

SweepRow evaluate_point(const SweepPoint& point, const SweepOptions& options)
{
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    SweepRow row;
    row.point = point;
    const SqueezedVacuumParams bath{point.gamma, point.epsilon, point.phi, point.omega_L};
    const DriveParams drive{point.Omega, point.Delta};

    SqueezingShifts shifts;
    try {
        if (!(point.n >= 1.0))
            throw Error(ErrorKind::InvalidParams, "n must be >= 1");
        shifts = options.shifts.resolve(bath, drive);
        const auto coeffs = effective_coefficients(bath, drive, shifts);
        row.Gamma_dec = quadrature_decay_rate(bath.gamma, coeffs);
        row.Gamma_pop = population_decay_rate(bath.gamma, coeffs);
        row.tau_dec = decoherence_time(bath.gamma, coeffs, bath.omega_L, point.n);
        row.tau_zeno = zeno_time(bath.gamma, coeffs, bath.omega_L, point.n);
        auto& v = row.verdict;
        v.ratio_derived = timescale_ratio(bath.gamma, coeffs, bath.omega_L, point.n, ConditionMode::Derived);
        v.ratio_paper = timescale_ratio(bath.gamma, coeffs, bath.omega_L, point.n, ConditionMode::Paper);
        v.condition_derived = sustainable_condition(coeffs, ConditionMode::Derived);
        v.condition_paper = sustainable_condition(coeffs, ConditionMode::Paper);
        v.sustainable = options.mode == ConditionMode::Paper ? v.condition_paper : v.condition_derived;
    } catch (const Error& e) {
        row.Gamma_dec = row.Gamma_pop = row.tau_dec = row.tau_zeno = nan;
        row.verdict = {nan, nan, false, false, false, nan, nan, nan};
        row.status = "skipped:" + std::string(to_string(e.kind()));
        return row;
    }

    std::string partial;
    try {
        const auto a = angular_condition(bath, drive, shifts);
        row.verdict.angular_lhs = a.lhs;
        row.verdict.theta = a.theta;
    } catch (const Error& e) {
        row.verdict.angular_lhs = row.verdict.theta = nan;
        partial = std::string(to_string(e.kind()));
    }
    try {
        row.verdict.sufficient_margin = sufficient_condition_margin(bath, drive);
    } catch (const Error& e) {
        row.verdict.sufficient_margin = nan;
        if (partial.empty())
            partial = std::string(to_string(e.kind()));
    }
    if (!partial.empty())
        row.status = "partial:" + partial;
    return row;
}

std::vector<SweepRow> regime_sweep(std::span<const SweepPoint> points, const SweepOptions& options)
{
    if (points.empty())
        throw Error(ErrorKind::EmptyGrid, "sweep grid has no points");
    std::vector<SweepRow> rows(points.size());

    unsigned width = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    width = static_cast<unsigned>(std::min<std::size_t>(width, points.size()));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1))
            rows[i] = evaluate_point(points[i], options);
    };
    if (width <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(width);
        for (unsigned t = 0; t < width; ++t)
            pool.emplace_back(work);
    }
    return rows;
}

std::vector<SweepRow> regime_sweep(const SweepGrid& grid, const SweepOptions& options)
{
    const auto pts = grid.points();
    return regime_sweep(std::span<const SweepPoint>(pts), options);
}

} // namespace sqz
