#pragma once

#include "sqz/coefficients.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sqz {

/// `Paper` uses the ratio 1/2 + (2 gamma Re M~ + w/n)/(gamma(1+2N~) + 2w/n)
/// and its condition 4 Re M~ <= 1 + 2N~. `Derived` uses the literal quotient of the
/// two weak-value timescales and its condition 2 Re M~ <= 1 + 2N~.
enum class ConditionMode { Paper, Derived };

std::string to_string(ConditionMode mode);
ConditionMode parse_condition_mode(const std::string& text);

/// tau_zeno / tau_dec. n may be +inf (continuous observation limit w/n -> 0).
double timescale_ratio(double gamma, const EffectiveCoefficients& coeffs, double omega_L, double n,
                       ConditionMode mode);

bool sustainable_condition(const EffectiveCoefficients& coeffs, ConditionMode mode);

struct AngularCondition {
    double lhs = 0.0;
    double theta = 0.0;
    double denominator = 0.0;
    bool holds = true; ///< lhs <= 1/4
};

/// Angular form of the sustainability condition,
///   sqrt(D~^2 dM^2 + |M'|^2) sin(theta - phi) / (1 + 2N' + 3(1 - D~^2) Re Upsilon) <= 1/4,
/// with tan(theta) = |M'| / (D~ dM) and primed spectra taken at omega_L + Omega'.
/// theta = atan2(|M'|, D~ dM); when both vanish the numerator is zero and theta is reported as 0.
AngularCondition angular_condition(const SqueezedVacuumParams& bath, const DriveParams& drive,
                                   const SqueezingShifts& shifts);

/// phi(Delta) = pi Delta / Omega.
double squeezing_phase_profile(double Delta, double Omega);

/// tan(theta) from the angular condition's definition, |M'| / (D~ dM).
double tan_theta(const SqueezedVacuumParams& bath, const DriveParams& drive, const SqueezingShifts& shifts);

struct TanThetaAsymptotic {
    double value = 0.0;            ///< (gamma^2 - epsilon^2) / (2 Delta gamma)
    double omega_over_lambda = 0.0; ///< validity indicator, large when Omega >> lambda
};

/// Large-Rabi-frequency form of tan(theta). Throws DivisionByZero for Delta = 0.
TanThetaAsymptotic tan_theta_asymptotic(const SqueezedVacuumParams& bath, const DriveParams& drive);

/// The same quantity written as mu lambda / ((mu + lambda) Omega' D~).
double tan_theta_asymptotic_factored(const SqueezedVacuumParams& bath, const DriveParams& drive);

/// Delta tan(pi Delta / Omega) - (gamma^2 - epsilon^2)/(2 gamma). Non-negative
/// (up to a tolerance) when the Zeno dynamics dominates.
double sufficient_condition_margin(const SqueezedVacuumParams& bath, const DriveParams& drive);

inline constexpr double default_margin_tolerance = 1e-6;

inline bool zeno_dominant(double margin, double tolerance = default_margin_tolerance)
{
    return margin >= -tolerance;
}

struct RegimeVerdict {
    double ratio_derived = 0.0;
    double ratio_paper = 0.0;
    bool condition_derived = false;
    bool condition_paper = false;
    bool sustainable = false; ///< condition of the selected mode
    double angular_lhs = 0.0;
    double theta = 0.0;
    double sufficient_margin = 0.0;
};

// ---------------------------------------------------------------------------
// sweeps

struct SweepPoint {
    double gamma = 1.0;
    double epsilon = 0.0;
    double Delta = 0.0;
    double Omega = 1.0;
    double phi = 0.0;
    double omega_L = 1.0;
    double n = 1.0;
};

/// Cartesian grid; points are enumerated with `n` varying fastest and `gamma` slowest.
struct SweepGrid {
    std::vector<double> gamma{1.0};
    std::vector<double> epsilon{0.0};
    std::vector<double> Delta{0.0};
    std::vector<double> Omega{1.0};
    std::vector<double> phi{0.0};
    std::vector<double> omega_L{1.0};
    std::vector<double> n{1.0};
    bool phi_profile = false; ///< replace phi by pi Delta / Omega at every point

    std::size_t size() const;
    std::vector<SweepPoint> points() const;
};

/// Shifts applied at every point: a preset name or an explicit pair.
struct ShiftsSpec {
    std::string preset = "zero";
    std::optional<SqueezingShifts> explicit_shifts;

    SqueezingShifts resolve(const SqueezedVacuumParams& bath, const DriveParams& drive) const;
};

struct SweepOptions {
    ConditionMode mode = ConditionMode::Derived;
    ShiftsSpec shifts{};
    unsigned threads = 1;
};

struct SweepRow {
    SweepPoint point;
    double Gamma_dec = 0.0;
    double Gamma_pop = 0.0;
    double tau_dec = 0.0;
    double tau_zeno = 0.0;
    RegimeVerdict verdict;
    std::string status = "ok"; ///< "ok", "partial:<error-kind>" or "skipped:<error-kind>"

    bool computed() const { return status.rfind("skipped", 0) != 0; }
};

/// Evaluates one point; errors are captured in the row status.
SweepRow evaluate_point(const SweepPoint& point, const SweepOptions& options);

/// One row per point, in input order, independent of the thread count.
/// Throws EmptyGrid when there are no points.
std::vector<SweepRow> regime_sweep(std::span<const SweepPoint> points, const SweepOptions& options);
std::vector<SweepRow> regime_sweep(const SweepGrid& grid, const SweepOptions& options);

} // namespace sqz
