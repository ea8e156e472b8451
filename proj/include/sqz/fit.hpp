#pragma once

#include "sqz/bloch.hpp"

#include <span>

namespace sqz {

/// y(t) ~ offset + amplitude * exp(-rate * (t - t0)).
struct ExponentialFit {
    double rate = 0.0;
    double amplitude = 0.0;
    double offset = 0.0;
    double residual = 0.0; ///< rms residual relative to |amplitude|
};

struct FitOptions {
    bool free_offset = true;      ///< fit the asymptote, otherwise pin it to `offset`
    double offset = 0.0;
    double residual_limit = 1e-6; ///< relative rms above this raises IllConditioned
    double min_decay = 2.0;       ///< required rate * window (observable drops by e^2)
};

/// Least-squares exponential fit (Levenberg-Marquardt on offset, amplitude, rate).
/// Throws FitDegenerate for a constant signal and IllConditioned when the signal
/// does not decay enough or the residual exceeds the limit.
ExponentialFit fit_exponential(std::span<const double> t, std::span<const double> y,
                               const FitOptions& options = {});

enum class Observable { SigmaZ, SigmaX, SigmaY };

double observable_value(const DensityMatrix& state, Observable which);

/// Fitted decay rate of an observable along a trajectory.
ExponentialFit fit_decay_rate(const Trajectory& traj, Observable which, const FitOptions& options = {});

} // namespace sqz
