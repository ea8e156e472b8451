#include "sqz/fit.hpp"

#include "sqz/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace sqz {

namespace {

struct Model {
    std::span<const double> t;
    std::span<const double> y;
    double t0;
    bool free_offset;
    double pinned_offset;

    // p = (amplitude, rate[, offset])
    double cost(const Eigen::VectorXd& p) const
    {
        double s = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double r = eval(p, t[i]) - y[i];
            s += r * r;
        }
        return s;
    }

    double eval(const Eigen::VectorXd& p, double ti) const
    {
        const double c = free_offset ? p(2) : pinned_offset;
        return c + p(0) * std::exp(-p(1) * (ti - t0));
    }
};

} // namespace

ExponentialFit fit_exponential(std::span<const double> t, std::span<const double> y,
                               const FitOptions& options)
{
    const std::size_t n = t.size();
    if (n != y.size())
        throw Error(ErrorKind::InvalidParams, "time and value series differ in length");
    if (n < 4)
        throw Error(ErrorKind::FitDegenerate, "need at least four samples");

    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    const double scale = std::max({1.0, std::abs(*lo), std::abs(*hi)});
    if (*hi - *lo <= 1e-14 * scale)
        throw Error(ErrorKind::FitDegenerate, "observable is constant over the window");

    const double t0 = t.front();
    Model model{t, y, t0, options.free_offset, options.offset};

    // Starting point: three equally spaced samples when the offset is free,
    // otherwise the log-slope between first and middle sample.
    const std::size_t mid = (n - 1) / 2;
    const std::size_t last = 2 * mid;
    double rate0 = 1.0 / (t[last] - t0);
    double amp0 = y[0] - options.offset;
    double off0 = options.offset;
    if (options.free_offset) {
        const double d1 = y[mid] - y[0];
        const double d2 = y[last] - y[mid];
        const double h = t[mid] - t0;
        if (d1 != 0.0 && d2 / d1 > 0.0 && d2 / d1 < 1.0) {
            const double r = d2 / d1;
            rate0 = -std::log(r) / h;
            amp0 = d1 / (r - 1.0);
            off0 = y[0] - amp0;
        } else {
            off0 = y[n - 1];
            amp0 = y[0] - off0;
        }
    } else {
        const double a = y[0] - options.offset;
        const double b = y[mid] - options.offset;
        if (a != 0.0 && b / a > 0.0 && b / a < 1.0)
            rate0 = -std::log(b / a) / (t[mid] - t0);
    }

    const int dim = options.free_offset ? 3 : 2;
    Eigen::VectorXd p(dim);
    p(0) = amp0;
    p(1) = rate0;
    if (options.free_offset)
        p(2) = off0;

    double cost = model.cost(p);
    double damping = 1e-3;
    Eigen::MatrixXd jac(n, dim);
    Eigen::VectorXd res(n);
    for (int iter = 0; iter < 500; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            const double dt = t[i] - t0;
            const double e = std::exp(-p(1) * dt);
            res(static_cast<Eigen::Index>(i)) = model.eval(p, t[i]) - y[i];
            jac(static_cast<Eigen::Index>(i), 0) = e;
            jac(static_cast<Eigen::Index>(i), 1) = -p(0) * dt * e;
            if (options.free_offset)
                jac(static_cast<Eigen::Index>(i), 2) = 1.0;
        }
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd jtr = jac.transpose() * res;

        bool accepted = false;
        Eigen::VectorXd step;
        for (int tries = 0; tries < 30 && !accepted; ++tries) {
            Eigen::MatrixXd a = jtj;
            a.diagonal() += damping * jtj.diagonal().cwiseMax(1e-300);
            step = a.ldlt().solve(-jtr);
            const Eigen::VectorXd trial = p + step;
            const double trial_cost = model.cost(trial);
            if (std::isfinite(trial_cost) && trial_cost <= cost) {
                p = trial;
                cost = trial_cost;
                damping = std::max(damping / 10.0, 1e-12);
                accepted = true;
            } else {
                damping *= 10.0;
            }
        }
        if (!accepted)
            break;
        if (step.cwiseAbs().maxCoeff() <= 1e-15 * (p.cwiseAbs().maxCoeff() + 1e-300))
            break;
    }

    ExponentialFit fit;
    fit.amplitude = p(0);
    fit.rate = p(1);
    fit.offset = options.free_offset ? p(2) : options.offset;
    fit.residual = std::sqrt(cost / static_cast<double>(n)) / std::max(std::abs(fit.amplitude), 1e-300);

    if (!std::isfinite(fit.rate) || fit.rate <= 0.0)
        throw Error(ErrorKind::IllConditioned, "observable does not decay (fitted rate " +
                                                   std::to_string(fit.rate) + ")");
    if (fit.rate * (t.back() - t0) < options.min_decay)
        throw Error(ErrorKind::IllConditioned, "window too short: observable decays by less than e^" +
                                                   std::to_string(options.min_decay));
    if (fit.residual > options.residual_limit)
        throw Error(ErrorKind::IllConditioned,
                    "relative fit residual " + std::to_string(fit.residual) + " exceeds limit");
    return fit;
}

double observable_value(const DensityMatrix& state, Observable which)
{
    const auto b = state.to_bloch();
    switch (which) {
    case Observable::SigmaZ: return b.s_z;
    case Observable::SigmaX: return b.sigma_x();
    case Observable::SigmaY: return b.sigma_y();
    }
    return 0.0;
}

ExponentialFit fit_decay_rate(const Trajectory& traj, Observable which, const FitOptions& options)
{
    std::vector<double> t;
    std::vector<double> y;
    t.reserve(traj.samples.size());
    y.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        t.push_back(s.t);
        y.push_back(observable_value(s.state, which));
    }
    return fit_exponential(t, y, options);
}

} // namespace sqz
