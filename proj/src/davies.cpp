#include "sqz/davies.hpp"

#include "sqz/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace sqz {

double DaviesModel::coupling() const { return std::sqrt(Gamma * Delta_E / std::numbers::pi); }

void DaviesModel::validate() const
{
    if (R < 1)
        throw Error(ErrorKind::InvalidParams, "R must be >= 1");
    if (!(Delta_E > 0.0) || !std::isfinite(Delta_E))
        throw Error(ErrorKind::InvalidParams, "Delta_E must be finite and > 0");
    if (!(Gamma > 0.0) || !std::isfinite(Gamma))
        throw Error(ErrorKind::InvalidParams, "Gamma must be finite and > 0");
}

namespace {

// Secular function and its derivative at E = origin*dE + tau. Distances to the
// poles are formed as (origin - r)*dE + tau so the nearest one keeps full
// relative precision.
struct Secular {
    int R;
    double dE;
    double g2;

    void eval(int origin, double tau, double& f, double& df) const
    {
        double s = 0.0;
        double s2 = 0.0;
        for (int r = -R; r <= R; ++r) {
            const double inv = 1.0 / ((origin - r) * dE + tau);
            s += inv;
            s2 += inv * inv;
        }
        f = origin * dE + tau - g2 * s;
        df = 1.0 + g2 * s2;
    }

    double value(int origin, double tau) const
    {
        double f, df;
        eval(origin, tau, f, df);
        return f;
    }

    // Root in the open bracket (lo, hi) with f(lo) < 0 < f(hi) (endpoints may be poles).
    double solve(int origin, double lo, double hi) const
    {
        double tau = 0.5 * (lo + hi);
        for (int iter = 0; iter < 200; ++iter) {
            double f, df;
            eval(origin, tau, f, df);
            if (f == 0.0)
                return tau;
            if (f < 0.0)
                lo = tau;
            else
                hi = tau;
            double next = tau - f / df;
            if (!(next > lo && next < hi))
                next = 0.5 * (lo + hi);
            const double step = std::abs(next - tau);
            tau = next;
            if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(tau) || hi - lo <= 0.0)
                break;
        }
        return tau;
    }
};

} // namespace

DaviesSolver::DaviesSolver(const DaviesModel& model, std::size_t dimension_cap)
    : model_(model), g2_(0.0)
{
    model_.validate();
    if (model_.dimension() > dimension_cap)
        throw Error(ErrorKind::ResourceLimit, "Davies model dimension " + std::to_string(model_.dimension()) +
                                                  " exceeds cap " + std::to_string(dimension_cap));
    const double g = model_.coupling();
    g2_ = g * g;
    const int R = model_.R;
    const double dE = model_.Delta_E;
    const Secular sec{R, dE, g2_};

    const std::size_t n = model_.dimension();
    origin_.reserve(n);
    offset_.reserve(n);

    // below the band
    {
        double span = dE;
        while (sec.value(-R, -span) >= 0.0)
            span *= 2.0;
        origin_.push_back(-R);
        offset_.push_back(sec.solve(-R, -span, 0.0));
    }
    // one root strictly between neighbouring modes
    for (int r = -R; r < R; ++r) {
        const double half = 0.5 * dE;
        if (sec.value(r, half) >= 0.0) {
            origin_.push_back(r);
            offset_.push_back(sec.solve(r, 0.0, half));
        } else {
            origin_.push_back(r + 1);
            offset_.push_back(sec.solve(r + 1, -half, 0.0));
        }
    }
    // above the band
    {
        double span = dE;
        while (sec.value(R, span) <= 0.0)
            span *= 2.0;
        origin_.push_back(R);
        offset_.push_back(sec.solve(R, 0.0, span));
    }

    energies_.resize(n);
    weights_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double f, df;
        sec.eval(origin_[k], offset_[k], f, df);
        energies_[k] = origin_[k] * dE + offset_[k];
        weights_[k] = 1.0 / df; // 1 / (1 + g^2 sum 1/(E - e_r)^2)
    }
}

complex DaviesSolver::amplitude(double t) const
{
    complex u{};
    for (std::size_t k = 0; k < energies_.size(); ++k)
        u += weights_[k] * std::polar(1.0, -energies_[k] * t);
    return u;
}

double DaviesSolver::unitarity_error(double t) const
{
    const double dE = model_.Delta_E;
    const std::size_t n = energies_.size();
    std::vector<complex> phase(n);
    for (std::size_t k = 0; k < n; ++k)
        phase[k] = weights_[k] * std::polar(1.0, -energies_[k] * t);

    double total = std::norm(amplitude(t));
    for (int r = -model_.R; r <= model_.R; ++r) {
        // <r|k> = g <0|k> / (E_k - e_r)
        complex u{};
        for (std::size_t k = 0; k < n; ++k)
            u += phase[k] / ((origin_[k] - r) * dE + offset_[k]);
        total += g2_ * std::norm(u);
    }
    return std::abs(total - 1.0);
}

double DaviesSolver::max_deviation(double t_max, std::size_t samples) const
{
    if (samples < 2 || !(t_max > 0.0))
        throw Error(ErrorKind::InvalidParams, "need t_max > 0 and at least two samples");
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
        worst = std::max(worst, std::abs(amplitude(t) - std::exp(-model_.Gamma * t)));
    }
    return worst;
}

complex davies_amplitude(const DaviesModel& model, double t, std::size_t dimension_cap)
{
    return DaviesSolver(model, dimension_cap).amplitude(t);
}

} // namespace sqz
