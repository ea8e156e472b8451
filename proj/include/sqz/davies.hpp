#pragma once

#include "sqz/spectrum.hpp"

#include <cstddef>
#include <vector>

namespace sqz {

/// A reference level equally coupled to 2R+1 equispaced bath modes at
/// energies r * Delta_E, -R <= r <= R (hbar = 1).
struct DaviesModel {
    double Gamma = 1.0;
    int R = 100;
    double Delta_E = 0.1;

    /// Per-mode coupling g with g^2 = Gamma * Delta_E / pi, so that the
    /// continuum-limit survival amplitude is exp(-Gamma t).
    double coupling() const;
    std::size_t dimension() const { return 2 * static_cast<std::size_t>(R) + 2; }
    void validate() const;
};

inline constexpr std::size_t default_davies_dimension_cap = 200002;

/// Exact eigen-decomposition of the single-excitation Hamiltonian. The matrix
/// has arrowhead form, so each eigenvalue is the unique root of the secular
/// equation E = g^2 sum_r 1/(E - e_r) inside one interlacing interval.
class DaviesSolver {
public:
    explicit DaviesSolver(const DaviesModel& model,
                          std::size_t dimension_cap = default_davies_dimension_cap);

    const DaviesModel& model() const noexcept { return model_; }
    const std::vector<double>& eigenvalues() const noexcept { return energies_; }
    /// |<0|k>|^2 for each eigenvector k.
    const std::vector<double>& reference_weights() const noexcept { return weights_; }

    /// Survival amplitude U_00(t) = <0| e^{-iHt} |0>.
    complex amplitude(double t) const;

    /// | |U_00|^2 + sum_r |U_r0|^2 - 1 | at time t. O(dim^2).
    double unitarity_error(double t) const;

    /// max over an even grid on [0, t_max] of |U_00(t) - e^{-Gamma t}|.
    double max_deviation(double t_max, std::size_t samples) const;

private:
    double mode_energy(int r) const { return r * model_.Delta_E; }

    DaviesModel model_;
    double g2_;
    std::vector<double> energies_;
    std::vector<double> weights_;
    // E_k - e_r is needed for the eigenvector components; stored as the pole
    // index the root was located from plus the offset tau from that pole.
    std::vector<int> origin_;
    std::vector<double> offset_;
};

complex davies_amplitude(const DaviesModel& model, double t,
                         std::size_t dimension_cap = default_davies_dimension_cap);

} // namespace sqz
