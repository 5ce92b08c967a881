// validity.hpp: approximation guards (advisory; never alter solver output)

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dirnet/model.hpp"

namespace dirnet {

enum class CheckStatus { pass, fail, unchecked };

std::string_view to_string(CheckStatus s);

struct CouplingCheck {
    std::string name;  // g_np, g_inout, g_h, g_v
    double value;      // in units of g_np
    double bound;      // 0.1 omega0, in units of g_np (NaN when unchecked)
    double margin;     // bound - value
    CheckStatus status;
};

struct WeakCouplingReport {
    CheckStatus status{CheckStatus::unchecked};
    std::vector<CouplingCheck> checks;
};

inline constexpr double kWeakCouplingFraction = 0.1;

// Every coupling must stay at or below 0.1 omega0. Without omega0 every
// entry is reported unchecked.
WeakCouplingReport weak_coupling_check(const NetworkConfig& config);

inline constexpr double kWeakExcitationThreshold = 10.0;

// Ratio of  J^2/g + delta^2 (g + gamma0)^2 / (4 J^2 g)  to the photon flux
// n_bar / dtau; the linear dipole response needs ratio >> 1. Returns +inf for
// n_bar = 0.
double weak_excitation_margin(double J, double g_inout, double gamma0, double delta, double n_bar, double dtau);

inline bool weak_excitation_ok(double ratio, double threshold = kWeakExcitationThreshold) {
    return ratio >= threshold;
}

struct PulseConfig {
    double mean_photons{0.0};  // <n_alpha>
    double duration{0.0};      // dtau, units of 1/g_np
    double bandwidth{0.0};     // FWHM of |alpha(w)|^2
    double center{0.0};        // carrier offset from omega0

    double sigma() const;      // bandwidth / (2 sqrt(2 ln 2))
};

// sqrt(n_bar) (2 pi sigma^2)^{-1/4} exp(-(w - center)^2 / (4 sigma^2))
std::vector<double> gaussian_spectrum(const PulseConfig& pulse, std::span<const double> omega_grid);

// Gamma = v_F / lambda_B + v_F / R, in the caller's units.
double matthiessen_damping(double v_fermi, double lambda_bulk, double radius);

}  // namespace dirnet
