// validity.cpp

#include "dirnet/validity.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dirnet/errors.hpp"

namespace dirnet {

std::string_view to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::unchecked: return "unchecked";
    }
    return "?";
}

WeakCouplingReport weak_coupling_check(const NetworkConfig& config) {
    const auto bs = beam_splitter_couplings(config.g_inout, config.gamma0);
    const std::pair<const char*, double> couplings[] = {
        {"g_np", config.g_np}, {"g_inout", config.g_inout}, {"g_h", bs.horizontal}, {"g_v", bs.vertical}};

    WeakCouplingReport report;
    if (!config.omega0_over_gnp) {
        for (const auto& [name, value] : couplings)
            report.checks.push_back({name, value, std::numeric_limits<double>::quiet_NaN(),
                                     std::numeric_limits<double>::quiet_NaN(), CheckStatus::unchecked});
        report.status = CheckStatus::unchecked;
        return report;
    }

    const double bound = kWeakCouplingFraction * *config.omega0_over_gnp;
    report.status = CheckStatus::pass;
    for (const auto& [name, value] : couplings) {
        // Allow the bound itself up to rounding.
        const bool ok = value <= bound * (1.0 + 1e-12);
        report.checks.push_back({name, value, bound, bound - value, ok ? CheckStatus::pass : CheckStatus::fail});
        if (!ok) report.status = CheckStatus::fail;
    }
    return report;
}

double weak_excitation_margin(double J, double g_inout, double gamma0, double delta, double n_bar, double dtau) {
    if (!(J > 0.0) || !(g_inout > 0.0) || !(dtau > 0.0) || !(n_bar >= 0.0) || !(gamma0 >= 0.0))
        throw InvalidPulse("weak-excitation bound needs J > 0, g_inout > 0, dtau > 0 and n_bar >= 0");
    const double J2 = J * J;
    const double lhs = J2 / g_inout + delta * delta * (g_inout + gamma0) * (g_inout + gamma0) / (4.0 * J2 * g_inout);
    if (n_bar == 0.0) return std::numeric_limits<double>::infinity();
    return lhs / (n_bar / dtau);
}

double PulseConfig::sigma() const { return bandwidth / (2.0 * std::sqrt(2.0 * std::numbers::ln2)); }

std::vector<double> gaussian_spectrum(const PulseConfig& pulse, std::span<const double> omega_grid) {
    const double s = pulse.sigma();
    if (!(s > 0.0)) throw InvalidPulse("pulse bandwidth must be > 0");
    if (!(pulse.mean_photons >= 0.0)) throw InvalidPulse("mean photon number must be >= 0");
    const double peak = std::sqrt(pulse.mean_photons) * std::pow(2.0 * std::numbers::pi * s * s, -0.25);
    std::vector<double> out;
    out.reserve(omega_grid.size());
    for (double w : omega_grid) {
        const double x = w - pulse.center;
        out.push_back(peak * std::exp(-x * x / (4.0 * s * s)));
    }
    return out;
}

double matthiessen_damping(double v_fermi, double lambda_bulk, double radius) {
    if (!(v_fermi > 0.0) || !(lambda_bulk > 0.0) || !(radius > 0.0))
        throw InvalidMaterial("Matthiessen damping needs positive v_F, bulk mean free path and radius");
    return v_fermi / lambda_bulk + v_fermi / radius;
}

}  // namespace dirnet
