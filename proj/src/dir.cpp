// dir.cpp

#include "dirnet/dir.hpp"

#include <cmath>
#include <string>

#include "dirnet/errors.hpp"
#include "dirnet/grid.hpp"

namespace dirnet {

SiteAmplitudes single_site_closed_form(double g_inout, double gamma0, const QDConfig& qd, double dw) {
    const cplx port_term = cplx{g_inout + 0.5 * gamma0, -dw};
    const cplx bath_term = cplx{0.5 * gamma0, -dw};
    if (!qd.coupled || qd.J == 0.0) {
        if (port_term == cplx{0.0, 0.0}) throw SingularResponse("bare particle response is singular");
        return {g_inout / port_term, -bath_term / port_term, std::sqrt(g_inout * gamma0) / port_term};
    }
    const cplx dipole = cplx{0.5 * qd.gamma, qd.delta - dw};
    const double J2 = qd.J * qd.J;
    const cplx denom = J2 + dipole * port_term;
    if (denom == cplx{0.0, 0.0}) throw SingularResponse("closed-form denominator vanishes");
    return {g_inout * dipole / denom, -(J2 + dipole * bath_term) / denom,
            std::sqrt(g_inout) * std::sqrt(gamma0) * dipole / denom};
}

double purcell_factor(double J, double gamma, double g_inout, double gamma0) {
    if (gamma < 0.0) throw InvalidConfig("gamma must be >= 0");
    if (J == 0.0) return 0.0;
    if (gamma == 0.0) throw InfinitePurcell("Purcell factor is unbounded for a lossless dipole (gamma = 0)");
    return (2.0 * J * J / gamma) / (g_inout + 0.5 * gamma0);
}

SiteAmplitudes resonant_amplitudes_via_purcell(double J, double gamma, double g_inout, double gamma0) {
    const double fp = purcell_factor(J, gamma, g_inout, gamma0);
    const double width = g_inout + 0.5 * gamma0;
    const double t0 = g_inout / width;
    const double r0 = -0.5 * gamma0 / width;
    const double a0 = std::sqrt(g_inout) * std::sqrt(gamma0) / width;
    return {t0 / (fp + 1.0), -(fp - r0) / (fp + 1.0), a0 / (fp + 1.0)};
}

CoupledModeNetwork build_arm(const ArmConfig& arm) {
    if (arm.n < 1) throw InvalidGeometry("an arm needs at least one nanoparticle, got n = " + std::to_string(arm.n));
    if (!(arm.g_inout > 0.0)) throw InvalidConfig("g_inout must be > 0");
    if (!(arm.gamma0 >= 0.0)) throw InvalidConfig("gamma0 must be >= 0");
    validate(arm.qd);

    CoupledModeNetwork net;
    net.n = arm.n;
    net.node_count = arm.n;
    net.bath_rate = arm.gamma0;
    for (int k = 1; k < arm.n; ++k) net.edges.push_back({k, k + 1, arm.g_np});
    net.sources = {{1, arm.g_inout}};
    net.drains = {{arm.n, arm.g_inout}};
    net.dipoles = {{1, 0, arm.qd}};
    return net;
}

SiteAmplitudes solve_arm(const ArmConfig& arm, double dw) {
    const auto net = build_arm(arm);
    // Branch gg: the single dipole follows its own coupled flag.
    const auto s = solve_scattering(net, Branch::gg, dw);
    return {s.t_drain(0, 0), s.t_source(0, 0), s.t_bath(0, 1)};
}

ArmSpectrumPoint arm_point(const ArmConfig& arm, double dw) {
    const auto net = build_arm(arm);
    const auto s = solve_scattering(net, Branch::gg, dw);
    ArmSpectrumPoint p{};
    p.dw = dw;
    p.T = std::norm(s.t_drain(0, 0));
    p.R = std::norm(s.t_source(0, 0));
    p.A = 0.0;
    for (cplx b : s.from[0].to_bath) p.A += std::norm(b);
    p.dipole_loss = 1.0 - p.T - p.R - p.A;
    return p;
}

std::vector<ArmSpectrumPoint> arm_spectrum(const ArmConfig& arm, std::span<const double> dw_grid) {
    std::vector<ArmSpectrumPoint> out;
    out.reserve(dw_grid.size());
    for (double dw : dw_grid) out.push_back(arm_point(arm, dw));
    return out;
}

std::vector<double> default_spectrum_grid() { return linear_grid(-3.0, 3.0, 601); }

}  // namespace dirnet
