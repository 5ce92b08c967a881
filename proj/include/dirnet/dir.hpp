// dir.hpp: dipole-induced reflection on a single nanoparticle arm
//
// One arm of n particles: the source tip and the QD attach to node 1, the
// drain tip to node n (node 1 carries both tips when n = 1).

#pragma once

#include <span>
#include <vector>

#include "dirnet/model.hpp"
#include "dirnet/scattering.hpp"

namespace dirnet {

struct ArmConfig {
    int n{1};
    double g_np{1.0};
    double g_inout{0.5};
    double gamma0{0.1};
    QDConfig qd{};  // qd.coupled selects |g> (true) or |m> (false)
};

struct ArmSpectrumPoint {
    double dw;
    double T;            // |t_s|^2
    double R;            // |r_s|^2
    double A;            // sum |b|^2
    double dipole_loss;  // 1 - T - R - A
};

struct SiteAmplitudes {
    cplx t;  // transmission to the drain
    cplx r;  // reflection into the source
    cplx b;  // into the bath of the single particle
};

// Closed-form n = 1 amplitudes. With
//   D = J^2 + (gamma/2 + i(delta - dw)) (g + gamma0/2 - i dw)
// t = g (gamma/2 + i(delta - dw)) / D, r = -(J^2 + (...)(gamma0/2 - i dw)) / D,
// b = sqrt(g gamma0) (gamma/2 + i(delta - dw)) / D. A decoupled dipole uses
// the bare-particle forms with the common dipole factor cancelled.
SiteAmplitudes single_site_closed_form(double g_inout, double gamma0, const QDConfig& qd, double dw);

// F_p = (2 J^2 / gamma) / (g_inout + gamma0/2)
double purcell_factor(double J, double gamma, double g_inout, double gamma0);

// Resonant (delta = dw = 0) amplitudes written through the Purcell factor:
// t0/(F_p+1), -(F_p - r0)/(F_p+1), a0/(F_p+1).
SiteAmplitudes resonant_amplitudes_via_purcell(double J, double gamma, double g_inout, double gamma0);

CoupledModeNetwork build_arm(const ArmConfig& arm);

// General-solver amplitudes for the arm at one frequency.
SiteAmplitudes solve_arm(const ArmConfig& arm, double dw);

ArmSpectrumPoint arm_point(const ArmConfig& arm, double dw);
std::vector<ArmSpectrumPoint> arm_spectrum(const ArmConfig& arm, std::span<const double> dw_grid);

// 601 points over [-3, 3].
std::vector<double> default_spectrum_grid();

}  // namespace dirnet
