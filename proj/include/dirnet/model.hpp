// model.hpp: domain types and the two-arm coupled-mode network graph
//
// All rates are dimensionless, in units of the interparticle coupling g_np.
// Nodes carry the 1-based labels 1..2n+2 used for the physical layout:
//
//   source 1 -> [1]-[2]-...-[n]     [n+3]-...-[2n+2] <- source 2
//                            |  \   /  |
//                         [n+1]--[n+2]
//                           |       |
//                        drain 1  drain 2
//
// Nodes n, n+1, n+2, n+3 form the four-particle beam splitter. QD1 sits at
// node 1 and QD2 at node 2n+2.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace dirnet {

using cplx = std::complex<double>;

struct QDConfig {
    double J{0.3};        // vacuum Rabi coupling to the adjacent nanoparticle
    double gamma{0.001};  // dipole decay rate
    double delta{0.0};    // detuning of the |g>-|e> transition from omega0
    bool coupled{true};   // false: the dipole is absent (|m> or no QD)
};

struct NetworkConfig {
    int n{2};              // nanoparticles per arm
    double g_np{1.0};      // arm coupling; reference rate
    double g_inout{0.5};   // nanowire tip to nanoparticle coupling
    double gamma0{0.1};    // nanoparticle damping
    QDConfig qd1{};
    QDConfig qd2{};
    std::optional<double> omega0_over_gnp;  // only used by validity checks
    double insertion_transmission{1.0};     // power fraction of alpha, beta reaching the tips
};

void validate(const QDConfig& qd);
void validate(const NetworkConfig& config);

enum class QDState { g, m };

// Joint state of QD1 (x) QD2. The enumerator order is the density-matrix basis order.
enum class Branch { gg = 0, gm = 1, mg = 2, mm = 3 };

inline constexpr std::array<Branch, 4> kBranches{Branch::gg, Branch::gm, Branch::mg, Branch::mm};

constexpr std::size_t index(Branch b) { return static_cast<std::size_t>(b); }
constexpr QDState qd1_state(Branch b) { return (b == Branch::gg || b == Branch::gm) ? QDState::g : QDState::m; }
constexpr QDState qd2_state(Branch b) { return (b == Branch::gg || b == Branch::mg) ? QDState::g : QDState::m; }
constexpr Branch make_branch(QDState s1, QDState s2) {
    if (s1 == QDState::g) return s2 == QDState::g ? Branch::gg : Branch::gm;
    return s2 == QDState::g ? Branch::mg : Branch::mm;
}

std::string_view to_string(Branch b);
std::optional<Branch> parse_branch(std::string_view text);

struct Edge {
    int i;            // 1-based node labels
    int j;
    double coupling;  // signed
};

struct PortAttachment {
    int node;
    double coupling;
};

struct DipoleSite {
    int node;
    int qd_index;  // 0 for QD1, 1 for QD2
    QDConfig qd;
};

struct CoupledModeNetwork {
    int n{0};
    int node_count{0};
    std::vector<Edge> edges;
    std::vector<PortAttachment> sources;
    std::vector<PortAttachment> drains;
    double bath_rate{0.0};
    std::vector<DipoleSite> dipoles;
};

struct BeamSplitterCouplings {
    double horizontal;  // g_h, on (n, n+3) and (n+1, n+2)
    double vertical;    // g_v, on (n, n+1) and (n+2, n+3)
};

// g_h = (g_inout + gamma0) / 2 and g_v = sqrt(2) g_h: the lossy 50/50 condition.
BeamSplitterCouplings beam_splitter_couplings(double g_inout, double gamma0);

// The horizontal beam-splitter edges are installed with coupling -g_h. The sign
// encodes the polarisation dependence of the near-field coupling at the bent
// corners and fixes t[s1->d2] = i t[s1->d1] and t[s2->d1] = i t[s2->d2] at
// resonance. Magnitudes follow beam_splitter_couplings.
CoupledModeNetwork build_network(const NetworkConfig& config);

// Adiabatically eliminated dipole, <sigma_z> = -1:
//   J^2 / (gamma/2 + i (delta - dw)), zero when the dipole is decoupled.
cplx qd_self_energy(const QDConfig& qd, double dw);

// Whether a dipole site participates for the given branch.
bool dipole_active(const DipoleSite& site, Branch branch);

}  // namespace dirnet
