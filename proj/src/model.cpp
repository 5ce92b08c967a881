// model.cpp: network construction and eliminated-dipole self-energy

#include "dirnet/model.hpp"

#include <cmath>
#include <string>

#include "dirnet/errors.hpp"

namespace dirnet {

namespace {

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void validate(const QDConfig& qd) {
    if (!finite(qd.J) || qd.J < 0.0)
        throw InvalidConfig("QD coupling J must be finite and >= 0, got " + std::to_string(qd.J));
    if (!finite(qd.gamma) || qd.gamma < 0.0)
        throw InvalidConfig("QD decay rate gamma must be finite and >= 0, got " + std::to_string(qd.gamma));
    if (!finite(qd.delta))
        throw InvalidConfig("QD detuning must be finite");
}

void validate(const NetworkConfig& config) {
    if (config.n < 2)
        throw InvalidGeometry("each arm needs at least 2 nanoparticles, got n = " + std::to_string(config.n));
    if (!finite(config.g_np) || config.g_np <= 0.0)
        throw InvalidConfig("g_np must be > 0");
    if (!finite(config.g_inout) || config.g_inout <= 0.0)
        throw InvalidConfig("g_inout must be > 0, got " + std::to_string(config.g_inout));
    if (!finite(config.gamma0) || config.gamma0 < 0.0)
        throw InvalidConfig("gamma0 must be >= 0, got " + std::to_string(config.gamma0));
    if (!(config.insertion_transmission > 0.0 && config.insertion_transmission <= 1.0))
        throw InvalidConfig("insertion transmission must lie in (0, 1]");
    if (config.omega0_over_gnp && !(*config.omega0_over_gnp > 0.0))
        throw InvalidConfig("omega0 / g_np must be > 0");
    validate(config.qd1);
    validate(config.qd2);
}

std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::gg: return "gg";
        case Branch::gm: return "gm";
        case Branch::mg: return "mg";
        case Branch::mm: return "mm";
    }
    return "??";
}

std::optional<Branch> parse_branch(std::string_view text) {
    for (Branch b : kBranches)
        if (to_string(b) == text) return b;
    return std::nullopt;
}

BeamSplitterCouplings beam_splitter_couplings(double g_inout, double gamma0) {
    const double gh = 0.5 * (g_inout + gamma0);
    return {gh, std::sqrt(2.0) * gh};
}

CoupledModeNetwork build_network(const NetworkConfig& config) {
    validate(config);
    const int n = config.n;

    CoupledModeNetwork net;
    net.n = n;
    net.node_count = 2 * n + 2;
    net.bath_rate = config.gamma0;
    net.edges.reserve(static_cast<std::size_t>(2 * (n - 1) + 4));

    for (int k = 1; k < n; ++k) net.edges.push_back({k, k + 1, config.g_np});
    for (int k = n + 3; k < 2 * n + 2; ++k) net.edges.push_back({k, k + 1, config.g_np});

    const auto bs = beam_splitter_couplings(config.g_inout, config.gamma0);
    net.edges.push_back({n, n + 3, -bs.horizontal});
    net.edges.push_back({n + 1, n + 2, -bs.horizontal});
    net.edges.push_back({n, n + 1, bs.vertical});
    net.edges.push_back({n + 2, n + 3, bs.vertical});

    net.sources = {{1, config.g_inout}, {2 * n + 2, config.g_inout}};
    net.drains = {{n + 1, config.g_inout}, {n + 2, config.g_inout}};
    net.dipoles = {{1, 0, config.qd1}, {2 * n + 2, 1, config.qd2}};
    return net;
}

cplx qd_self_energy(const QDConfig& qd, double dw) {
    if (!qd.coupled || qd.J == 0.0) return {0.0, 0.0};
    const cplx denom{0.5 * qd.gamma, qd.delta - dw};
    if (denom == cplx{0.0, 0.0})
        throw SingularSelfEnergy("lossless dipole driven exactly on its transition (gamma = 0, delta = dw)");
    return qd.J * qd.J / denom;
}

bool dipole_active(const DipoleSite& site, Branch branch) {
    const QDState state = site.qd_index == 0 ? qd1_state(branch) : qd2_state(branch);
    return state == QDState::g && site.qd.coupled && site.qd.J != 0.0;
}

}  // namespace dirnet
