// scattering.cpp

#include "dirnet/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dirnet/errors.hpp"

namespace dirnet {

namespace {

constexpr cplx I{0.0, 1.0};

Eigen::Index row(int node) { return static_cast<Eigen::Index>(node - 1); }

// The coupling-only part of M (no dipoles), shared by the direct solve and the oracle.
DynamicalMatrix bare_matrix(const CoupledModeNetwork& net, double dw) {
    const Eigen::Index dim = net.node_count;
    DynamicalMatrix m = DynamicalMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) m(k, k) = cplx{0.5 * net.bath_rate, -dw};
    for (const auto& p : net.sources) m(row(p.node), row(p.node)) += 0.5 * p.coupling;
    for (const auto& p : net.drains) m(row(p.node), row(p.node)) += 0.5 * p.coupling;
    for (const auto& e : net.edges) {
        m(row(e.i), row(e.j)) += I * e.coupling;
        m(row(e.j), row(e.i)) += I * e.coupling;
    }
    return m;
}

Eigen::MatrixXcd drive_matrix(const CoupledModeNetwork& net) {
    Eigen::MatrixXcd drive = Eigen::MatrixXcd::Zero(net.node_count, static_cast<Eigen::Index>(net.sources.size()));
    for (std::size_t s = 0; s < net.sources.size(); ++s)
        drive(row(net.sources[s].node), static_cast<Eigen::Index>(s)) = std::sqrt(net.sources[s].coupling);
    return drive;
}

}  // namespace

double ScatteringSet::output_flux(std::size_t s) const {
    const auto& r = from.at(s);
    double sum = 0.0;
    for (cplx t : r.to_source) sum += std::norm(t);
    for (cplx t : r.to_drain) sum += std::norm(t);
    for (cplx t : r.to_bath) sum += std::norm(t);
    return sum;
}

DynamicalMatrix assemble_dynamical_matrix(const CoupledModeNetwork& net, Branch branch, double dw) {
    DynamicalMatrix m = bare_matrix(net, dw);
    for (const auto& site : net.dipoles)
        if (dipole_active(site, branch)) m(row(site.node), row(site.node)) += qd_self_energy(site.qd, dw);
    return m;
}

Eigen::MatrixXcd solve_node_amplitudes(const CoupledModeNetwork& net, Branch branch, double dw,
                                       const SolverOptions& options) {
    const DynamicalMatrix m = assemble_dynamical_matrix(net, branch, dw);
    Eigen::PartialPivLU<DynamicalMatrix> lu(m);
    const double rcond = lu.rcond();
    if (!(rcond > options.min_rcond)) {
        std::ostringstream msg;
        msg << "dynamical matrix is numerically singular (rcond ~ " << rcond << ") for branch "
            << to_string(branch) << " at dw = " << dw;
        throw NumericallySingular(msg.str(), rcond);
    }
    return lu.solve(drive_matrix(net));
}

ScatteringSet scattering_from_amplitudes(const CoupledModeNetwork& net, Branch branch, double dw,
                                         const Eigen::MatrixXcd& amplitudes) {
    ScatteringSet out;
    out.branch = branch;
    out.dw = dw;
    out.from.resize(net.sources.size());
    const double sqrt_bath = std::sqrt(net.bath_rate);

    for (std::size_t s = 0; s < net.sources.size(); ++s) {
        const auto col = amplitudes.col(static_cast<Eigen::Index>(s));
        auto& r = out.from[s];
        for (std::size_t j = 0; j < net.sources.size(); ++j) {
            const auto& p = net.sources[j];
            cplx t = std::sqrt(p.coupling) * col(row(p.node));
            if (j == s) t -= 1.0;
            r.to_source.push_back(t);
        }
        for (const auto& p : net.drains) r.to_drain.push_back(std::sqrt(p.coupling) * col(row(p.node)));
        r.to_bath.resize(static_cast<std::size_t>(net.node_count));
        for (int k = 1; k <= net.node_count; ++k) r.to_bath[static_cast<std::size_t>(k - 1)] = sqrt_bath * col(row(k));
    }
    return out;
}

ScatteringSet solve_scattering(const CoupledModeNetwork& net, Branch branch, double dw,
                               const SolverOptions& options) {
    return scattering_from_amplitudes(net, branch, dw, solve_node_amplitudes(net, branch, dw, options));
}

double flux_balance_residual(const ScatteringSet& s, double tolerance) {
    double worst = 0.0;
    for (std::size_t src = 0; src < s.from.size(); ++src) {
        const double residual = 1.0 - s.output_flux(src);
        if (residual < -tolerance) {
            std::ostringstream msg;
            msg << "output flux exceeds input by " << -residual << " for source " << src + 1;
            throw FluxViolation(msg.str());
        }
        worst = std::max(worst, residual);
    }
    return worst;
}

Eigen::MatrixXcd steady_state_oracle(const CoupledModeNetwork& net, Branch branch, double dw,
                                     const OracleOptions& options) {
    double damping = net.bath_rate;
    for (const auto& p : net.sources) damping += p.coupling;
    for (const auto& p : net.drains) damping += p.coupling;
    if (!(net.bath_rate >= 0.0) || !(damping > 0.0))
        throw OracleDiverged("network has no dissipation channel, so no steady state exists");

    std::vector<const DipoleSite*> active;
    for (const auto& site : net.dipoles)
        if (dipole_active(site, branch)) active.push_back(&site);

    // State layout: node amplitudes, then one explicit dipole coherence per active QD.
    //   d sigma/dt = -(gamma/2 + i(delta - dw)) sigma - i J a_site
    //   d a_site/dt gains -i J sigma
    const Eigen::Index nodes = net.node_count;
    const Eigen::Index dim = nodes + static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(dim, dim);
    gen.topLeftCorner(nodes, nodes) = -bare_matrix(net, dw);
    for (std::size_t q = 0; q < active.size(); ++q) {
        const Eigen::Index sig = nodes + static_cast<Eigen::Index>(q);
        const auto& qd = active[q]->qd;
        gen(sig, sig) = -cplx{0.5 * qd.gamma, qd.delta - dw};
        gen(sig, row(active[q]->node)) = -I * qd.J;
        gen(row(active[q]->node), sig) = -I * qd.J;
    }

    double radius = 0.0;
    for (Eigen::Index r = 0; r < dim; ++r) radius = std::max(radius, gen.row(r).cwiseAbs().sum());
    const double dt = options.step_safety / radius;

    Eigen::MatrixXcd drive = Eigen::MatrixXcd::Zero(dim, static_cast<Eigen::Index>(net.sources.size()));
    drive.topRows(nodes) = drive_matrix(net);

    Eigen::MatrixXcd state = Eigen::MatrixXcd::Zero(dim, drive.cols());
    auto rhs = [&](const Eigen::MatrixXcd& x) -> Eigen::MatrixXcd { return gen * x + drive; };

    for (long step = 0; step < options.max_steps; ++step) {
        const Eigen::MatrixXcd k1 = rhs(state);
        const Eigen::MatrixXcd k2 = rhs(state + 0.5 * dt * k1);
        const Eigen::MatrixXcd k3 = rhs(state + 0.5 * dt * k2);
        const Eigen::MatrixXcd k4 = rhs(state + dt * k3);
        const Eigen::MatrixXcd delta = (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        state += delta;
        if (!state.allFinite()) break;
        const double scale = state.norm();
        if (scale > 0.0 && delta.norm() / (dt * scale) < options.tolerance)
            return state.topRows(nodes);
    }
    throw OracleDiverged("time-domain relaxation did not reach a steady state within the step budget");
}

}  // namespace dirnet
