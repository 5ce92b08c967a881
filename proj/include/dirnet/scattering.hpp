// scattering.hpp: frequency-domain steady state and transition amplitudes
//
// In the frame rotating at the drive frequency omega = omega0 + dw, the node
// amplitudes obey  M a = drive  with
//   M_kk = -i dw + gamma0/2 + sum(port couplings at k)/2 + self-energy(k)
//   M_ij = i g_ij  for every edge
// and drive = sqrt(g) at the driven source node. Outputs follow
// out = sqrt(rate) a - in, so t[s->s] picks up the -1 of the reflected input.

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "dirnet/model.hpp"

namespace dirnet {

using DynamicalMatrix = Eigen::MatrixXcd;

namespace port {
inline constexpr std::size_t s1 = 0;
inline constexpr std::size_t s2 = 1;
inline constexpr std::size_t d1 = 0;
inline constexpr std::size_t d2 = 1;
}  // namespace port

struct SourceResponse {
    std::vector<cplx> to_source;  // indexed like CoupledModeNetwork::sources
    std::vector<cplx> to_drain;   // indexed like CoupledModeNetwork::drains
    std::vector<cplx> to_bath;    // one per node, node k at index k-1
};

struct ScatteringSet {
    Branch branch{Branch::mm};
    double dw{0.0};
    std::vector<SourceResponse> from;  // one per source

    cplx t_source(std::size_t s, std::size_t j) const { return from.at(s).to_source.at(j); }
    cplx t_drain(std::size_t s, std::size_t j) const { return from.at(s).to_drain.at(j); }
    cplx t_bath(std::size_t s, std::size_t node) const { return from.at(s).to_bath.at(node - 1); }

    // Sum of |t|^2 over every output channel for one source.
    double output_flux(std::size_t s) const;
};

struct SolverOptions {
    double min_rcond{1e-14};  // reciprocal-condition floor before NumericallySingular
};

DynamicalMatrix assemble_dynamical_matrix(const CoupledModeNetwork& net, Branch branch, double dw);

// Column s holds the node amplitudes for unit input at source s.
Eigen::MatrixXcd solve_node_amplitudes(const CoupledModeNetwork& net, Branch branch, double dw,
                                       const SolverOptions& options = {});

ScatteringSet solve_scattering(const CoupledModeNetwork& net, Branch branch, double dw,
                               const SolverOptions& options = {});

// Maps solved node amplitudes to output amplitudes.
ScatteringSet scattering_from_amplitudes(const CoupledModeNetwork& net, Branch branch, double dw,
                                         const Eigen::MatrixXcd& amplitudes);

// max over sources of 1 - sum|t|^2, clamped at zero; below -tolerance means
// energy was created, which only a broken solve can do.
double flux_balance_residual(const ScatteringSet& s, double tolerance = 1e-9);

struct OracleOptions {
    double tolerance{1e-12};      // relative change per unit time at convergence
    long max_steps{2'000'000};
    double step_safety{0.5};      // dt = step_safety / (Gershgorin radius)
};

// Independent check of solve_node_amplitudes: integrates the linear
// node + dipole equations (dipoles kept as explicit modes, not eliminated)
// with classical RK4 under a constant co-rotating drive until stationary.
Eigen::MatrixXcd steady_state_oracle(const CoupledModeNetwork& net, Branch branch, double dw,
                                     const OracleOptions& options = {});

}  // namespace dirnet
