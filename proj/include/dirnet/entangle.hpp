// entangle.hpp: heralded QD-QD entanglement by coherent-state postselection
//
// Both sources are driven with coherent states (alpha at source 1, beta at
// source 2). For each QD branch xy the network maps the inputs to a product of
// output coherent states; a click at drain 1 projects the QDs onto
//
//   rho_{p,q} ~ w_p w_q^* <psi^q| P_d1 |psi^p>,   p, q in {gg, gm, mg, mm}
//
// with w_xy = c_x1 c_y2 and P_d1 the (lumped-efficiency) click operator.

#pragma once

#include <array>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "dirnet/model.hpp"
#include "dirnet/scattering.hpp"

namespace dirnet {

struct InitAmplitudes {
    static constexpr double kHalfRoot = 1.0 / std::numbers::sqrt2;

    cplx c_g1{kHalfRoot, 0.0};
    cplx c_m1{kHalfRoot, 0.0};
    cplx c_g2{kHalfRoot, 0.0};
    cplx c_m2{kHalfRoot, 0.0};

    static InitAmplitudes equal_superposition() { return {}; }

    // Throws InvalidConfig unless each qubit is normalised to 1e-12.
    void validate() const;
    cplx weight(Branch b) const;
};

struct CoherentOutputs {
    Branch branch{Branch::mm};
    cplx xi1, xi2;          // source tips
    cplx mu1, mu2;          // drain tips
    std::vector<cplx> chi;  // node baths, node k at index k-1
};

using BranchOutputs = std::array<CoherentOutputs, 4>;  // indexed by index(Branch)

struct TwoQubitDensityMatrix {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();  // basis gg, gm, mg, mm

    cplx operator()(Branch row, Branch col) const {
        return m(static_cast<Eigen::Index>(index(row)), static_cast<Eigen::Index>(index(col)));
    }

    // Hermiticity and trace within tolerance, smallest eigenvalue >= -psd_tolerance.
    bool is_valid(double tolerance = 1e-10, double psd_tolerance = 1e-9) const;
};

struct ProtocolResult {
    cplx beta;  // injected amplitude at source 2
    TwoQubitDensityMatrix rho;
    double fidelity{0.0};
    double efficiency{0.0};
    double concurrence_lb{0.0};
    std::array<ScatteringSet, 4> scattering;  // per branch
    BranchOutputs outputs;
};

// beta = -alpha t^mm[s1->d1] / t^mm[s2->d1], so mu1^mm vanishes.
cplx matching_beta(cplx alpha, const ScatteringSet& s_mm);

CoherentOutputs branch_outputs(const ScatteringSet& s, cplx alpha, cplx beta);

// <bra|ket> for coherent states.
cplx coherent_overlap(cplx bra, cplx ket);

// <bra| P~ |ket> with P~ = I - sum_k (1-kappa)^k |k><k|.
cplx detector_overlap(cplx bra, cplx ket, double kappa);

struct PostselectedState {
    TwoQubitDensityMatrix rho;
    double efficiency;
};

// Probabilities at or below this are treated as "no click possible".
inline constexpr double kDetectionFloor = 1e-24;

PostselectedState postselected_state(const BranchOutputs& outputs, const InitAmplitudes& init, double kappa);

// <psi-|rho|psi-> with psi- = (|mg> - |gm>)/sqrt(2).
double fidelity(const TwoQubitDensityMatrix& rho);

double concurrence_lower_bound(double fidelity);

ProtocolResult run_protocol(const NetworkConfig& config, cplx alpha, const InitAmplitudes& init, double kappa,
                            double dw);

}  // namespace dirnet
