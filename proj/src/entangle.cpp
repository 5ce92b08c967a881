// entangle.cpp

#include "dirnet/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "dirnet/errors.hpp"

namespace dirnet {

namespace {

// exp(z) - 1 without cancellation for small |z|.
cplx expm1(cplx z) {
    const double y = z.imag();
    const double s = std::sin(0.5 * y);
    const cplx phase_minus_one{-2.0 * s * s, std::sin(y)};
    return std::expm1(z.real()) * std::polar(1.0, y) + phase_minus_one;
}

// log <bra|ket>
cplx log_overlap(cplx bra, cplx ket) {
    return std::conj(bra) * ket - 0.5 * (std::norm(bra) + std::norm(ket));
}

void check_kappa(double kappa) {
    if (!(kappa >= 0.0 && kappa <= 1.0)) {
        std::ostringstream msg;
        msg << "detection efficiency kappa must lie in [0, 1], got " << kappa;
        throw InvalidEfficiency(msg.str());
    }
}

// log of the product of overlaps over every output mode except drain 1.
cplx log_spectator_overlap(const CoherentOutputs& bra, const CoherentOutputs& ket) {
    cplx sum = log_overlap(bra.xi1, ket.xi1) + log_overlap(bra.xi2, ket.xi2) + log_overlap(bra.mu2, ket.mu2);
    const std::size_t modes = std::min(bra.chi.size(), ket.chi.size());
    for (std::size_t k = 0; k < modes; ++k) sum += log_overlap(bra.chi[k], ket.chi[k]);
    return sum;
}

}  // namespace

void InitAmplitudes::validate() const {
    const double n1 = std::norm(c_g1) + std::norm(c_m1);
    const double n2 = std::norm(c_g2) + std::norm(c_m2);
    if (std::abs(n1 - 1.0) > 1e-12 || std::abs(n2 - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "QD initial amplitudes must be normalised per qubit (got " << n1 << ", " << n2 << ")";
        throw InvalidConfig(msg.str());
    }
}

cplx InitAmplitudes::weight(Branch b) const {
    const cplx first = qd1_state(b) == QDState::g ? c_g1 : c_m1;
    const cplx second = qd2_state(b) == QDState::g ? c_g2 : c_m2;
    return first * second;
}

bool TwoQubitDensityMatrix::is_valid(double tolerance, double psd_tolerance) const {
    if (!m.allFinite()) return false;
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tolerance) return false;
    if (std::abs(m.trace() - cplx{1.0, 0.0}) > tolerance) return false;
    const Eigen::Matrix4cd herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(herm, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff() >= -psd_tolerance;
}

cplx matching_beta(cplx alpha, const ScatteringSet& s_mm) {
    const cplx via_s2 = s_mm.t_drain(port::s2, port::d1);
    if (std::abs(via_s2) == 0.0)
        throw MatchingUndefined("source 2 does not reach drain 1 in the mm branch; beta cannot cancel alpha");
    return -alpha * s_mm.t_drain(port::s1, port::d1) / via_s2;
}

CoherentOutputs branch_outputs(const ScatteringSet& s, cplx alpha, cplx beta) {
    CoherentOutputs out;
    out.branch = s.branch;
    const auto& a = s.from.at(port::s1);
    const auto& b = s.from.at(port::s2);
    out.xi1 = alpha * a.to_source.at(port::s1) + beta * b.to_source.at(port::s1);
    out.xi2 = alpha * a.to_source.at(port::s2) + beta * b.to_source.at(port::s2);
    out.mu1 = alpha * a.to_drain.at(port::d1) + beta * b.to_drain.at(port::d1);
    out.mu2 = alpha * a.to_drain.at(port::d2) + beta * b.to_drain.at(port::d2);
    out.chi.resize(a.to_bath.size());
    for (std::size_t k = 0; k < out.chi.size(); ++k) out.chi[k] = alpha * a.to_bath[k] + beta * b.to_bath[k];
    return out;
}

cplx coherent_overlap(cplx bra, cplx ket) { return std::exp(log_overlap(bra, ket)); }

cplx detector_overlap(cplx bra, cplx ket, double kappa) {
    check_kappa(kappa);
    // e^{-(|a|^2+|b|^2)/2} (e^{x} - e^{(1-kappa) x}),  x = bra* ket
    const cplx x = std::conj(bra) * ket;
    return std::exp((1.0 - kappa) * x - 0.5 * (std::norm(bra) + std::norm(ket))) * expm1(kappa * x);
}

PostselectedState postselected_state(const BranchOutputs& outputs, const InitAmplitudes& init, double kappa) {
    check_kappa(kappa);
    init.validate();

    Eigen::Matrix4cd unnorm = Eigen::Matrix4cd::Zero();
    for (Branch p : kBranches) {
        const auto& ket = outputs[index(p)];
        for (Branch q : kBranches) {
            const auto& bra = outputs[index(q)];
            const cplx w = init.weight(p) * std::conj(init.weight(q));
            if (w == cplx{0.0, 0.0}) continue;
            const cplx x = std::conj(bra.mu1) * ket.mu1;
            const cplx log_mag = log_spectator_overlap(bra, ket) + (1.0 - kappa) * x -
                                 0.5 * (std::norm(bra.mu1) + std::norm(ket.mu1));
            unnorm(static_cast<Eigen::Index>(index(p)), static_cast<Eigen::Index>(index(q))) =
                w * std::exp(log_mag) * expm1(kappa * x);
        }
    }

    const double eta = unnorm.trace().real();
    if (!(eta > kDetectionFloor)) {
        std::ostringstream msg;
        msg << "drain 1 never clicks for this configuration (detection probability " << eta << ")";
        throw NoDetectionProbability(msg.str());
    }
    PostselectedState out;
    out.rho.m = unnorm / eta;
    out.efficiency = eta;
    return out;
}

double fidelity(const TwoQubitDensityMatrix& rho) {
    if (!rho.m.allFinite() || (rho.m - rho.m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw InvalidState("density matrix is not Hermitian");
    const cplx value = 0.5 * (rho(Branch::gm, Branch::gm) + rho(Branch::mg, Branch::mg) -
                              rho(Branch::gm, Branch::mg) - rho(Branch::mg, Branch::gm));
    const double f = value.real();
    if (f < -1e-9 || f > 1.0 + 1e-9) {
        std::ostringstream msg;
        msg << "fidelity " << f << " lies outside [0, 1]";
        throw InvalidState(msg.str());
    }
    return std::clamp(f, 0.0, 1.0);
}

double concurrence_lower_bound(double fidelity) { return std::max(0.0, 2.0 * fidelity - 1.0); }

ProtocolResult run_protocol(const NetworkConfig& config, cplx alpha, const InitAmplitudes& init, double kappa,
                            double dw) {
    check_kappa(kappa);
    init.validate();
    const auto net = build_network(config);

    ProtocolResult result;
    for (Branch b : kBranches) result.scattering[index(b)] = solve_scattering(net, b, dw);

    const double attenuation = std::sqrt(config.insertion_transmission);
    const cplx alpha_tip = attenuation * alpha;
    const cplx beta_tip = matching_beta(alpha_tip, result.scattering[index(Branch::mm)]);
    result.beta = beta_tip / attenuation;

    for (Branch b : kBranches)
        result.outputs[index(b)] = branch_outputs(result.scattering[index(b)], alpha_tip, beta_tip);

    const auto post = postselected_state(result.outputs, init, kappa);
    result.rho = post.rho;
    result.efficiency = post.efficiency;
    result.fidelity = fidelity(result.rho);
    result.concurrence_lb = concurrence_lower_bound(result.fidelity);
    return result;
}

}  // namespace dirnet
