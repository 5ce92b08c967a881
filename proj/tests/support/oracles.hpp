// Independent reference computations for the tests. Nothing here calls the
// library's solvers; formulas are written out again from the physics.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace oracle {

using cplx = std::complex<double>;
inline const cplx I{0.0, 1.0};

struct Site {
    cplx t, r, b;
};

// One nanoparticle with both tips and the dipole attached.
inline Site single_site(double g, double gamma0, double J, double gamma, double delta, double dw, bool coupled) {
    const cplx p = g + gamma0 / 2 - I * dw;
    if (!coupled || J == 0.0) return {g / p, -(gamma0 / 2 - I * dw) / p, std::sqrt(g * gamma0) / p};
    const cplx q = gamma / 2 + I * (delta - dw);
    const cplx D = J * J + q * p;
    return {g * q / D, -(J * J + q * (gamma0 / 2 - I * dw)) / D, std::sqrt(g * gamma0) * q / D};
}

struct TwoArm {
    int n = 2;
    double g = 0.5, gamma0 = 0.1;
    double J1 = 0.3, gamma1 = 0.001, delta1 = 0.0;
    double J2 = 0.3, gamma2 = 0.001, delta2 = 0.0;
    bool qd1_g = true, qd2_g = true;
};

// Rows: outputs s1, s2, d1, d2, then baths 1..2n+2. Columns: source 1, 2.
inline Eigen::MatrixXcd two_arm_outputs(const TwoArm& c, double dw) {
    const int N = 2 * c.n + 2;
    auto at = [](int node) { return node - 1; };
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
    for (int k = 1; k <= N; ++k) M(at(k), at(k)) = -I * dw + c.gamma0 / 2;
    const int s1 = 1, s2 = N, d1 = c.n + 1, d2 = c.n + 2;
    for (int k : {s1, s2, d1, d2}) M(at(k), at(k)) += c.g / 2;
    if (c.qd1_g && c.J1 != 0.0) M(at(s1), at(s1)) += c.J1 * c.J1 / (c.gamma1 / 2 + I * (c.delta1 - dw));
    if (c.qd2_g && c.J2 != 0.0) M(at(s2), at(s2)) += c.J2 * c.J2 / (c.gamma2 / 2 + I * (c.delta2 - dw));
    auto link = [&](int a, int b, double w) {
        M(at(a), at(b)) += I * w;
        M(at(b), at(a)) += I * w;
    };
    for (int k = 1; k < c.n; ++k) {
        link(k, k + 1, 1.0);
        link(c.n + 2 + k, c.n + 3 + k, 1.0);
    }
    const double gh = (c.g + c.gamma0) / 2, gv = std::sqrt(2.0) * gh;
    link(c.n, c.n + 3, -gh);
    link(c.n + 1, c.n + 2, -gh);
    link(c.n, c.n + 1, gv);
    link(c.n + 2, c.n + 3, gv);

    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(N, 2);
    rhs(at(s1), 0) = std::sqrt(c.g);
    rhs(at(s2), 1) = std::sqrt(c.g);
    const Eigen::MatrixXcd a = M.fullPivLu().solve(rhs);

    Eigen::MatrixXcd out(4 + N, 2);
    const int ports[] = {s1, s2, d1, d2};
    for (int s = 0; s < 2; ++s) {
        for (int p = 0; p < 4; ++p) out(p, s) = std::sqrt(c.g) * a(at(ports[p]), s) - (p == s ? 1.0 : 0.0);
        for (int k = 1; k <= N; ++k) out(3 + k, s) = std::sqrt(c.gamma0) * a(at(k), s);
    }
    return out;
}

// e^z - 1 without cancellation for small |z|.
inline cplx expm1(cplx z) {
    const double a = z.real(), b = z.imag();
    const double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

inline cplx coherent_overlap(cplx bra, cplx ket) {
    return std::exp(-0.5 * std::norm(bra) - 0.5 * std::norm(ket) + std::conj(bra) * ket);
}

// <bra| sum_{k>=1} (1 - (1-kappa)^k) |k><k| |ket>, summed term by term in Fock space.
inline cplx detector_fock(cplx bra, cplx ket, double kappa) {
    const cplx x = std::conj(bra) * ket;
    cplx term = 1.0;  // x^k / k!
    cplx sum = 0.0;
    for (int k = 1; k < 400; ++k) {
        term *= x / static_cast<double>(k);
        sum += (1.0 - std::pow(1.0 - kappa, k)) * term;
        if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum)) && k > std::abs(x) + 5) break;
    }
    return std::exp(-0.5 * (std::norm(bra) + std::norm(ket))) * sum;
}

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(unsigned long long seed) : engine(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
};

}  // namespace oracle
