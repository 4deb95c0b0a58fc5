#pragma once

// Test-only oracles: independent routes to the values the library computes
// in closed form.  None of these call the prox implementations.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "lvglasso/matrix.hpp"
#include "lvglasso/rng.hpp"

namespace oracles {

// Eigenpairs of a 2x2 symmetric matrix from the characteristic polynomial.
inline void eig2(double a, double b, double d, double& lo, double& hi) {
    const double tr = a + d;
    const double det = a * d - b * b;
    const double disc = std::sqrt(tr * tr / 4.0 - det);
    lo = tr / 2.0 - disc;
    hi = tr / 2.0 + disc;
}

// Minimizer of (1/(2 xi)) (x - z)^2 + alpha |x| by golden-section search.
inline double scalar_shrink(double z, double xi, double alpha) {
    auto q = [&](double x) { return (x - z) * (x - z) / (2.0 * xi) + alpha * std::fabs(x); };
    double lo = -std::fabs(z) - 1.0;
    double hi = std::fabs(z) + 1.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    for (int it = 0; it < 200; ++it) {
        if (q(c) < q(d)) {
            hi = d;
        } else {
            lo = c;
        }
        c = hi - gr * (hi - lo);
        d = lo + gr * (hi - lo);
    }
    return (lo + hi) / 2.0;
}

inline Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
    Eigen::VectorXd v = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * v.asDiagonal() * es.eigenvectors().transpose();
}

// Projected gradient descent on (1/2) ||L - Z||_F^2 + theta Tr(L) over the
// PSD cone, started from zero with a conservative step.
inline Eigen::MatrixXd prox_psd_trace_pgd(const Eigen::MatrixXd& z, double theta,
                                          int iters = 400, double step = 0.3) {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(z.rows(), z.cols());
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(z.rows(), z.cols());
    for (int k = 0; k < iters; ++k) {
        const Eigen::MatrixXd grad = l - z + theta * id;
        l = project_psd(l - step * grad);
    }
    return l;
}

// Gradient descent on (1/(2 xi)) ||R - Z||_F^2 + <R, Sigma> - log det R,
// with Barzilai-Borwein step lengths safeguarded by Armijo backtracking
// (the backtracking also rejects non-PD trial points).
inline Eigen::MatrixXd prox_logdet_gd(const Eigen::MatrixXd& z, const Eigen::MatrixXd& sigma,
                                      double xi, int iters = 5000) {
    const int p = static_cast<int>(z.rows());
    auto value = [&](const Eigen::MatrixXd& r, bool& pd) {
        Eigen::LLT<Eigen::MatrixXd> llt(r);
        if (llt.info() != Eigen::Success) {
            pd = false;
            return 0.0;
        }
        pd = true;
        const double logdet =
            2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
        return (r - z).squaredNorm() / (2.0 * xi) +
               (r.array() * sigma.array()).sum() - logdet;
    };
    auto gradient = [&](const Eigen::MatrixXd& r) {
        const Eigen::MatrixXd r_inv =
            Eigen::LLT<Eigen::MatrixXd>(r).solve(Eigen::MatrixXd::Identity(p, p));
        return Eigen::MatrixXd((r - z) / xi + sigma - r_inv);
    };

    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(p, p);
    bool pd = true;
    double f = value(r, pd);
    Eigen::MatrixXd grad = gradient(r);
    double step = xi;
    for (int k = 0; k < iters; ++k) {
        const double g2 = grad.squaredNorm();
        if (std::sqrt(g2) < 1e-13 * std::max(1.0, r.norm())) break;
        double t = step;
        Eigen::MatrixXd cand;
        double f_cand = 0.0;
        for (int bt = 0; bt < 80; ++bt) {
            cand = r - t * grad;
            f_cand = value(cand, pd);
            if (pd && f_cand <= f - 1e-4 * t * g2) break;
            t *= 0.5;
        }
        const Eigen::MatrixXd grad_cand = gradient(cand);
        const Eigen::MatrixXd dg = grad_cand - grad;
        const double denom = dg.squaredNorm();
        step = denom > 0.0 ? std::fabs((t * grad.array() * dg.array()).sum()) / denom : xi;
        step = std::clamp(step, 1e-12, 1e6);
        r = std::move(cand);
        f = f_cand;
        grad = grad_cand;
    }
    return 0.5 * (r + r.transpose());
}

// Projection of (t_r, t_s, t_l) onto {r - s + l = 0} by solving the
// entrywise 4x4 KKT system of the equality-constrained least squares.
inline void consensus_project_ls(const Eigen::MatrixXd& t_r, const Eigen::MatrixXd& t_s,
                                 const Eigen::MatrixXd& t_l, Eigen::MatrixXd& r,
                                 Eigen::MatrixXd& s, Eigen::MatrixXd& l) {
    const auto p = t_r.rows();
    r.resize(p, p);
    s.resize(p, p);
    l.resize(p, p);
    Eigen::Matrix4d kkt;
    kkt << 1, 0, 0, 1,
           0, 1, 0, -1,
           0, 0, 1, 1,
           1, -1, 1, 0;
    for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) {
            Eigen::Vector4d rhs(t_r(i, j), t_s(i, j), t_l(i, j), 0.0);
            Eigen::Vector4d sol = kkt.fullPivLu().solve(rhs);
            r(i, j) = sol(0);
            s(i, j) = sol(1);
            l(i, j) = sol(2);
        }
    }
}

inline lvglasso::SymmetricMatrix random_symmetric(int p, lvglasso::Rng& rng, double scale = 1.0) {
    Eigen::MatrixXd m(p, p);
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < p; ++i) m(i, j) = scale * rng.normal();
    return lvglasso::SymmetricMatrix(std::move(m));
}

inline lvglasso::SymmetricMatrix random_spd(int p, lvglasso::Rng& rng) {
    Eigen::MatrixXd b(p, p);
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < p; ++i) b(i, j) = rng.normal();
    Eigen::MatrixXd m = b * b.transpose() + Eigen::MatrixXd::Identity(p, p);
    return lvglasso::SymmetricMatrix(std::move(m));
}

}  // namespace oracles
