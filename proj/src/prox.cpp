#include "lvglasso/prox.hpp"

#include <cmath>

#include "lvglasso/kernels.hpp"

namespace lvglasso {

SymmetricMatrix prox_logdet(const SymmetricMatrix& z, const SymmetricMatrix& sigma_hat,
                            double xi) {
    if (xi <= 0.0) throw InvalidInput("prox_logdet: xi must be positive");
    if (z.dim() != sigma_hat.dim()) throw InvalidInput("prox_logdet: dimension mismatch");

    Eigen::MatrixXd arg(z.dim(), z.dim());
    kernels::active().combine2(xi, sigma_hat.data(), -1.0, z.data(), z.size(), arg.data());
    const EigenDecomposition ed = sym_eig(SymmetricMatrix::from_symmetric(std::move(arg)));

    Eigen::VectorXd gamma(z.dim());
    for (int i = 0; i < z.dim(); ++i) {
        const double s = ed.values(i);
        gamma(i) = 0.5 * (-s + std::sqrt(s * s + 4.0 * xi));
    }
    Eigen::MatrixXd r = ed.vectors * gamma.asDiagonal() * ed.vectors.transpose();
    return SymmetricMatrix(std::move(r));
}

SymmetricMatrix shrink(const SymmetricMatrix& z, double tau, ShrinkMode mode) {
    if (tau < 0.0) throw InvalidInput("shrink: tau must be nonnegative");
    const int p = z.dim();
    Eigen::MatrixXd out(p, p);
    kernels::active().soft_threshold(z.data(), z.size(), tau, out.data());
    if (mode == ShrinkMode::OffDiagonal) {
        for (int i = 0; i < p; ++i) out(i, i) = z(i, i);
    }
    return SymmetricMatrix::from_symmetric(std::move(out));
}

SymmetricMatrix prox_psd_trace(const SymmetricMatrix& z, double theta) {
    if (theta < 0.0) throw InvalidInput("prox_psd_trace: theta must be nonnegative");
    const EigenDecomposition ed = sym_eig(z);
    Eigen::VectorXd gamma(z.dim());
    for (int i = 0; i < z.dim(); ++i) {
        gamma(i) = std::max(ed.values(i) - theta, 0.0);
    }
    Eigen::MatrixXd l = ed.vectors * gamma.asDiagonal() * ed.vectors.transpose();
    return SymmetricMatrix(std::move(l));
}

}  // namespace lvglasso
