#include "lvglasso/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "lvglasso/rng.hpp"

namespace lvglasso {

double Rng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

GroundTruth generate_ground_truth(int p, int p_h, double density, std::uint64_t seed,
                                  GroundTruthMode mode) {
    if (p < 1 || p_h < 1) throw InvalidInput("generate_ground_truth: p and p_h must be >= 1");
    if (density <= 0.0 || density > 1.0) {
        throw InvalidInput("generate_ground_truth: density must be in (0,1]");
    }
    const int n = p + p_h;
    Rng rng(seed);

    // Row-major entry order; one uniform for the Bernoulli, a second for
    // the sign only when the entry is nonzero.
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (rng.uniform() < density) {
                u(i, j) = rng.uniform() < 0.5 ? -1.0 : 1.0;
            }
        }
    }

    return ground_truth_from_factor(u, p, p_h, mode);
}

GroundTruth ground_truth_from_factor(const Eigen::MatrixXd& u, int p, int p_h,
                                     GroundTruthMode mode) {
    const int n = p + p_h;
    if (u.rows() != n || u.cols() != n) {
        throw InvalidInput("ground_truth_from_factor: factor must be (p+p_h)-square");
    }
    Eigen::MatrixXd b = u * u.transpose();
    {
        const EigenDecomposition ed = sym_eig(SymmetricMatrix(b));
        const double lam_max = ed.values(n - 1);
        if (ed.values(0) < 1e-8 * std::max(1.0, lam_max)) {
            b += 1e-3 * Eigen::MatrixXd::Identity(n, n);
        }
    }

    Eigen::MatrixXd k;
    if (mode == GroundTruthMode::Verbatim) {
        k = Eigen::LLT<Eigen::MatrixXd>(b).solve(Eigen::MatrixXd::Identity(n, n));
        k = 0.5 * (k + k.transpose());
    } else {
        k = b;
    }

    Eigen::MatrixXd k_xx = k.topLeftCorner(p, p);
    Eigen::MatrixXd k_xy = k.topRightCorner(p, p_h);
    Eigen::MatrixXd k_yy = k.bottomRightCorner(p_h, p_h);
    Eigen::MatrixXd l = k_xy * Eigen::LLT<Eigen::MatrixXd>(k_yy).solve(k_xy.transpose());

    SymmetricMatrix s_true{std::move(k_xx)};
    SymmetricMatrix l_true{std::move(l)};
    SymmetricMatrix precision_x{s_true.mat() - l_true.mat()};
    return {std::move(s_true), std::move(l_true), p, p_h, std::move(precision_x)};
}

Dataset sample_mvn(const SymmetricMatrix& precision, int n, std::uint64_t seed) {
    if (n < 1) throw InvalidInput("sample_mvn: n must be >= 1");
    const int p = precision.dim();
    const Eigen::MatrixXd g = cholesky(precision);  // throws when not PD
    Rng rng(seed);

    Eigen::MatrixXd samples(n, p);
    Eigen::VectorXd z(p);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) z(j) = rng.normal();
        // y solves G^T y = z, so cov(y) = (G G^T)^-1 = precision^-1.
        samples.row(i) = g.transpose().triangularView<Eigen::Upper>().solve(z).transpose();
    }

    Eigen::MatrixXd sigma = (samples.transpose() * samples) / static_cast<double>(n);
    return {std::move(samples), SymmetricMatrix(std::move(sigma))};
}

SymmetricMatrix top_variance_covariance(const Eigen::MatrixXd& raw, int p) {
    const int n = static_cast<int>(raw.rows());
    const int m = static_cast<int>(raw.cols());
    if (n < 2) throw InvalidInput("top_variance_covariance: need at least 2 rows");
    if (p < 1 || p > m) throw InvalidInput("top_variance_covariance: p out of range");

    const Eigen::RowVectorXd mean = raw.colwise().mean();
    const Eigen::MatrixXd centered = raw.rowwise() - mean;
    const Eigen::VectorXd var =
        centered.array().square().colwise().sum().transpose() / static_cast<double>(n);

    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int bcol) { return var(a) > var(bcol); });
    idx.resize(p);

    Eigen::MatrixXd sel(n, p);
    for (int j = 0; j < p; ++j) sel.col(j) = centered.col(idx[j]);
    Eigen::MatrixXd cov = (sel.transpose() * sel) / static_cast<double>(n);
    return SymmetricMatrix(std::move(cov));
}

}  // namespace lvglasso
