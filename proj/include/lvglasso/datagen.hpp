#pragma once

#include <cstdint>

#include "lvglasso/matrix.hpp"

namespace lvglasso {

/// How the joint precision K is built from the random sparse factor U.
/// Verbatim inverts U*U^T; Direct uses U*U^T itself as the joint
/// precision (a sparse alternative reading).
enum class GroundTruthMode { Verbatim, Direct };

struct GroundTruth {
    SymmetricMatrix s_true;       // sparse target, top-left block of K
    SymmetricMatrix l_true;       // low-rank target, rank <= p_h
    int p;                        // observed dimension
    int p_h;                      // hidden dimension
    SymmetricMatrix precision_x;  // s_true - l_true, the marginal precision
};

struct Dataset {
    Eigen::MatrixXd samples;    // N x p
    SymmetricMatrix sigma_hat;  // (1/N) * sum y_i y_i^T, uncentered
};

/// Random sparse-plus-low-rank instance: a (p+p_h)-square factor U with
/// +-1 entries at the given density, joint precision K, and the observed
/// blocks K_xx and K_xy K_yy^-1 K_yx.
GroundTruth generate_ground_truth(int p, int p_h, double density, std::uint64_t seed,
                                  GroundTruthMode mode = GroundTruthMode::Verbatim);

/// Same construction from an explicit factor U (u must be (p+p_h)-square).
GroundTruth ground_truth_from_factor(const Eigen::MatrixXd& u, int p, int p_h,
                                     GroundTruthMode mode = GroundTruthMode::Verbatim);

/// n zero-mean Gaussian samples with the given precision matrix.
Dataset sample_mvn(const SymmetricMatrix& precision, int n, std::uint64_t seed);

/// Select the p columns of highest variance and return their sample
/// covariance (mean-centered, denominator N).
SymmetricMatrix top_variance_covariance(const Eigen::MatrixXd& raw, int p);

}  // namespace lvglasso
