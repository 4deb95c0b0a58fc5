#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lvglasso/prox.hpp"
#include "lvglasso/rng.hpp"
#include "oracles.hpp"

using namespace lvglasso;

namespace {

double stationarity_residual(const SymmetricMatrix& r, const SymmetricMatrix& z,
                             const SymmetricMatrix& sigma, double xi) {
    const Eigen::MatrixXd r_inv = r.mat().inverse();
    return (r.mat() + xi * sigma.mat() - z.mat() - xi * r_inv).norm();
}

}  // namespace

TEST_CASE("prox_logdet scalar cases") {
    SymmetricMatrix z1 = SymmetricMatrix::zero(1);
    CHECK(prox_logdet(z1, SymmetricMatrix::zero(1), 1.0)(0, 0) == doctest::Approx(1.0));

    // r solves r^2 + 2r - 1 = 0 when sigma = 2
    SymmetricMatrix sigma2 = SymmetricMatrix::scaled_identity(1, 2.0);
    CHECK(prox_logdet(z1, sigma2, 1.0)(0, 0) == doctest::Approx(std::sqrt(2.0) - 1.0));
}

TEST_CASE("prox_logdet diagonal case via per-eigenvalue formula") {
    Eigen::MatrixXd zm = Eigen::MatrixXd::Zero(2, 2);
    zm(1, 1) = 3.0;
    SymmetricMatrix r = prox_logdet(SymmetricMatrix(zm), SymmetricMatrix::zero(2), 1.0);
    CHECK(r(0, 0) == doctest::Approx(1.0));
    CHECK(r(1, 1) == doctest::Approx((3.0 + std::sqrt(13.0)) / 2.0));
    CHECK(r(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("prox_logdet satisfies its stationarity equation and stays PD") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const int p = 1 + static_cast<int>(rng.next_u64() % 20);
        SymmetricMatrix z = oracles::random_symmetric(p, rng, 2.0);
        SymmetricMatrix sigma = oracles::random_symmetric(p, rng, 0.5);
        const double xi = 0.1 + 5.0 * rng.uniform();
        SymmetricMatrix r = prox_logdet(z, sigma, xi);
        CHECK(stationarity_residual(r, z, sigma, xi) <= 1e-8 * std::max(1.0, z.mat().norm()));
        CHECK_NOTHROW(log_det_pd(r));
    }
}

TEST_CASE("prox_logdet input validation") {
    CHECK_THROWS_AS(prox_logdet(SymmetricMatrix::zero(2), SymmetricMatrix::zero(2), 0.0),
                    InvalidInput);
    CHECK_THROWS_AS(prox_logdet(SymmetricMatrix::zero(2), SymmetricMatrix::zero(3), 1.0),
                    InvalidInput);
}

TEST_CASE("shrink examples") {
    Rng rng(17);
    SymmetricMatrix z = oracles::random_symmetric(4, rng);
    SymmetricMatrix s0 = shrink(z, 0.0, ShrinkMode::Full);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(s0(i, j) == z(i, j));

    Eigen::MatrixXd m(2, 2);
    m << 0.5, -0.1, -0.1, 0.3;
    SymmetricMatrix full = shrink(SymmetricMatrix(m), 0.2, ShrinkMode::Full);
    CHECK(full(0, 0) == doctest::Approx(0.3));
    CHECK(full(0, 1) == 0.0);
    CHECK(full(1, 1) == doctest::Approx(0.1));

    SymmetricMatrix off = shrink(SymmetricMatrix(m), 0.2, ShrinkMode::OffDiagonal);
    CHECK(off(0, 0) == doctest::Approx(0.5));
    CHECK(off(0, 1) == 0.0);
    CHECK(off(1, 1) == doctest::Approx(0.3));

    CHECK_THROWS_AS(shrink(z, -0.1, ShrinkMode::Full), InvalidInput);
}

TEST_CASE("shrink thresholded entries are bit-exact zero") {
    Rng rng(23);
    SymmetricMatrix z = oracles::random_symmetric(10, rng, 0.5);
    const double tau = 0.4;
    SymmetricMatrix s = shrink(z, tau, ShrinkMode::Full);
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            if (std::fabs(z(i, j)) <= tau) {
                CHECK(s(i, j) == 0.0);
            } else {
                CHECK(s(i, j) != 0.0);
            }
        }
    }
}

TEST_CASE("prox_psd_trace examples") {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
    d(0, 0) = 5.0;
    d(1, 1) = -1.0;
    SymmetricMatrix l = prox_psd_trace(SymmetricMatrix(d), 2.0);
    CHECK(l(0, 0) == doctest::Approx(3.0));
    CHECK(l(1, 1) == doctest::Approx(0.0));

    l = prox_psd_trace(SymmetricMatrix::zero(3), 0.7);
    CHECK(l.mat().norm() == doctest::Approx(0.0));

    Eigen::MatrixXd m(2, 2);
    m << 2, 1, 1, 2;
    l = prox_psd_trace(SymmetricMatrix(m), 1.0);
    // eigenvalues (1,3) -> (0,2) on eigenvector (1,1)/sqrt2
    CHECK(l(0, 0) == doctest::Approx(1.0));
    CHECK(l(0, 1) == doctest::Approx(1.0));
    CHECK(l(1, 1) == doctest::Approx(1.0));

    CHECK_THROWS_AS(prox_psd_trace(SymmetricMatrix::zero(2), -1.0), InvalidInput);
}

TEST_CASE("prox_psd_trace output is PSD and complementary") {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const int p = 2 + static_cast<int>(rng.next_u64() % 10);
        SymmetricMatrix z = oracles::random_symmetric(p, rng, 2.0);
        const double theta = rng.uniform();
        SymmetricMatrix l = prox_psd_trace(z, theta);

        auto ed = sym_eig(l);
        CHECK(ed.values(0) >= -1e-10 * std::max(1.0, ed.values(p - 1)));
        // eigenvalues of Z below theta map to exact zero in L
        auto edz = sym_eig(z);
        int below = 0;
        for (int i = 0; i < p; ++i) below += (edz.values(i) < theta);
        int zero_count = 0;
        for (int i = 0; i < p; ++i) zero_count += (ed.values(i) <= 1e-12);
        CHECK(zero_count >= below - 1);  // eigenvalue ties can shift the count by one

        // <Z - L - theta*I, L> vanishes on the range of L
        const Eigen::MatrixXd gap =
            z.mat() - l.mat() - theta * Eigen::MatrixXd::Identity(p, p);
        CHECK(std::fabs((gap.array() * l.mat().array()).sum()) <=
              1e-8 * std::max(1.0, z.mat().norm()));
    }
    // theta = 0 degenerates to the PSD projection
    Rng rng0(4);
    SymmetricMatrix z = oracles::random_symmetric(5, rng0);
    SymmetricMatrix l = prox_psd_trace(z, 0.0);
    CHECK((l.mat() - oracles::project_psd(z.mat())).norm() <= 1e-10);
}

TEST_CASE("firm nonexpansiveness surrogate") {
    Rng rng(53);
    SymmetricMatrix sigma = oracles::random_symmetric(4, rng, 0.3);
    for (int trial = 0; trial < 100; ++trial) {
        SymmetricMatrix x = oracles::random_symmetric(4, rng);
        SymmetricMatrix y = oracles::random_symmetric(4, rng);
        const double dxy = (x.mat() - y.mat()).norm();

        CHECK((prox_logdet(x, sigma, 1.3).mat() - prox_logdet(y, sigma, 1.3).mat()).norm() <=
              dxy * (1 + 1e-12));
        CHECK((shrink(x, 0.2, ShrinkMode::Full).mat() - shrink(y, 0.2, ShrinkMode::Full).mat())
                  .norm() <= dxy * (1 + 1e-12));
        CHECK((prox_psd_trace(x, 0.5).mat() - prox_psd_trace(y, 0.5).mat()).norm() <=
              dxy * (1 + 1e-12));
    }
}

TEST_CASE("prox outputs match independent descent oracles for small p") {
    Rng rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const int p = 1 + static_cast<int>(rng.next_u64() % 4);
        SymmetricMatrix z = oracles::random_symmetric(p, rng);
        SymmetricMatrix sigma = oracles::random_symmetric(p, rng, 0.3);
        const double xi = 0.5 + rng.uniform();

        // log-det prox vs gradient descent with PD-preserving backtracking
        SymmetricMatrix r = prox_logdet(z, sigma, xi);
        CHECK((r.mat() - oracles::prox_logdet_gd(z.mat(), sigma.mat(), xi)).norm() <= 1e-6);

        // shrink vs per-entry golden-section minimization
        const double alpha = 0.3;
        SymmetricMatrix s = shrink(z, alpha * xi, ShrinkMode::Full);
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
                CHECK(s(i, j) ==
                      doctest::Approx(oracles::scalar_shrink(z(i, j), xi, alpha)).epsilon(1e-6));
            }
        }

        // PSD trace prox vs projected gradient descent
        const double theta = 0.4;
        SymmetricMatrix l = prox_psd_trace(z, theta);
        CHECK((l.mat() - oracles::prox_psd_trace_pgd(z.mat(), theta)).norm() <= 1e-6);
    }
}
