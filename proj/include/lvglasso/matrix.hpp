#pragma once

#include <Eigen/Dense>
#include <string>

#include "lvglasso/errors.hpp"

namespace lvglasso {

/// Dense p-by-p real symmetric matrix.  Symmetry is enforced at
/// construction by averaging (A + A^T)/2; ADMM updates can introduce
/// rounding-level asymmetry that would otherwise accumulate.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(Eigen::MatrixXd m);

    static SymmetricMatrix zero(int p);
    static SymmetricMatrix identity(int p);
    static SymmetricMatrix scaled_identity(int p, double s);
    /// Fast path for callers that guarantee symmetry (entrywise maps and
    /// linear combinations of symmetric matrices).  Not validated.
    static SymmetricMatrix from_symmetric(Eigen::MatrixXd m);

    int dim() const { return static_cast<int>(m_.rows()); }
    double operator()(int i, int j) const { return m_(i, j); }
    const Eigen::MatrixXd& mat() const { return m_; }
    const double* data() const { return m_.data(); }
    double* data() { return m_.data(); }
    std::size_t size() const { return static_cast<std::size_t>(m_.size()); }

private:
    struct unchecked_t {};
    SymmetricMatrix(Eigen::MatrixXd m, unchecked_t) : m_(std::move(m)) {}
    Eigen::MatrixXd m_;
};

struct EigenDecomposition {
    Eigen::MatrixXd vectors;  // orthonormal columns
    Eigen::VectorXd values;   // non-decreasing
};

struct MatrixNorms {
    double frobenius;
    double entrywise_l1;
    double entrywise_linf;
    double trace;
};

EigenDecomposition sym_eig(const SymmetricMatrix& a);

/// Lower-triangular G with G*G^T = A.  Throws NotPositiveDefinite when a
/// pivot falls at or below 1e-12 * trace(A) / p.
Eigen::MatrixXd cholesky(const SymmetricMatrix& a);

MatrixNorms norms(const SymmetricMatrix& a);

/// log det of a symmetric positive definite matrix via its eigenvalues.
double log_det_pd(const SymmetricMatrix& a);

/// CSV matrix I/O: one row per line, comma-separated, no header.  The
/// reader enforces squareness and symmetrizes; the writer emits 17
/// significant digits.
SymmetricMatrix read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const SymmetricMatrix& a);

/// Raw sample data: one sample per row, optional single header row
/// (auto-detected when the first row is non-numeric).
Eigen::MatrixXd read_raw_csv(const std::string& path);

}  // namespace lvglasso
