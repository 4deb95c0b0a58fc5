#include "lvglasso/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lvglasso/kernels.hpp"

namespace lvglasso {

SymmetricMatrix::SymmetricMatrix(Eigen::MatrixXd m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw InvalidInput("SymmetricMatrix: matrix must be square with dim >= 1");
    }
    if (!m.allFinite()) {
        throw InvalidInput("SymmetricMatrix: entries must be finite");
    }
    m_ = 0.5 * (m + m.transpose());
}

SymmetricMatrix SymmetricMatrix::zero(int p) {
    return SymmetricMatrix(Eigen::MatrixXd::Zero(p, p), unchecked_t{});
}

SymmetricMatrix SymmetricMatrix::identity(int p) {
    return SymmetricMatrix(Eigen::MatrixXd::Identity(p, p), unchecked_t{});
}

SymmetricMatrix SymmetricMatrix::scaled_identity(int p, double s) {
    return SymmetricMatrix(s * Eigen::MatrixXd::Identity(p, p), unchecked_t{});
}

SymmetricMatrix SymmetricMatrix::from_symmetric(Eigen::MatrixXd m) {
    return SymmetricMatrix(std::move(m), unchecked_t{});
}

EigenDecomposition sym_eig(const SymmetricMatrix& a) {
    if (!a.mat().allFinite()) {
        throw InvalidInput("sym_eig: non-finite input");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.mat());
    if (es.info() != Eigen::Success) {
        throw NumericalFailure("sym_eig: eigensolver failed to converge");
    }
    return {es.eigenvectors(), es.eigenvalues()};
}

Eigen::MatrixXd cholesky(const SymmetricMatrix& a) {
    const int p = a.dim();
    const double pivot_floor = 1e-12 * a.mat().trace() / p;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(p, p);
    for (int j = 0; j < p; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= g(j, k) * g(j, k);
        if (d <= pivot_floor) {
            throw NotPositiveDefinite("cholesky: matrix is not positive definite");
        }
        g(j, j) = std::sqrt(d);
        for (int i = j + 1; i < p; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= g(i, k) * g(j, k);
            g(i, j) = s / g(j, j);
        }
    }
    return g;
}

MatrixNorms norms(const SymmetricMatrix& a) {
    const auto& k = kernels::active();
    const std::size_t n = a.size();
    MatrixNorms out;
    out.frobenius = std::sqrt(k.sum_sq(a.data(), n));
    out.entrywise_l1 = k.sum_abs(a.data(), n);
    out.entrywise_linf = k.max_abs(a.data(), n);
    out.trace = a.mat().trace();
    return out;
}

double log_det_pd(const SymmetricMatrix& a) {
    const EigenDecomposition ed = sym_eig(a);
    const double sigma_max = ed.values(a.dim() - 1);
    const double floor = 1e-12 * std::max(1.0, sigma_max);
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        if (ed.values(i) <= floor) {
            throw NotPositiveDefinite("log_det_pd: matrix is not positive definite");
        }
        s += std::log(ed.values(i));
    }
    return s;
}

namespace {

bool parse_row(const std::string& line, std::vector<double>& out) {
    out.clear();
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t pos = 0;
            double v = std::stod(cell, &pos);
            while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
            if (pos != cell.size()) return false;
            out.push_back(v);
        } catch (const std::exception&) {
            return false;
        }
    }
    return !out.empty();
}

Eigen::MatrixXd read_csv_rows(const std::string& path, bool allow_header) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<double> row;
        if (!parse_row(line, row)) {
            if (first && allow_header) {
                first = false;
                continue;  // header row
            }
            throw IoError("non-numeric row in " + path);
        }
        first = false;
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw IoError("ragged rows in " + path);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("empty CSV file: " + path);
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

}  // namespace

SymmetricMatrix read_matrix_csv(const std::string& path) {
    Eigen::MatrixXd m = read_csv_rows(path, /*allow_header=*/false);
    if (m.rows() != m.cols()) {
        throw IoError("matrix in " + path + " is not square");
    }
    return SymmetricMatrix(std::move(m));
}

void write_matrix_csv(const std::string& path, const SymmetricMatrix& a) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    out.precision(17);
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            if (j > 0) out << ',';
            out << a(i, j);
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

Eigen::MatrixXd read_raw_csv(const std::string& path) {
    return read_csv_rows(path, /*allow_header=*/true);
}

}  // namespace lvglasso
