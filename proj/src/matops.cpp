#include "ellsym/matops.hpp"

#include <cmath>

namespace ellsym {

SpdMatrix::SpdMatrix(const Eigen::MatrixXd& m) : mat_(m) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw ConfigError("SpdMatrix: matrix must be square and non-empty");
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ConfigError("SpdMatrix: matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("SpdMatrix: eigendecomposition failed");
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    if (!(lmin > 0.0) || lmin < 1e-12 * lmax)
        throw NumericalError("SpdMatrix: matrix is not positive definite");
    // Store the exactly symmetric part.
    mat_ = 0.5 * (m + m.transpose());
}

SpdMatrix SpdMatrix::identity(int dim) {
    return SpdMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

namespace {

Eigen::MatrixXd spectral_pow(const SpdMatrix& s, double p) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.matrix());
    if (es.info() != Eigen::Success)
        throw NumericalError("sym_sqrt: eigendecomposition failed");
    const Eigen::VectorXd lam = es.eigenvalues();
    if (lam.maxCoeff() / lam.minCoeff() > 1e12)
        throw NumericalError("sym_sqrt: matrix is ill-conditioned");
    Eigen::VectorXd lp = lam.array().pow(p);
    return es.eigenvectors() * lp.asDiagonal() * es.eigenvectors().transpose();
}

} // namespace

SpdMatrix sym_sqrt(const SpdMatrix& s) {
    return SpdMatrix(spectral_pow(s, 0.5));
}

SpdMatrix sym_inv_sqrt(const SpdMatrix& s) {
    return SpdMatrix(spectral_pow(s, -0.5));
}

Eigen::VectorXd vech(const Eigen::MatrixXd& s) {
    if (s.rows() != s.cols())
        throw ConfigError("vech: matrix must be square");
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ConfigError("vech: matrix is not symmetric");
    const int d = static_cast<int>(s.rows());
    Eigen::VectorXd v(d * (d + 1) / 2);
    int k = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            v(k++) = s(i, j);
    return v;
}

Eigen::MatrixXd duplication_P(int d) {
    if (d < 1) throw ConfigError("duplication_P: d must be positive");
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d * (d + 1) / 2, d * d);
    int k = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            // vec is column-major: entry (r,c) of S sits at c*d + r.
            p(k, j * d + i) = 1.0;
            if (i != j) p(k, i * d + j) = 1.0;
            ++k;
        }
    }
    return p;
}

Eigen::MatrixXd commutation_K(int d) {
    if (d < 1) throw ConfigError("commutation_K: d must be positive");
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            k(j * d + i, i * d + j) = 1.0;
    return k;
}

Eigen::MatrixXd projection_J(int d) {
    if (d < 1) throw ConfigError("projection_J: d must be positive");
    Eigen::VectorXd vi = Eigen::VectorXd::Zero(d * d);
    for (int i = 0; i < d; ++i) vi(i * d + i) = 1.0;
    return vi * vi.transpose();
}

double quad_form_inv(const Eigen::VectorXd& v, const SpdMatrix& s) {
    if (v.size() != s.dim())
        throw ConfigError("quad_form_inv: dimension mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(s.matrix());
    if (llt.info() != Eigen::Success)
        throw NumericalError("quad_form_inv: Cholesky factorization failed");
    return v.dot(llt.solve(v));
}

} // namespace ellsym
