#pragma once

#include <Eigen/Dense>

#include "ellsym/errors.hpp"

namespace ellsym {

/// Symmetric positive definite matrix (scatter / shape values).
/// Construction validates symmetry and positive definiteness; instances
/// are immutable afterwards.
class SpdMatrix {
public:
    explicit SpdMatrix(const Eigen::MatrixXd& m);

    static SpdMatrix identity(int dim);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Eigen::MatrixXd& matrix() const { return mat_; }
    double operator()(int i, int j) const { return mat_(i, j); }

private:
    Eigen::MatrixXd mat_;
};

// Unique symmetric positive definite square root of S.
SpdMatrix sym_sqrt(const SpdMatrix& s);

// R such that R*S*R = I (the symmetric inverse square root).
SpdMatrix sym_inv_sqrt(const SpdMatrix& s);

// Upper-triangular stacking, row by row: (s11, s12, ..., s1d, s22, ...).
Eigen::VectorXd vech(const Eigen::MatrixXd& s);

// P_d with P_d' * vech(S) == vec(S) for symmetric S, in the vech order above.
Eigen::MatrixXd duplication_P(int d);

// Commutation matrix: K_d * vec(A) == vec(A').
Eigen::MatrixXd commutation_K(int d);

// Projection matrix J_d = (vec I)(vec I)'.
Eigen::MatrixXd projection_J(int d);

// v' S^{-1} v via a solve, no explicit inverse.
double quad_form_inv(const Eigen::VectorXd& v, const SpdMatrix& s);

} // namespace ellsym
