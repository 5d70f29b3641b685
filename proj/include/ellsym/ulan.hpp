#pragma once

#include <Eigen/Dense>

#include "ellsym/matops.hpp"
#include "ellsym/radial.hpp"

namespace ellsym {

// Default skewing-function slope: Gaussian Pi = Phi, Pi'(0) = 1/sqrt(2*pi).
double default_pi_dot();

/// Mahalanobis distances and multivariate signs of a sample at (theta, Sigma).
struct SampleDecomposition {
    Eigen::VectorXd distances;   // d_i(theta, Sigma) > 0
    Eigen::MatrixXd signs;       // rows U_i(theta, Sigma), unit norm
    Eigen::VectorXd location;
    Eigen::MatrixXd scatter;

    int n() const { return static_cast<int>(distances.size()); }
    int dim() const { return static_cast<int>(signs.cols()); }
};

SampleDecomposition decompose(const Eigen::MatrixXd& data,
                              const Eigen::VectorXd& theta, const SpdMatrix& sigma);

/// The three blocks of the central sequence Delta_f(theta0).
struct CentralSequence {
    Eigen::VectorXd loc_block;      // Delta_{f;1}, length d
    Eigen::VectorXd scatter_block;  // Delta_{f;2}, length d(d+1)/2
    Eigen::VectorXd skew_block;     // Delta_3, length d (f-independent)
    double pi_dot = 0.0;
};

CentralSequence central_sequence(const SampleDecomposition& dec,
                                 const RadialDensity& f, double pi_dot);

/// Fisher information blocks of Eq. (7); off-blocks (1,2) and (2,3) vanish.
struct FisherBlocks {
    Eigen::MatrixXd g11; // location, d x d
    Eigen::MatrixXd g13; // location-skewness, d x d
    Eigen::MatrixXd g22; // scatter, d(d+1)/2 square
    Eigen::MatrixXd g33; // skewness, d x d

    // Assembled (2d + d(d+1)/2) square matrix in block order (1, 2, 3).
    Eigen::MatrixXd assembled() const;
};

FisherBlocks fisher_blocks(const SpdMatrix& sigma, const RadialDensity& f,
                           double pi_dot);

} // namespace ellsym
