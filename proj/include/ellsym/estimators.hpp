#pragma once

#include <string>
#include <utility>

#include <Eigen/Dense>

#include "ellsym/matops.hpp"

namespace ellsym {

enum class LocationEstimator { mean, spatial_median, hr_median };
enum class ScatterEstimator { tyler, sample_cov };

struct EstimatorChoice {
    LocationEstimator location = LocationEstimator::mean;
    ScatterEstimator scatter = ScatterEstimator::tyler;
};

LocationEstimator parse_location(const std::string& name);
ScatterEstimator parse_scatter(const std::string& name);
std::string to_string(LocationEstimator e);
std::string to_string(ScatterEstimator e);

// Tyler's shape estimator about a given center, normalized to det(V) = 1.
SpdMatrix tyler_shape(const Eigen::MatrixXd& data, const Eigen::VectorXd& center);

// Scale the shape so that the mean squared Mahalanobis distance equals d.
SpdMatrix rescale_to_scatter(const SpdMatrix& shape, const Eigen::MatrixXd& data,
                             const Eigen::VectorXd& center);

// Weiszfeld spatial median (minimizer of the sum of Euclidean distances).
Eigen::VectorXd spatial_median(const Eigen::MatrixXd& data);

// Affine-equivariant location: spatial median on Tyler-standardized
// residuals, alternated with shape re-estimation until the center settles.
std::pair<Eigen::VectorXd, SpdMatrix> hr_median(const Eigen::MatrixXd& data);

Eigen::VectorXd sample_mean(const Eigen::MatrixXd& data);
SpdMatrix sample_cov(const Eigen::MatrixXd& data); // 1/n normalization

// Location per `choice`, then the matching scatter about it (Tyler rescaled
// or sample covariance).
std::pair<Eigen::VectorXd, SpdMatrix> estimate(const Eigen::MatrixXd& data,
                                               const EstimatorChoice& choice);

// Scatter about a fixed, user-specified center.
SpdMatrix estimate_scatter_at(const Eigen::MatrixXd& data,
                              const Eigen::VectorXd& center,
                              ScatterEstimator scatter);

} // namespace ellsym
