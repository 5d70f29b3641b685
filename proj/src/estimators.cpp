#include "ellsym/estimators.hpp"

#include <cmath>

#include "ellsym/errors.hpp"

namespace ellsym {

LocationEstimator parse_location(const std::string& name) {
    if (name == "mean") return LocationEstimator::mean;
    if (name == "spatial-median") return LocationEstimator::spatial_median;
    if (name == "hr") return LocationEstimator::hr_median;
    throw ConfigError("unknown location estimator '" + name + "'");
}

ScatterEstimator parse_scatter(const std::string& name) {
    if (name == "tyler") return ScatterEstimator::tyler;
    if (name == "cov") return ScatterEstimator::sample_cov;
    throw ConfigError("unknown scatter estimator '" + name + "'");
}

std::string to_string(LocationEstimator e) {
    switch (e) {
        case LocationEstimator::mean: return "mean";
        case LocationEstimator::spatial_median: return "spatial-median";
        case LocationEstimator::hr_median: return "hr";
    }
    return "?";
}

std::string to_string(ScatterEstimator e) {
    return e == ScatterEstimator::tyler ? "tyler" : "cov";
}

namespace {

Eigen::MatrixXd normalize_det(const Eigen::MatrixXd& v) {
    const double det = v.determinant();
    if (!(det > 0.0))
        throw NumericalError("tyler_shape: iterate lost positive definiteness");
    return v / std::pow(det, 1.0 / v.rows());
}

} // namespace

SpdMatrix tyler_shape(const Eigen::MatrixXd& data, const Eigen::VectorXd& center) {
    const int n = static_cast<int>(data.rows());
    const int d = static_cast<int>(data.cols());
    if (center.size() != d) throw ConfigError("tyler_shape: center dimension mismatch");
    if (n <= d * (d - 1))
        throw DataError("tyler_shape: need n > d(d-1) observations");

    const Eigen::MatrixXd resid = data.rowwise() - center.transpose();
    for (int i = 0; i < n; ++i)
        if (resid.row(i).norm() < 1e-14)
            throw DataError("tyler_shape: observation coincides with the center");

    // Start at the (det-normalized) second-moment matrix about the center.
    Eigen::MatrixXd v = resid.transpose() * resid / n;
    v = 0.5 * (v + v.transpose());
    if (!(v.determinant() > 0.0)) v = Eigen::MatrixXd::Identity(d, d);
    v = normalize_det(v);

    for (int iter = 0; iter < 500; ++iter) {
        Eigen::LLT<Eigen::MatrixXd> llt(v);
        if (llt.info() != Eigen::Success)
            throw NumericalError("tyler_shape: iterate not positive definite");
        Eigen::MatrixXd next = Eigen::MatrixXd::Zero(d, d);
        for (int i = 0; i < n; ++i) {
            const Eigen::VectorXd x = resid.row(i).transpose();
            const double d2 = x.dot(llt.solve(x));
            if (!(d2 > 0.0))
                throw NumericalError("tyler_shape: zero Mahalanobis distance");
            next.noalias() += x * x.transpose() / d2;
        }
        next *= static_cast<double>(d) / n;
        next = normalize_det(0.5 * (next + next.transpose()));
        const double delta = (next - v).norm();
        v = next;
        if (delta < 1e-10) return SpdMatrix(v);
    }
    throw NumericalError("tyler_shape: fixed-point iteration did not converge");
}

SpdMatrix rescale_to_scatter(const SpdMatrix& shape, const Eigen::MatrixXd& data,
                             const Eigen::VectorXd& center) {
    const int n = static_cast<int>(data.rows());
    const int d = shape.dim();
    Eigen::LLT<Eigen::MatrixXd> llt(shape.matrix());
    double mean_d2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd x = data.row(i).transpose() - center;
        mean_d2 += x.dot(llt.solve(x));
    }
    mean_d2 /= n;
    if (!(mean_d2 > 0.0))
        throw DataError("rescale_to_scatter: all observations at the center");
    return SpdMatrix(shape.matrix() * (mean_d2 / d));
}

Eigen::VectorXd spatial_median(const Eigen::MatrixXd& data) {
    const int n = static_cast<int>(data.rows());
    const int d = static_cast<int>(data.cols());
    if (n < 2) throw DataError("spatial_median: need at least two observations");

    Eigen::VectorXd theta = data.colwise().mean().transpose();
    const double scale = 1.0 + data.rowwise().norm().mean();

    for (int iter = 0; iter < 1000; ++iter) {
        // Weiszfeld step with the Vardi-Zhang modification when the iterate
        // sits on a data point.
        Eigen::VectorXd num = Eigen::VectorXd::Zero(d);
        double denom = 0.0;
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(d);
        bool on_point = false;
        for (int i = 0; i < n; ++i) {
            const Eigen::VectorXd diff = data.row(i).transpose() - theta;
            const double r = diff.norm();
            if (r < 1e-12 * scale) {
                on_point = true;
                continue;
            }
            num += data.row(i).transpose() / r;
            denom += 1.0 / r;
            grad -= diff / r;
        }
        if (denom == 0.0) return theta; // all points coincide with theta
        if (on_point) {
            // Subgradient condition: optimal iff ||sum of unit vectors|| <= 1.
            if (grad.norm() <= 1.0) return theta;
            const Eigen::VectorXd dir = -grad / grad.norm();
            theta += (grad.norm() - 1.0) / denom * dir;
            continue;
        }
        if (grad.norm() < 1e-9 * n) return theta;
        const Eigen::VectorXd next = num / denom;
        const double step = (next - theta).norm();
        theta = next;
        if (step < 1e-13 * scale) return theta;
    }
    throw NumericalError("spatial_median: Weiszfeld iteration did not converge");
}

std::pair<Eigen::VectorXd, SpdMatrix> hr_median(const Eigen::MatrixXd& data) {
    const int n = static_cast<int>(data.rows());
    const int d = static_cast<int>(data.cols());
    if (n <= d * (d - 1))
        throw DataError("hr_median: need n > d(d-1) observations");

    Eigen::VectorXd theta = spatial_median(data);
    const double scale = 1.0 + theta.norm();
    for (int outer = 0; outer < 100; ++outer) {
        const SpdMatrix v = tyler_shape(data, theta);
        const Eigen::MatrixXd w = sym_inv_sqrt(v).matrix();
        const Eigen::MatrixXd z =
            (data.rowwise() - theta.transpose()) * w.transpose();
        const Eigen::VectorXd m = spatial_median(z);
        const Eigen::VectorXd next = theta + sym_sqrt(v).matrix() * m;
        const double step = (next - theta).norm();
        theta = next;
        if (step < 1e-8 * scale)
            return {theta, tyler_shape(data, theta)};
    }
    throw NumericalError("hr_median: outer iteration did not converge");
}

Eigen::VectorXd sample_mean(const Eigen::MatrixXd& data) {
    if (data.rows() < 1) throw DataError("sample_mean: empty data");
    return data.colwise().mean().transpose();
}

SpdMatrix sample_cov(const Eigen::MatrixXd& data) {
    const int n = static_cast<int>(data.rows());
    const int d = static_cast<int>(data.cols());
    if (n < d + 1) throw DataError("sample_cov: need n >= d+1 observations");
    const Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
    const Eigen::MatrixXd c = centered.transpose() * centered / n;
    return SpdMatrix(0.5 * (c + c.transpose()));
}

SpdMatrix estimate_scatter_at(const Eigen::MatrixXd& data,
                              const Eigen::VectorXd& center,
                              ScatterEstimator scatter) {
    if (scatter == ScatterEstimator::tyler)
        return rescale_to_scatter(tyler_shape(data, center), data, center);
    const int n = static_cast<int>(data.rows());
    const Eigen::MatrixXd centered = data.rowwise() - center.transpose();
    const Eigen::MatrixXd c = centered.transpose() * centered / n;
    return SpdMatrix(0.5 * (c + c.transpose()));
}

std::pair<Eigen::VectorXd, SpdMatrix> estimate(const Eigen::MatrixXd& data,
                                               const EstimatorChoice& choice) {
    Eigen::VectorXd theta;
    switch (choice.location) {
        case LocationEstimator::mean: theta = sample_mean(data); break;
        case LocationEstimator::spatial_median: theta = spatial_median(data); break;
        case LocationEstimator::hr_median: theta = hr_median(data).first; break;
    }
    return {theta, estimate_scatter_at(data, theta, choice.scatter)};
}

} // namespace ellsym
