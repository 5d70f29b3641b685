#include "ellsym/ulan.hpp"

#include <cmath>

#include "ellsym/errors.hpp"

namespace ellsym {

double default_pi_dot() { return 1.0 / std::sqrt(2.0 * M_PI); }

SampleDecomposition decompose(const Eigen::MatrixXd& data,
                              const Eigen::VectorXd& theta,
                              const SpdMatrix& sigma) {
    const int n = static_cast<int>(data.rows());
    const int d = static_cast<int>(data.cols());
    if (theta.size() != d || sigma.dim() != d)
        throw ConfigError("decompose: dimension mismatch");

    const Eigen::MatrixXd w = sym_inv_sqrt(sigma).matrix();
    SampleDecomposition dec;
    dec.location = theta;
    dec.scatter = sigma.matrix();
    dec.distances.resize(n);
    dec.signs.resize(n, d);
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd y = w * (data.row(i).transpose() - theta);
        const double di = y.norm();
        if (di < 1e-14)
            throw DataError("decompose: observation coincides with theta");
        dec.distances(i) = di;
        dec.signs.row(i) = (y / di).transpose();
    }
    return dec;
}

CentralSequence central_sequence(const SampleDecomposition& dec,
                                 const RadialDensity& f, double pi_dot) {
    const int n = dec.n();
    const int d = dec.dim();
    if (f.dim() != d) throw ConfigError("central_sequence: dimension mismatch");

    const Eigen::MatrixXd w = sym_inv_sqrt(SpdMatrix(dec.scatter)).matrix();
    const ScoreBundle s = scores(f);
    const double root_n = std::sqrt(static_cast<double>(n));

    Eigen::VectorXd loc_sum = Eigen::VectorXd::Zero(d);
    Eigen::MatrixXd scat_sum = Eigen::MatrixXd::Zero(d, d);
    Eigen::VectorXd skew_sum = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < n; ++i) {
        const double di = dec.distances(i);
        const Eigen::VectorXd u = dec.signs.row(i).transpose();
        loc_sum += s.phi(di) * u;
        scat_sum += s.psi(di) * di * u * u.transpose() -
                    Eigen::MatrixXd::Identity(d, d);
        skew_sum += di * u;
    }

    CentralSequence cs;
    cs.pi_dot = pi_dot;
    cs.loc_block = w * loc_sum / root_n;
    // (Sigma^{x2})^{-1/2} vec(M) = vec(W M W), so apply W on both sides
    // before the vech projection.
    const Eigen::MatrixXd inner = w * scat_sum * w;
    Eigen::VectorXd vec_inner(d * d);
    for (int c = 0; c < d; ++c)
        vec_inner.segment(c * d, d) = inner.col(c);
    cs.scatter_block = 0.5 / root_n * duplication_P(d) * vec_inner;
    cs.skew_block = 2.0 * pi_dot / root_n * skew_sum;
    return cs;
}

Eigen::MatrixXd FisherBlocks::assembled() const {
    const int d = static_cast<int>(g11.rows());
    const int m = static_cast<int>(g22.rows());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * d + m, 2 * d + m);
    g.block(0, 0, d, d) = g11;
    g.block(d, d, m, m) = g22;
    g.block(d + m, d + m, d, d) = g33;
    g.block(0, d + m, d, d) = g13;
    g.block(d + m, 0, d, d) = g13.transpose();
    return g;
}

FisherBlocks fisher_blocks(const SpdMatrix& sigma, const RadialDensity& f,
                           double pi_dot) {
    const int d = sigma.dim();
    if (f.dim() != d) throw ConfigError("fisher_blocks: dimension mismatch");

    const Eigen::MatrixXd w = sym_inv_sqrt(sigma).matrix();
    const Eigen::MatrixXd sigma_inv = w * w;
    const double info_loc = fisher_location(f);
    const double info_scat = fisher_scatter(f);

    FisherBlocks b;
    b.g11 = info_loc / d * sigma_inv;
    b.g13 = 2.0 * pi_dot * w;
    b.g33 = 4.0 * pi_dot * pi_dot * Eigen::MatrixXd::Identity(d, d);

    const Eigen::MatrixXd p = duplication_P(d);
    Eigen::MatrixXd ww = Eigen::MatrixXd::Zero(d * d, d * d);
    // (Sigma^{x2})^{-1/2} = W kron W.
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            ww.block(i * d, j * d, d, d) = w(i, j) * w;
    const Eigen::MatrixXd core =
        info_scat / (d * (d + 2.0)) *
            (Eigen::MatrixXd::Identity(d * d, d * d) + commutation_K(d) +
             projection_J(d)) -
        projection_J(d);
    b.g22 = 0.25 * p * ww * core * ww * p.transpose();
    return b;
}

} // namespace ellsym
